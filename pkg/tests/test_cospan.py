"""The cospan and span calculus: preorder, equivalence, canonical classes,
composition, dagger, tensor, bounds, and transposition.

Reference values for the worked pairs were derived by hand before coding:
kernels of 1x2 and 2x4 joints are small enough to eliminate by inspection. The
brute-force GF(2) oracles in ``generators`` give the independent second
route for the decision procedures; the exhaustive slices here are small so
the suite stays fast, and the full ranges run in the acceptance tests.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abcosp.abcat import LinMap, VecObj, compose, identity, is_mono, zero_map
from abcosp.cospan import (
    BoundWitness,
    CanonicalClass,
    Cospan,
    FootMismatch,
    Span,
    canonical_cosp,
    canonical_span,
    compose_cosp,
    compose_span,
    dagger_cosp,
    dagger_span,
    equiv_cosp,
    equiv_span,
    iota_cosp,
    iota_span,
    joint_map,
    leq_cosp,
    leq_span,
    lower_bound,
    minimal_rep,
    tensor_cosp,
    tensor_span,
    transpose_cosp,
    transpose_span,
    upper_bound,
)
from abcosp.exactlin import (
    GF2,
    GF3,
    QQ,
    Matrix,
    image_basis,
    matrix_to_rows,
    rank,
    subspace_equal,
)
from abcosp.generators import (
    brute_force_leq_gf2,
    brute_force_upper_bound_gf2,
    enum_cospans_gf2,
    rand_cospan,
    rand_cospan_chain,
    rand_leq_pair,
    rand_span,
)

FIELDS = (GF2, GF3, QQ)


def lm(field, src, dst, rows):
    return LinMap(
        VecObj(field, src), VecObj(field, dst),
        Matrix.from_rows(field, rows, src),
    )


def cosp(field, rows0, rows1, a0=None, a1=None, b=None):
    b = len(rows0) if b is None else b
    a0 = (len(rows0[0]) if rows0 else 0) if a0 is None else a0
    a1 = (len(rows1[0]) if rows1 else 0) if a1 is None else a1
    return Cospan(lm(field, a0, b, rows0), lm(field, a1, b, rows1))


# the running pair from the worked examples: equivalent, second has fat bulk
def pair_gf2():
    lam = cosp(GF2, [[1]], [[1]])
    lamp = Cospan(lm(GF2, 1, 2, [[1], [0]]), lm(GF2, 1, 2, [[1], [0]]))
    return lam, lamp


def seeded(n=0):
    return random.Random(911 + n)


class TestConstructors:
    def test_iota(self):
        f = lm(QQ, 1, 1, [[1]])
        c = iota_cosp(f)
        assert c.f0 == f and c.f1 == identity(f.dst)
        z = iota_cosp(lm(QQ, 1, 1, [[0]]))
        assert z.f0.mat.is_zero() and z.f1 == identity(f.dst)

    def test_iota_of_diagonal_lands_in_plane(self):
        d = lm(GF2, 1, 2, [[1], [1]])
        assert iota_cosp(d).bulk.dim == 2

    def test_feet_must_share_bulk(self):
        with pytest.raises(FootMismatch):
            Cospan(lm(QQ, 1, 1, [[1]]), lm(QQ, 1, 2, [[1], [0]]))
        with pytest.raises(FootMismatch):
            Span(lm(QQ, 1, 1, [[1]]), lm(QQ, 2, 1, [[1, 0]]))


class TestDagger:
    def test_swap(self):
        c = cosp(GF2, [[0]], [[1]])
        d = dagger_cosp(c)
        assert d.f0 == c.f1 and d.f1 == c.f0

    def test_involution(self):
        c = cosp(GF3, [[1], [2]], [[0], [1]])
        assert dagger_cosp(dagger_cosp(c)) == c
        s = rand_span(seeded(), QQ, 2, 1, 2)
        assert dagger_span(dagger_span(s)) == s

    def test_iota_of_identity_selfadjoint(self):
        c = iota_cosp(identity(VecObj(QQ, 2)))
        assert equiv_cosp(dagger_cosp(c), c)


class TestTensor:
    def test_unit(self):
        c = cosp(QQ, [[1]], [[2]])
        unit = Cospan(
            zero_map(VecObj(QQ, 0), VecObj(QQ, 0)),
            zero_map(VecObj(QQ, 0), VecObj(QQ, 0)),
        )
        assert equiv_cosp(tensor_cosp(c, unit), c)
        assert equiv_cosp(tensor_cosp(unit, c), c)

    def test_iota_block_identity(self):
        f = lm(GF3, 1, 2, [[1], [2]])
        g = lm(GF3, 2, 1, [[0, 1]])
        from abcosp.abcat import biproduct

        assert tensor_cosp(iota_cosp(f), iota_cosp(g)) == iota_cosp(biproduct(f, g))

    def test_kernel_is_shuffled_block_sum(self):
        rng = seeded(1)
        for field in FIELDS:
            c = rand_cospan(rng, field, 2, 1, 2)
            d = rand_cospan(rng, field, 1, 2, 2)
            t = tensor_cosp(c, d)
            kc, kd = canonical_cosp(c).K, canonical_cosp(d).K
            # interleave ambient coordinates of K(c) + K(d) into tensor order
            a0, a1, b0 = c.foot0.dim, c.foot1.dim, d.foot0.dim
            rows = []
            for i in range(a0):
                rows.append([*kc.entries[i], *(field.zero(),) * kd.cols])
            for i in range(b0):
                rows.append([*(field.zero(),) * kc.cols, *kd.entries[i]])
            for i in range(a1):
                rows.append([*kc.entries[a0 + i], *(field.zero(),) * kd.cols])
            for i in range(kd.rows - b0):
                rows.append([*(field.zero(),) * kc.cols, *kd.entries[b0 + i]])
            shuffled = Matrix.from_rows(field, rows, kc.cols + kd.cols)
            assert subspace_equal(canonical_cosp(t).K, shuffled)


class TestCompose:
    def test_identity_absorbs(self):
        one = VecObj(GF2, 1)
        c = compose_cosp(iota_cosp(identity(one)), iota_cosp(identity(one)))
        assert equiv_cosp(c, iota_cosp(identity(one)))
        assert c.bulk.dim == 1

    def test_worked_pair_kernel(self):
        # (k ->1 k <-0 k) then (k ->1 k <-1 k): joint kernel is the second axis
        first = cosp(GF2, [[1]], [[0]])
        second = cosp(GF2, [[1]], [[1]])
        comp = compose_cosp(first, second)
        assert matrix_to_rows(canonical_cosp(comp).K) == [[0], [1]]
        # same computation over the rationals
        comp_q = compose_cosp(cosp(QQ, [[1]], [[0]]), cosp(QQ, [[1]], [[1]]))
        assert matrix_to_rows(canonical_cosp(comp_q).K) == [[0], [1]]

    def test_zero_foot_gives_full_bulk(self):
        c = Cospan(lm(QQ, 1, 2, [[1], [0]]), zero_map(VecObj(QQ, 0), VecObj(QQ, 2)))
        d = Cospan(zero_map(VecObj(QQ, 0), VecObj(QQ, 3)), lm(QQ, 1, 3, [[1], [0], [0]]))
        assert compose_cosp(c, d).bulk.dim == 5

    def test_shared_foot_required(self):
        from abcosp.abcat import CompositionMismatch

        with pytest.raises(CompositionMismatch):
            compose_cosp(cosp(QQ, [[1]], [[1]]), Cospan(
                lm(QQ, 2, 1, [[1, 0]]), lm(QQ, 1, 1, [[1]])
            ))


class TestLeq:
    def test_worked_witness(self):
        lam, lamp = pair_gf2()
        g = leq_cosp(lam, lamp)
        assert g is not None and is_mono(g)
        assert compose(g, lam.f0) == lamp.f0
        assert compose(g, lam.f1) == lamp.f1
        assert matrix_to_rows(g.mat) == [[1], [0]]

    def test_contradictory_legs(self):
        assert leq_cosp(cosp(GF2, [[1]], [[1]]), cosp(GF2, [[1]], [[0]])) is None

    def test_reflexive(self):
        rng = seeded(2)
        for field in FIELDS:
            for _ in range(10):
                c = rand_cospan(rng, field, 2, 2, 3)
                g = leq_cosp(c, c)
                assert g is not None

    def test_transitive_via_witnesses(self):
        rng = seeded(3)
        for field in FIELDS:
            for _ in range(10):
                a, b = rand_leq_pair(rng, field, 2, 2)
                b2, c = rand_leq_pair(rng, field, 2, 2)
                # stitch: replace b2 by b to get a <= b <= c only when feet align
                if (b.foot0, b.foot1, b.bulk) != (b2.foot0, b2.foot1, b2.bulk):
                    continue
                if leq_cosp(b, c) is None:
                    continue
                if leq_cosp(a, b) is not None and leq_cosp(b, c) is not None:
                    assert leq_cosp(a, c) is not None or not equiv_cosp(b, b2)

    def test_leq_implies_equiv(self):
        rng = seeded(4)
        for field in FIELDS:
            for _ in range(15):
                a, b = rand_leq_pair(rng, field, 2, 3)
                assert leq_cosp(a, b) is not None
                assert equiv_cosp(a, b)

    def test_oracle_slice_gf2(self):
        pool = list(enum_cospans_gf2(GF2, 1, 1, 1))
        for c in pool:
            for d in pool:
                assert (leq_cosp(c, d) is not None) == brute_force_leq_gf2(c, d)

    def test_feet_checked(self):
        with pytest.raises(FootMismatch):
            leq_cosp(cosp(GF2, [[1]], [[1]]), Cospan(
                lm(GF2, 2, 1, [[1, 0]]), lm(GF2, 1, 1, [[1]])
            ))


class TestEquiv:
    def test_worked_pair(self):
        lam, lamp = pair_gf2()
        assert equiv_cosp(lam, lamp)
        assert matrix_to_rows(canonical_cosp(lam).K) == [[1], [1]]

    def test_bulk_beyond_joint_image_forgotten(self):
        zero = VecObj(QQ, 0)
        flat = Cospan(zero_map(zero, zero), zero_map(zero, zero))
        fat = Cospan(zero_map(zero, VecObj(QQ, 1)), zero_map(zero, VecObj(QQ, 1)))
        assert equiv_cosp(flat, fat)

    def test_oracle_slice_gf2(self):
        pool = list(enum_cospans_gf2(GF2, 1, 1, 1))
        for c in pool:
            for d in pool:
                assert equiv_cosp(c, d) == brute_force_upper_bound_gf2(c, d)


class TestCanonical:
    def test_iota_identity_kernel(self):
        assert matrix_to_rows(canonical_cosp(iota_cosp(identity(VecObj(QQ, 1)))).K) == [
            [1],
            [-1],
        ]
        assert matrix_to_rows(canonical_cosp(iota_cosp(identity(VecObj(GF2, 1)))).K) == [
            [1],
            [1],
        ]

    def test_zero_then_identity_legs(self):
        c = cosp(GF3, [[0]], [[1]])
        assert matrix_to_rows(canonical_cosp(c).K) == [[1], [0]]

    def test_zero_feet(self):
        zero = VecObj(QQ, 0)
        c = Cospan(zero_map(zero, VecObj(QQ, 2)), zero_map(zero, VecObj(QQ, 2)))
        cls = canonical_cosp(c)
        assert cls.K.rows == 0 and cls.K.cols == 0

    def test_class_carries_feet(self):
        c = cosp(GF2, [[1], [0]], [[0], [1]])
        cls = canonical_cosp(c)
        assert (cls.A0.dim, cls.A1.dim) == (1, 1)

    def test_minimal_rep(self):
        rng = seeded(5)
        for field in FIELDS:
            for _ in range(10):
                c = rand_cospan(rng, field, 2, 2, 4)
                m = minimal_rep(c)
                assert leq_cosp(m, c) is not None
                assert equiv_cosp(m, c)
                assert m.bulk.dim == rank(joint_map(c).mat)


class TestBounds:
    def test_self_bound(self):
        c = cosp(GF2, [[1]], [[1]])
        w = upper_bound(c, c)
        assert isinstance(w, BoundWitness)
        assert is_mono(w.w_left) and is_mono(w.w_right)

    def test_no_bound_when_kernels_differ(self):
        assert upper_bound(cosp(GF2, [[1]], [[1]]), cosp(GF2, [[1]], [[0]])) is None
        assert lower_bound(cosp(GF2, [[1]], [[1]]), cosp(GF2, [[1]], [[0]])) is None

    def test_lower_bound_is_minimal_rep_sized(self):
        lam, lamp = pair_gf2()
        w = lower_bound(lam, lamp)
        assert w is not None
        assert w.bound.bulk.dim == 1
        assert equiv_cosp(w.bound, minimal_rep(lam))

    def test_bounds_coincide_and_commute(self):
        rng = seeded(6)
        for field in FIELDS:
            for _ in range(25):
                c = rand_cospan(rng, field, 2, 1, 2)
                d = rand_cospan(rng, field, 2, 1, 2)
                ub, lb = upper_bound(c, d), lower_bound(c, d)
                assert (ub is None) == (lb is None)
                assert (ub is not None) == equiv_cosp(c, d)
                if ub is not None:
                    # upper-bound witnesses commute with the legs
                    assert compose(ub.w_left, c.f0) == ub.bound.f0
                    assert compose(ub.w_right, d.f0) == ub.bound.f0
                    assert compose(ub.w_left, c.f1) == ub.bound.f1
                    assert compose(ub.w_right, d.f1) == ub.bound.f1
                if lb is not None:
                    assert leq_cosp(lb.bound, c) is not None
                    assert leq_cosp(lb.bound, d) is not None


def _negate_second_block(cls: CanonicalClass) -> Matrix:
    a0 = cls.A0.dim
    rows = [
        [(-x if i >= a0 else x) for x in row] if cls.K.field.characteristic == 0
        else [((-x) % cls.K.field.characteristic if i >= a0 else x) for x in row]
        for i, row in enumerate(cls.K.entries)
    ]
    return image_basis(Matrix.from_rows(cls.K.field, rows, cls.K.cols))


class TestTransposition:
    def test_iota_identity_legs(self):
        t = transpose_cosp(iota_cosp(identity(VecObj(QQ, 1))))
        assert matrix_to_rows(t.g0.mat) == [[1]]
        assert matrix_to_rows(t.g1.mat) == [[1]]

    def test_zero_legs_cospan(self):
        zero2 = Cospan(
            zero_map(VecObj(QQ, 1), VecObj(QQ, 1)),
            zero_map(VecObj(QQ, 1), VecObj(QQ, 1)),
        )
        t = transpose_cosp(zero2)
        assert t.bulk.dim == 2
        assert matrix_to_rows(t.g0.mat) == [[1, 0]]
        assert matrix_to_rows(t.g1.mat) == [[0, -1]]

    def test_double_transpose_on_worked_pair(self):
        lam, lamp = pair_gf2()
        assert equiv_cosp(transpose_span(transpose_cosp(lamp)), lamp)
        assert canonical_cosp(transpose_span(transpose_cosp(lam))) == canonical_cosp(
            lam
        )

    def test_round_trips_random(self):
        rng = seeded(7)
        for field in FIELDS:
            for _ in range(15):
                c = rand_cospan(rng, field, 2, 2, 3)
                assert equiv_cosp(transpose_span(transpose_cosp(c)), c)
                s = rand_span(rng, field, 2, 2, 3)
                assert equiv_span(transpose_cosp(transpose_span(s)), s)

    def test_canonical_classes_coincide_sign_adjusted(self):
        rng = seeded(8)
        for field in FIELDS:
            for _ in range(15):
                c = rand_cospan(rng, field, 2, 2, 3)
                lhs = _negate_second_block(canonical_span(transpose_cosp(c)))
                assert lhs == canonical_cosp(c).K

    def test_transpose_respects_compose_and_dagger(self):
        rng = seeded(9)
        for field in FIELDS:
            for _ in range(10):
                c1, c2 = rand_cospan_chain(rng, field, 2, 2, 3)
                assert canonical_span(
                    transpose_cosp(compose_cosp(c1, c2))
                ) == canonical_span(
                    compose_span(transpose_cosp(c1), transpose_cosp(c2))
                )
                assert canonical_span(
                    transpose_cosp(dagger_cosp(c1))
                ) == canonical_span(dagger_span(transpose_cosp(c1)))


class TestSpans:
    def test_identity_unit_law(self):
        one = VecObj(GF3, 1)
        s = iota_span(identity(one))
        assert equiv_span(compose_span(s, s), s)

    def test_canonical_span_is_image(self):
        s = Span(lm(QQ, 1, 1, [[1]]), lm(QQ, 1, 1, [[2]]))
        assert matrix_to_rows(canonical_span(s).K) == [[1], [2]]

    def test_leq_span_matches_transposed_leq(self):
        rng = seeded(10)
        for field in FIELDS:
            for _ in range(10):
                c, cp = rand_leq_pair(rng, field, 2, 2)
                assert leq_span(transpose_cosp(c), transpose_cosp(cp)) is not None


@given(st.integers(0, 2), st.integers(0, 2), st.sampled_from(FIELDS), st.integers())
@settings(max_examples=40)
def test_category_laws_property(a0, a1, field, seed):
    rng = random.Random(seed)
    c1, c2, c3 = rand_cospan_chain(rng, field, 3, 2, 3)
    assert canonical_cosp(
        compose_cosp(compose_cosp(c1, c2), c3)
    ) == canonical_cosp(compose_cosp(c1, compose_cosp(c2, c3)))
    u = iota_cosp(identity(c1.foot0))
    assert equiv_cosp(compose_cosp(u, c1), c1)
    assert canonical_cosp(dagger_cosp(compose_cosp(c1, c2))) == canonical_cosp(
        compose_cosp(dagger_cosp(c2), dagger_cosp(c1))
    )


@given(st.sampled_from(FIELDS), st.integers())
@settings(max_examples=40)
def test_iota_functorial_property(field, seed):
    rng = random.Random(seed)
    from abcosp.generators import rand_linmap

    f = rand_linmap(rng, field, 2, 2)
    g = rand_linmap(rng, field, 2, 2)
    assert equiv_cosp(
        compose_cosp(iota_cosp(f), iota_cosp(g)), iota_cosp(compose(g, f))
    )
