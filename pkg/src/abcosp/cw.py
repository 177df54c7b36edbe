"""Finite pointed simplicial complexes, chain complexes and homology.

Complexes are stored by dimension as lexicographically sorted tuples of
vertex tuples; vertex 0 is always the basepoint. Chain complexes are
augmented (degree -1 holds one copy of the field), so the homology computed
here is reduced homology and a point has none at all.

The geometric constructions that matter downstream are modeled at chain
level. Gluing two cospans of spaces along their shared foot becomes the
mapping cone of a difference of induced chain maps, and suspension becomes a
degree shift with negated differentials. Both models compute the homology of
the honest topological constructions, which is all that later stages consume.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple

from .abcat import LinMap, ThreeTermComplex, VecObj, is_exact_at_middle
from .cospan import FootMismatch
from .exactlin import (
    Field,
    Matrix,
    direct_sum,
    hstack,
    image_basis,
    kernel_basis,
    rank,
    solve_right,
    vstack,
)


class BadVertexIndex(ValueError):
    """A simplex mentions a vertex outside the declared range."""


class NotATriad(ValueError):
    """The given complexes do not form a subcomplex triad."""


class InvalidMap(ValueError):
    """A vertex assignment that is not simplicial or not pointed."""


Simplex = Tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite pointed simplicial complex.

    ``n_vertices`` bounds the vertex indices; sharing one ambient numbering
    lets several subcomplexes of one complex coexist, so the actual vertices
    are the 0-simplices, not the full range. ``by_dim[q]`` lists the
    q-simplices in lexicographic order, each a strictly increasing vertex
    tuple. The basepoint is vertex 0 and is always present.
    """

    n_vertices: int
    by_dim: Tuple[Tuple[Simplex, ...], ...]

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise BadVertexIndex("a pointed complex needs at least vertex 0")
        if not self.by_dim or (0,) not in self.by_dim[0]:
            raise BadVertexIndex("basepoint vertex 0 is missing")

    @property
    def dim(self) -> int:
        return len(self.by_dim) - 1

    def simplices(self, q: int) -> Tuple[Simplex, ...]:
        if 0 <= q < len(self.by_dim):
            return self.by_dim[q]
        return ()

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(s[0] for s in self.by_dim[0])


@lru_cache(maxsize=None)
def simplex_set(K: SimplicialComplex) -> frozenset:
    """All simplices of ``K`` as one set, dimensions mixed."""
    return frozenset(s for level in K.by_dim for s in level)


@lru_cache(maxsize=None)
def _index_of(K: SimplicialComplex, q: int) -> Dict[Simplex, int]:
    return {s: i for i, s in enumerate(K.simplices(q))}


def _complex_from_set(
    n_vertices: int, simplices: Iterable[Simplex]
) -> SimplicialComplex:
    # Input must already be face closed, with sorted vertex tuples.
    pool = set(simplices)
    pool.add((0,))
    top = max(len(s) for s in pool)
    by_dim = tuple(
        tuple(sorted(s for s in pool if len(s) == q + 1)) for q in range(top)
    )
    return SimplicialComplex(n_vertices, by_dim)


def closure_and_validate(
    n_vertices: int, maximal: Iterable[Iterable[int]]
) -> SimplicialComplex:
    """Build a complex as the face closure of the given simplices.

    Vertex indices must lie in ``[0, n_vertices)``. The basepoint 0-simplex
    is always added, repeated vertices within a simplex are collapsed, and
    simplices are sorted lexicographically per dimension so every matrix
    derived later is deterministic.
    """
    if n_vertices < 1:
        raise BadVertexIndex("need at least one vertex for the basepoint")
    closed = {(0,)}
    for raw in maximal:
        vs = sorted(set(raw))
        if not vs:
            continue
        if vs[0] < 0 or vs[-1] >= n_vertices:
            raise BadVertexIndex(
                f"simplex {tuple(raw)} exceeds vertex range [0, {n_vertices})"
            )
        for k in range(1, len(vs) + 1):
            closed.update(itertools.combinations(vs, k))
    return _complex_from_set(n_vertices, closed)


def point_complex(n_vertices: int = 1) -> SimplicialComplex:
    return closure_and_validate(n_vertices, [(0,)])


@dataclass(frozen=True)
class SimplicialMap:
    """A pointed simplicial map given by a total vertex assignment.

    ``vertex_map[v]`` is the image of vertex ``v``. The basepoint goes to
    the basepoint and every simplex image is a simplex of the target.
    """

    src: SimplicialComplex
    dst: SimplicialComplex
    vertex_map: Tuple[int, ...]

    def __post_init__(self) -> None:
        vm = self.vertex_map
        if len(vm) != self.src.n_vertices:
            raise InvalidMap("vertex_map length must equal src.n_vertices")
        if vm[0] != 0:
            raise InvalidMap("basepoint must map to basepoint")
        targets = simplex_set(self.dst)
        for level in self.src.by_dim:
            for s in level:
                image = tuple(sorted(set(vm[v] for v in s)))
                if image not in targets:
                    raise InvalidMap(
                        f"image {image} of simplex {s} is not in the target"
                    )


def make_simplicial_map(
    src: SimplicialComplex, dst: SimplicialComplex, vertex_map: Sequence[int]
) -> SimplicialMap:
    """Validate a vertex assignment; slots at unused indices become 0."""
    vm = list(vertex_map)
    if len(vm) != src.n_vertices:
        raise InvalidMap("vertex_map length must equal src.n_vertices")
    used = set(src.vertices)
    vm = [vm[v] if v in used else 0 for v in range(src.n_vertices)]
    return SimplicialMap(src, dst, tuple(vm))


def identity_simplicial_map(K: SimplicialComplex) -> SimplicialMap:
    return make_simplicial_map(K, K, tuple(range(K.n_vertices)))


def constant_map(src: SimplicialComplex, dst: SimplicialComplex) -> SimplicialMap:
    """The pointed map collapsing everything to the basepoint."""
    return make_simplicial_map(src, dst, (0,) * src.n_vertices)


def compose_simplicial(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    if f.dst != g.src:
        raise InvalidMap("simplicial maps do not compose")
    return make_simplicial_map(
        f.src, g.dst, tuple(g.vertex_map[w] for w in f.vertex_map)
    )


def inclusion_map(sub: SimplicialComplex, sup: SimplicialComplex) -> SimplicialMap:
    """The inclusion of a subcomplex under one shared vertex numbering."""
    if sub.n_vertices != sup.n_vertices:
        raise InvalidMap("inclusion needs one shared vertex numbering")
    if not simplex_set(sub) <= simplex_set(sup):
        raise InvalidMap("not a subcomplex")
    return make_simplicial_map(sub, sup, tuple(range(sub.n_vertices)))


@dataclass(frozen=True)
class ChainComplex:
    """Finitely supported chain complex with exact matrix differentials.

    ``dims`` holds the degrees with nonzero spaces, ``diffs`` the nonzero
    differentials; anything absent is zero, so equal complexes have equal
    representations. Degree -1 is the augmentation slot.
    """

    field: Field
    dims: Tuple[Tuple[int, int], ...]
    diffs: Tuple[Tuple[int, Matrix], ...]

    def dim(self, q: int) -> int:
        for deg, d in self.dims:
            if deg == q:
                return d
        return 0

    def obj(self, q: int) -> VecObj:
        return VecObj(self.field, self.dim(q))

    def diff_mat(self, q: int) -> Matrix:
        for deg, m in self.diffs:
            if deg == q:
                return m
        return Matrix.zeros(self.field, self.dim(q - 1), self.dim(q))

    def diff(self, q: int) -> LinMap:
        return LinMap(self.obj(q), self.obj(q - 1), self.diff_mat(q))

    def degrees(self) -> Tuple[int, ...]:
        return tuple(deg for deg, _ in self.dims)


def make_chain_complex(
    field: Field, dims: Dict[int, int], diffs: Dict[int, Matrix]
) -> ChainComplex:
    """Validate shapes and the boundary identity, then freeze the complex."""
    kept = {q: d for q, d in dims.items() if d > 0}
    kept_diffs = {}
    for q, m in diffs.items():
        expect = (kept.get(q - 1, 0), kept.get(q, 0))
        if (m.rows, m.cols) != expect:
            raise ValueError(
                f"differential at degree {q} has shape {(m.rows, m.cols)}, "
                f"expected {expect}"
            )
        if m.field != field:
            raise ValueError("differential over the wrong field")
        if m.rows and m.cols and not m.is_zero():
            kept_diffs[q] = m
    for q, m in kept_diffs.items():
        below = kept_diffs.get(q - 1)
        if below is not None and not (below @ m).is_zero():
            raise ValueError(f"boundary identity fails at degree {q}")
    return ChainComplex(
        field,
        tuple(sorted(kept.items())),
        tuple(sorted(kept_diffs.items())),
    )


@dataclass(frozen=True)
class ChainMap:
    """A degreewise linear map of chain complexes commuting with d."""

    src: ChainComplex
    dst: ChainComplex
    comps: Tuple[Tuple[int, Matrix], ...]

    def comp_mat(self, q: int) -> Matrix:
        for deg, m in self.comps:
            if deg == q:
                return m
        return Matrix.zeros(self.src.field, self.dst.dim(q), self.src.dim(q))

    def comp(self, q: int) -> LinMap:
        return LinMap(self.src.obj(q), self.dst.obj(q), self.comp_mat(q))


def make_chain_map(
    src: ChainComplex, dst: ChainComplex, comps: Dict[int, Matrix]
) -> ChainMap:
    """Validate shapes and the commuting condition, then freeze the map."""
    if src.field != dst.field:
        raise ValueError("chain map over mismatched fields")
    kept = {}
    for q, m in comps.items():
        expect = (dst.dim(q), src.dim(q))
        if (m.rows, m.cols) != expect:
            raise ValueError(
                f"component at degree {q} has shape {(m.rows, m.cols)}, "
                f"expected {expect}"
            )
        if m.rows and m.cols and not m.is_zero():
            kept[q] = m
    cm = ChainMap(src, dst, tuple(sorted(kept.items())))
    for q in sorted(set(src.degrees()) | set(dst.degrees())):
        left = dst.diff_mat(q) @ cm.comp_mat(q)
        right = cm.comp_mat(q - 1) @ src.diff_mat(q)
        if left != right:
            raise ValueError(f"chain map fails to commute at degree {q}")
    return cm


def chain_identity(C: ChainComplex) -> ChainMap:
    return make_chain_map(
        C, C, {q: Matrix.identity(C.field, d) for q, d in C.dims}
    )


def chain_compose(g: ChainMap, f: ChainMap) -> ChainMap:
    if f.dst != g.src:
        raise ValueError("chain maps do not compose")
    degs = set(q for q, _ in f.comps) | set(q for q, _ in g.comps)
    return make_chain_map(
        f.src, g.dst, {q: g.comp_mat(q) @ f.comp_mat(q) for q in degs}
    )


def chain_neg(f: ChainMap) -> ChainMap:
    return make_chain_map(f.src, f.dst, {q: -m for q, m in f.comps})


@dataclass(frozen=True)
class DirectSumChain:
    """A direct sum of two chain complexes with injections and projections."""

    complex: ChainComplex
    i0: ChainMap
    i1: ChainMap
    p0: ChainMap
    p1: ChainMap


def chain_direct_sum(C: ChainComplex, D: ChainComplex) -> DirectSumChain:
    if C.field != D.field:
        raise ValueError("direct sum over mismatched fields")
    field = C.field
    degs = sorted(set(C.degrees()) | set(D.degrees()))
    dims = {q: C.dim(q) + D.dim(q) for q in degs}
    diffs = {
        q: direct_sum(C.diff_mat(q), D.diff_mat(q))
        for q in degs
        if dims.get(q, 0) and dims.get(q - 1, 0)
    }
    S = make_chain_complex(field, dims, diffs)
    i0 = make_chain_map(
        C,
        S,
        {
            q: vstack(
                Matrix.identity(field, C.dim(q)),
                Matrix.zeros(field, D.dim(q), C.dim(q)),
            )
            for q in degs
            if C.dim(q)
        },
    )
    i1 = make_chain_map(
        D,
        S,
        {
            q: vstack(
                Matrix.zeros(field, C.dim(q), D.dim(q)),
                Matrix.identity(field, D.dim(q)),
            )
            for q in degs
            if D.dim(q)
        },
    )
    p0 = make_chain_map(
        S,
        C,
        {
            q: hstack(
                Matrix.identity(field, C.dim(q)),
                Matrix.zeros(field, C.dim(q), D.dim(q)),
            )
            for q in degs
            if C.dim(q)
        },
    )
    p1 = make_chain_map(
        S,
        D,
        {
            q: hstack(
                Matrix.zeros(field, D.dim(q), C.dim(q)),
                Matrix.identity(field, D.dim(q)),
            )
            for q in degs
            if D.dim(q)
        },
    )
    return DirectSumChain(S, i0, i1, p0, p1)


def stack_chain_maps(f: ChainMap, g: ChainMap, dsum: DirectSumChain) -> ChainMap:
    """The map (f, g) into the direct sum of the targets; shared source."""
    if f.src != g.src:
        raise ValueError("stacked chain maps need one source")
    degs = set(q for q, _ in f.comps) | set(q for q, _ in g.comps)
    return make_chain_map(
        f.src,
        dsum.complex,
        {q: vstack(f.comp_mat(q), g.comp_mat(q)) for q in degs},
    )


def concat_chain_maps(f: ChainMap, g: ChainMap, dsum: DirectSumChain) -> ChainMap:
    """The map [f | g] out of the direct sum of the sources; shared target."""
    if f.dst != g.dst:
        raise ValueError("concatenated chain maps need one target")
    degs = set(q for q, _ in f.comps) | set(q for q, _ in g.comps)
    return make_chain_map(
        dsum.complex,
        f.dst,
        {q: hstack(f.comp_mat(q), g.comp_mat(q)) for q in degs},
    )


@lru_cache(maxsize=None)
def augmented_chain(K: SimplicialComplex, field: Field) -> ChainComplex:
    """The augmented simplicial chain complex of ``K`` over ``field``.

    Degree q has one basis vector per q-simplex in the stored order. Degree
    -1 is one copy of the field; the degree-0 differential is the
    augmentation, so homology of this complex is reduced homology. Boundary
    faces are signed alternately over the increasing vertex order.
    """
    dims = {-1: 1}
    diffs: Dict[int, Matrix] = {}
    for q in range(K.dim + 1):
        dims[q] = len(K.simplices(q))
    if dims[0]:
        diffs[0] = Matrix.from_rows(field, [[1] * dims[0]])
    for q in range(1, K.dim + 1):
        below = _index_of(K, q - 1)
        rows = [[0] * dims[q] for _ in range(dims[q - 1])]
        for j, s in enumerate(K.simplices(q)):
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                rows[below[face]][j] = -1 if i % 2 else 1
        diffs[q] = Matrix.from_rows(field, rows, dims[q])
    return make_chain_complex(field, dims, diffs)


def _permutation_sign(seq: Sequence[int]) -> int:
    inversions = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def chain_map_of(f: SimplicialMap, field: Field) -> ChainMap:
    """The chain map induced by a simplicial map.

    A simplex goes to its image simplex with the sign of the vertex
    permutation, or to 0 when the image is degenerate. Degree -1 carries the
    identity of the augmentation slot.
    """
    src = augmented_chain(f.src, field)
    dst = augmented_chain(f.dst, field)
    comps: Dict[int, Matrix] = {-1: Matrix.identity(field, 1)}
    vm = f.vertex_map
    for q in range(f.src.dim + 1):
        rows = [[0] * src.dim(q) for _ in range(dst.dim(q))]
        target = _index_of(f.dst, q)
        for j, s in enumerate(f.src.simplices(q)):
            images = [vm[v] for v in s]
            if len(set(images)) < len(images):
                continue
            t = tuple(sorted(images))
            rows[target[t]][j] = _permutation_sign(images)
        comps[q] = Matrix.from_rows(field, rows, src.dim(q))
    return make_chain_map(src, dst, comps)


@dataclass(frozen=True)
class Wedge:
    """A wedge sum with the two canonical inclusions.

    The first summand keeps its vertex numbers; vertex v > 0 of the second
    becomes ``first.n_vertices + v - 1``, and both basepoints become 0.
    """

    complex: SimplicialComplex
    incl0: SimplicialMap
    incl1: SimplicialMap


def _wedge_renumber(n_first: int, v: int) -> int:
    return 0 if v == 0 else n_first + v - 1


def wedge(K: SimplicialComplex, Kp: SimplicialComplex) -> Wedge:
    """Disjoint union with the basepoints identified."""
    n = K.n_vertices + Kp.n_vertices - 1
    simplices = set(simplex_set(K))
    for s in simplex_set(Kp):
        simplices.add(tuple(sorted(_wedge_renumber(K.n_vertices, v) for v in s)))
    W = _complex_from_set(n, simplices)
    incl0 = make_simplicial_map(
        K, W, tuple(range(K.n_vertices))
    )
    incl1 = make_simplicial_map(
        Kp,
        W,
        tuple(_wedge_renumber(K.n_vertices, v) for v in range(Kp.n_vertices)),
    )
    return Wedge(W, incl0, incl1)


def wedge_map(
    wsrc: Wedge, wdst: Wedge, f: SimplicialMap, g: SimplicialMap
) -> SimplicialMap:
    """The wedge of two pointed maps, one per summand."""
    if f.src != wsrc.incl0.src or g.src != wsrc.incl1.src:
        raise InvalidMap("map sources do not match the wedge summands")
    if f.dst != wdst.incl0.src or g.dst != wdst.incl1.src:
        raise InvalidMap("map targets do not match the wedge summands")
    n0 = f.src.n_vertices
    m0 = f.dst.n_vertices
    vm = []
    for v in range(wsrc.complex.n_vertices):
        if v < n0:
            vm.append(f.vertex_map[v])
        else:
            vm.append(_wedge_renumber(m0, g.vertex_map[v - n0 + 1]))
    return make_simplicial_map(wsrc.complex, wdst.complex, tuple(vm))


def suspension_shift(C: ChainComplex) -> ChainComplex:
    """Raise every degree by one and negate the differentials.

    Applied to the augmented chain complex of K this computes the reduced
    homology of the suspension: the old augmentation slot becomes degree 0
    and is killed by the shifted augmentation, and homology moves up one
    degree. The sign keeps cone projections strict chain maps.
    """
    return make_chain_complex(
        C.field,
        {q + 1: d for q, d in C.dims},
        {q + 1: -m for q, m in C.diffs},
    )


def suspension_shift_map(f: ChainMap) -> ChainMap:
    """The same components one degree higher, between shifted complexes."""
    return make_chain_map(
        suspension_shift(f.src),
        suspension_shift(f.dst),
        {q + 1: m for q, m in f.comps},
    )


def conjugate_sign(C: ChainComplex) -> ChainMap:
    """Negation of the identity; the chain shadow of reversing the
    suspension coordinate. An involution, and invisible over GF(2)."""
    return make_chain_map(
        C, C, {q: -Matrix.identity(C.field, d) for q, d in C.dims}
    )


def _cone_block(phi: ChainMap, q: int) -> Matrix:
    dst, src = phi.dst, phi.src
    field = src.field
    top = hstack(dst.diff_mat(q), phi.comp_mat(q - 1))
    bottom = hstack(
        Matrix.zeros(field, src.dim(q - 2), dst.dim(q)),
        -src.diff_mat(q - 1),
    )
    return vstack(top, bottom)


def mapping_cone(phi: ChainMap) -> Tuple[ChainComplex, ChainMap, ChainMap]:
    """The cone of a chain map, with its two structural maps.

    Degree q of the cone is dst_q plus src_{q-1}; the differential is the
    usual upper-triangular block matrix with -d on the shifted block. Returns
    the cone, the inclusion of dst, and the projection to the shifted source.
    """
    src, dst = phi.src, phi.dst
    field = src.field
    degs = sorted(set(dst.degrees()) | set(q + 1 for q in src.degrees()))
    dims = {q: dst.dim(q) + src.dim(q - 1) for q in degs}
    diffs = {q: _cone_block(phi, q) for q in degs}
    cone = make_chain_complex(field, dims, diffs)
    incl = make_chain_map(
        dst,
        cone,
        {
            q: vstack(
                Matrix.identity(field, dst.dim(q)),
                Matrix.zeros(field, src.dim(q - 1), dst.dim(q)),
            )
            for q in degs
            if dst.dim(q)
        },
    )
    proj = make_chain_map(
        cone,
        suspension_shift(src),
        {
            q: hstack(
                Matrix.zeros(field, src.dim(q - 1), dst.dim(q)),
                Matrix.identity(field, src.dim(q - 1)),
            )
            for q in degs
            if src.dim(q - 1)
        },
    )
    return cone, incl, proj


@dataclass(frozen=True)
class SpaceCospan:
    """Two pointed simplicial maps into one shared target complex."""

    f0: SimplicialMap
    f1: SimplicialMap

    def __post_init__(self) -> None:
        if self.f0.dst != self.f1.dst:
            raise FootMismatch("space cospan legs must share their target")

    @property
    def k0(self) -> SimplicialComplex:
        return self.f0.src

    @property
    def k1(self) -> SimplicialComplex:
        return self.f1.src

    @property
    def middle(self) -> SimplicialComplex:
        return self.f0.dst


def iota_space(f: SimplicialMap) -> SpaceCospan:
    return SpaceCospan(f, identity_simplicial_map(f.dst))


def dagger_space(c: SpaceCospan) -> SpaceCospan:
    return SpaceCospan(c.f1, c.f0)


def wedge_space_cospans(
    c: SpaceCospan, d: SpaceCospan
) -> Tuple[SpaceCospan, Wedge, Wedge, Wedge]:
    """The wedge of two space cospans, legwise.

    Returns the wedge cospan together with the three wedges (left feet,
    right feet, middles) so callers can reach the block identifications.
    """
    w0 = wedge(c.k0, d.k0)
    w1 = wedge(c.k1, d.k1)
    wl = wedge(c.middle, d.middle)
    return (
        SpaceCospan(
            wedge_map(w0, wl, c.f0, d.f0), wedge_map(w1, wl, c.f1, d.f1)
        ),
        w0,
        w1,
        wl,
    )


@dataclass(frozen=True)
class ChainCospan:
    """Two chain maps into one shared bulk complex."""

    leg0: ChainMap
    leg1: ChainMap

    def __post_init__(self) -> None:
        if self.leg0.dst != self.leg1.dst:
            raise FootMismatch("chain cospan legs must share their target")

    @property
    def bulk(self) -> ChainComplex:
        return self.leg0.dst


@dataclass(frozen=True)
class ChainSpan:
    """Two chain maps out of one shared source complex."""

    p0: ChainMap
    p1: ChainMap

    def __post_init__(self) -> None:
        if self.p0.src != self.p1.src:
            raise FootMismatch("chain span legs must share their source")

    @property
    def mid(self) -> ChainComplex:
        return self.p0.src


@lru_cache(maxsize=None)
def chain_cospan_of(c: SpaceCospan, field: Field) -> ChainCospan:
    return ChainCospan(chain_map_of(c.f0, field), chain_map_of(c.f1, field))


@lru_cache(maxsize=None)
def compose_chain_cospans(c: ChainCospan, d: ChainCospan) -> ChainCospan:
    """Glue two chain cospans along their shared foot.

    The bulk is the cone of (right leg of c, minus left leg of d) out of the
    shared foot complex; it computes the homology of the double mapping
    cylinder. The outer legs land in the cone through the bulk inclusions.
    """
    if c.leg1.src != d.leg0.src:
        raise FootMismatch("chain cospans do not share their middle foot")
    dsum = chain_direct_sum(c.bulk, d.bulk)
    psi = stack_chain_maps(c.leg1, chain_neg(d.leg0), dsum)
    _, incl, _ = mapping_cone(psi)
    leg0 = chain_compose(incl, chain_compose(dsum.i0, c.leg0))
    leg1 = chain_compose(incl, chain_compose(dsum.i1, d.leg1))
    return ChainCospan(leg0, leg1)


def space_compose_chain_model(
    c: SpaceCospan, d: SpaceCospan, field: Field
) -> ChainCospan:
    """Chain model of the composite of two space cospans."""
    if c.f1.src != d.f0.src:
        raise FootMismatch("space cospans do not share their middle foot")
    return compose_chain_cospans(
        chain_cospan_of(c, field), chain_cospan_of(d, field)
    )


@lru_cache(maxsize=None)
def t_sigma_of_chain(c: ChainCospan) -> ChainSpan:
    """Turn a chain cospan around into a span between shifted feet.

    The middle is the cone of [leg0 | leg1] out of the foot sum; the span
    legs are the cone projection followed by the block projections, with the
    suspension-coordinate sign on the left leg.
    """
    dsum = chain_direct_sum(c.leg0.src, c.leg1.src)
    phi = concat_chain_maps(c.leg0, c.leg1, dsum)
    _, _, proj = mapping_cone(phi)
    pi0 = suspension_shift_map(dsum.p0)
    pi1 = suspension_shift_map(dsum.p1)
    p0 = chain_compose(conjugate_sign(pi0.dst), chain_compose(pi0, proj))
    p1 = chain_compose(pi1, proj)
    return ChainSpan(p0, p1)


def t_sigma_chain(c: SpaceCospan, field: Field) -> ChainSpan:
    return t_sigma_of_chain(chain_cospan_of(c, field))


@dataclass(frozen=True)
class HomologyData:
    """Homology of one degree with a fixed basis of cycle representatives.

    ``reps`` holds the representative cycles as columns; ``boundaries`` is
    the canonical basis of the boundary subspace; ``basis`` is their
    concatenation, against which cycles are resolved into classes.
    """

    space: VecObj
    reps: Matrix
    boundaries: Matrix
    basis: Matrix


@lru_cache(maxsize=None)
def homology(C: ChainComplex, q: int) -> HomologyData:
    """Kernel of d_q modulo image of d_{q+1}, with canonical representatives.

    Representatives are chosen greedily from the canonical kernel basis: a
    kernel column is kept whenever it is independent of the boundaries and
    the representatives already kept.
    """
    Z = kernel_basis(C.diff_mat(q))
    B = image_basis(C.diff_mat(q + 1))
    kept = []
    cur = B
    r = rank(cur)
    for j in range(Z.cols):
        cand = hstack(cur, Z.take_cols([j]))
        rc = rank(cand)
        if rc > r:
            kept.append(j)
            cur, r = cand, rc
    reps = Z.take_cols(kept)
    return HomologyData(VecObj(C.field, reps.cols), reps, B, hstack(B, reps))


def homology_class(hd: HomologyData, cycles: Matrix) -> Matrix:
    """Coordinates of cycle columns in the representative basis."""
    coords = solve_right(hd.basis, cycles)
    if coords is None:
        raise ValueError("column is not a cycle of this degree")
    return coords.take_rows(range(hd.boundaries.cols, hd.basis.cols))


@lru_cache(maxsize=None)
def induced_on_homology(f: ChainMap, q: int) -> LinMap:
    """The map a chain map induces between homology spaces at degree q."""
    hs = homology(f.src, q)
    hd = homology(f.dst, q)
    images = f.comp_mat(q) @ hs.reps
    return LinMap(hs.space, hd.space, homology_class(hd, images))


def homology_dims(C: ChainComplex) -> Dict[int, int]:
    """Dimensions of the nonzero homology spaces, by degree."""
    out = {}
    for q in C.degrees():
        h = homology(C, q).space.dim
        if h:
            out[q] = h
    return out


def mv_exactness_check(
    T: SimplicialComplex,
    K0: SimplicialComplex,
    K1: SimplicialComplex,
    L: SimplicialComplex,
    q: int,
    field: Field,
) -> bool:
    """Exactness of H_q(T) -> H_q(K0) + H_q(K1) -> H_q(L) at the middle.

    The complexes must form a triad: K0 and K1 are subcomplexes of L under
    one vertex numbering, their union is L and their intersection is T. The
    first map stacks the two inclusion-induced maps, the second subtracts
    one induced map from the other.
    """
    if not (T.n_vertices == K0.n_vertices == K1.n_vertices == L.n_vertices):
        raise NotATriad("triad parts must share one vertex numbering")
    s0, s1 = simplex_set(K0), simplex_set(K1)
    if s0 | s1 != simplex_set(L):
        raise NotATriad("K0 and K1 do not cover L")
    if s0 & s1 != simplex_set(T):
        raise NotATriad("K0 and K1 do not intersect in T")
    a = induced_on_homology(chain_map_of(inclusion_map(T, K0), field), q)
    b = induced_on_homology(chain_map_of(inclusion_map(T, K1), field), q)
    c = induced_on_homology(chain_map_of(inclusion_map(K0, L), field), q)
    d = induced_on_homology(chain_map_of(inclusion_map(K1, L), field), q)
    mid = VecObj(field, a.dst.dim + b.dst.dim)
    u = LinMap(a.src, mid, vstack(a.mat, b.mat))
    v = LinMap(mid, c.dst, hstack(c.mat, -d.mat))
    return is_exact_at_middle(ThreeTermComplex(u, v))


def dimension_filter(c: SpaceCospan, d) -> bool:
    """Whether feet dimensions stay below ``d`` and the middle stays at
    most ``d``. Infinity accepts everything."""
    if d == float("inf"):
        return True
    return c.k0.dim <= d - 1 and c.k1.dim <= d - 1 and c.middle.dim <= d


def simplicial_cone(K: SimplicialComplex) -> SimplicialComplex:
    """The cone over K with the apex as a fresh last vertex. Contractible;
    the basepoint stays the basepoint of K."""
    apex = K.n_vertices
    return closure_and_validate(
        K.n_vertices + 1, [s + (apex,) for s in simplex_set(K)]
    )


def subdivide_edge(K: SimplicialComplex, u: int, v: int) -> SimplicialComplex:
    """Stellar subdivision of the edge (u, v) with a fresh midpoint vertex.

    Every simplex containing both endpoints splits in two; the result is
    homeomorphic to K, so all homology is unchanged.
    """
    u, v = min(u, v), max(u, v)
    if (u, v) not in simplex_set(K):
        raise BadVertexIndex(f"({u}, {v}) is not an edge of the complex")
    w = K.n_vertices
    out = []
    for s in simplex_set(K):
        if u in s and v in s:
            left = tuple(sorted(set(s) - {u})) + (w,)
            right = tuple(sorted(set(s) - {v})) + (w,)
            out.extend([left, right])
        else:
            out.append(s)
    return closure_and_validate(K.n_vertices + 1, out)
