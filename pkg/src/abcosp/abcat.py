"""Finite-dimensional vector spaces over a fixed field, as an abelian category.

Objects are dimensions, morphisms are matrices in the column-vector
convention (``compose(g, f)`` multiplies ``g.mat @ f.mat``). Kernels and
cokernels return canonical representatives so equal inputs give bit-identical
outputs. The zero-dimensional object is the biproduct unit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import (
    Field,
    Matrix,
    direct_sum,
    hstack,
    image_basis,
    invert,
    kernel_basis,
    rank,
    solve_left,
    solve_right,
    subspace_equal,
    vstack,
)


class CompositionMismatch(ValueError):
    """Source and target objects do not line up."""


class NonCommutingSquare(ValueError):
    """A square diagram that was required to commute does not."""


@dataclass(frozen=True)
class VecObj:
    """A finite-dimensional vector space, identified by its dimension."""

    field: Field
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")


@dataclass(frozen=True)
class LinMap:
    """A linear map ``src -> dst`` carried by a ``dst.dim x src.dim`` matrix."""

    src: VecObj
    dst: VecObj
    mat: Matrix

    def __post_init__(self) -> None:
        if self.src.field != self.dst.field or self.mat.field != self.src.field:
            raise CompositionMismatch("field mismatch inside a linear map")
        if (self.mat.rows, self.mat.cols) != (self.dst.dim, self.src.dim):
            raise CompositionMismatch(
                f"matrix {self.mat.rows}x{self.mat.cols} does not fit "
                f"{self.src.dim} -> {self.dst.dim}"
            )


def identity(A: VecObj) -> LinMap:
    return LinMap(A, A, Matrix.identity(A.field, A.dim))


def zero_map(A: VecObj, B: VecObj) -> LinMap:
    return LinMap(A, B, Matrix.zeros(A.field, B.dim, A.dim))


def compose(g: LinMap, f: LinMap) -> LinMap:
    if f.dst != g.src:
        raise CompositionMismatch(
            f"cannot compose through {f.dst} vs {g.src}"
        )
    return LinMap(f.src, g.dst, g.mat @ f.mat)


def neg(f: LinMap) -> LinMap:
    return LinMap(f.src, f.dst, -f.mat)


def obj_sum(A: VecObj, B: VecObj) -> VecObj:
    if A.field != B.field:
        raise CompositionMismatch("biproduct needs one field")
    return VecObj(A.field, A.dim + B.dim)


def biproduct(f: LinMap, g: LinMap) -> LinMap:
    """Block diagonal sum ``f (+) g`` on both source and target."""
    return LinMap(obj_sum(f.src, g.src), obj_sum(f.dst, g.dst),
                  direct_sum(f.mat, g.mat))


def injection0(A: VecObj, B: VecObj) -> LinMap:
    """First biproduct injection ``A -> A (+) B``."""
    return LinMap(A, obj_sum(A, B), vstack(
        Matrix.identity(A.field, A.dim), Matrix.zeros(A.field, B.dim, A.dim)
    ))


def injection1(A: VecObj, B: VecObj) -> LinMap:
    """Second biproduct injection ``B -> A (+) B``."""
    return LinMap(B, obj_sum(A, B), vstack(
        Matrix.zeros(B.field, A.dim, B.dim), Matrix.identity(B.field, B.dim)
    ))


def projection0(A: VecObj, B: VecObj) -> LinMap:
    """First biproduct projection ``A (+) B -> A``."""
    return LinMap(obj_sum(A, B), A, hstack(
        Matrix.identity(A.field, A.dim), Matrix.zeros(A.field, A.dim, B.dim)
    ))


def projection1(A: VecObj, B: VecObj) -> LinMap:
    """Second biproduct projection ``A (+) B -> B``."""
    return LinMap(obj_sum(A, B), B, hstack(
        Matrix.zeros(B.field, B.dim, A.dim), Matrix.identity(B.field, B.dim)
    ))


def diagonal(A: VecObj) -> LinMap:
    """The diagonal ``A -> A (+) A``, two stacked identities."""
    i = Matrix.identity(A.field, A.dim)
    return LinMap(A, VecObj(A.field, 2 * A.dim), vstack(i, i))


def codiagonal(A: VecObj) -> LinMap:
    """The fold ``A (+) A -> A``, two concatenated identities."""
    i = Matrix.identity(A.field, A.dim)
    return LinMap(VecObj(A.field, 2 * A.dim), A, hstack(i, i))


def is_mono(f: LinMap) -> bool:
    return rank(f.mat) == f.src.dim


def is_epi(f: LinMap) -> bool:
    return rank(f.mat) == f.dst.dim


def kernel(f: LinMap) -> LinMap:
    """The kernel as a canonical monomorphism into ``f.src``."""
    K = kernel_basis(f.mat)
    return LinMap(VecObj(f.src.field, K.cols), f.src, K)


def cokernel(f: LinMap) -> LinMap:
    """The cokernel as a canonical epimorphism out of ``f.dst``.

    The image basis is completed to a full basis by unit vectors taken in
    increasing coordinate order; the returned matrix consists of the dual
    coordinates along those unit vectors. Equal images therefore give
    bit-identical cokernel matrices, and ``cokernel(f) . f == 0``.
    """
    n = f.dst.dim
    field = f.mat.field
    B = image_basis(f.mat)
    r = B.cols
    if r == n:
        P = B
    else:
        cols = [B.column(j) for j in range(r)]
        completed = []
        cur_rank = r
        for j in range(n):
            unit = tuple(
                field.one() if i == j else field.zero() for i in range(n)
            )
            cand = cols + completed + [unit]
            cm = Matrix(field, n, len(cand), tuple(
                tuple(c[i] for c in cand) for i in range(n)
            ))
            if rank(cm) > cur_rank:
                completed.append(unit)
                cur_rank += 1
                if cur_rank == n:
                    break
        allcols = cols + completed
        P = Matrix(field, n, n, tuple(
            tuple(c[i] for c in allcols) for i in range(n)
        ))
    Pinv = invert(P) if n else Matrix.zeros(field, 0, 0)
    Q = VecObj(field, n - r)
    return LinMap(f.dst, Q, Pinv.take_rows(range(r, n)))


@dataclass(frozen=True)
class SquareDiagram:
    """A square of maps ``f: A->B``, ``f_prime: A->C``, ``g: B->D``,
    ``g_prime: C->D``. Commutativity is not an invariant of the type; it is
    checked by the operations that need it."""

    f: LinMap
    f_prime: LinMap
    g: LinMap
    g_prime: LinMap

    def __post_init__(self) -> None:
        if self.f.src != self.f_prime.src:
            raise CompositionMismatch("square needs a shared source corner")
        if self.g.src != self.f.dst or self.g_prime.src != self.f_prime.dst:
            raise CompositionMismatch("square sides do not line up")
        if self.g.dst != self.g_prime.dst:
            raise CompositionMismatch("square needs a shared target corner")

    def commutes(self) -> bool:
        return compose(self.g, self.f).mat == compose(
            self.g_prime, self.f_prime
        ).mat


@dataclass(frozen=True)
class ThreeTermComplex:
    """Maps ``u: X->Y`` and ``v: Y->Z`` with ``v . u == 0``."""

    u: LinMap
    v: LinMap

    def __post_init__(self) -> None:
        if self.u.dst != self.v.src:
            raise CompositionMismatch("three-term complex does not line up")
        if not compose(self.v, self.u).mat.is_zero():
            raise ValueError("not a complex: v . u is nonzero")


def square_complex(sq: SquareDiagram) -> ThreeTermComplex:
    """The three-term complex of a commuting square.

    ``u = (f (+) -f') . diagonal`` and ``v = codiagonal . (g (+) g')``; the
    square must commute so that ``v . u = g.f - g'.f' = 0``.
    """
    if not sq.commutes():
        raise NonCommutingSquare("square_complex needs a commuting square")
    A = sq.f.src
    mid = obj_sum(sq.f.dst, sq.f_prime.dst)
    u = LinMap(A, mid, vstack(sq.f.mat, -sq.f_prime.mat))
    v = LinMap(mid, sq.g.dst, hstack(sq.g.mat, sq.g_prime.mat))
    return ThreeTermComplex(u, v)


def is_exact_at_middle(c: ThreeTermComplex) -> bool:
    """Whether ``ker v`` equals ``im u`` as subspaces of the middle object."""
    return subspace_equal(kernel_basis(c.v.mat), image_basis(c.u.mat))


def kernel_comparison(sq: SquareDiagram) -> LinMap:
    """The induced map ``ker(f') -> ker(g)`` of a commuting square."""
    kf = kernel(sq.f_prime)
    kg = kernel(sq.g)
    through = compose(sq.f, kf)
    X = solve_right(kg.mat, through.mat)
    if X is None:
        raise NonCommutingSquare("square does not commute on ker(f')")
    return LinMap(kf.src, kg.src, X)


def cokernel_comparison(sq: SquareDiagram) -> LinMap:
    """The induced map ``cok(f') -> cok(g)`` of a commuting square."""
    cf = cokernel(sq.f_prime)
    cg = cokernel(sq.g)
    through = compose(cg, sq.g_prime)
    G = solve_left(cf.mat, through.mat)
    if G is None:
        raise NonCommutingSquare("square does not commute on cok(f')")
    return LinMap(cf.dst, cg.dst, G)


def is_exact_square(sq: SquareDiagram) -> bool:
    """Exactness of a commuting square.

    Decided by middle exactness of ``square_complex`` and cross-checked
    against the direct criterion (kernel comparison epi and cokernel
    comparison mono); a disagreement would be an internal defect and raises.
    """
    middle = is_exact_at_middle(square_complex(sq))
    direct = is_epi(kernel_comparison(sq)) and is_mono(cokernel_comparison(sq))
    if middle != direct:
        raise AssertionError(
            "internal cross-check failed: the two exactness criteria disagree"
        )
    return middle
