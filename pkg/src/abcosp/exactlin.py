"""Exact dense linear algebra over GF(p) and the rationals.

Every operation in the layers above reduces to the functions in this module.
Entries are exact: residues in ``[0, p)`` for a prime ``p``, or ``Fraction``
values in lowest terms for characteristic zero. Floating point is never used
because rank decisions must be exact.

All canonical forms are derived from the reduced row echelon form, so two
equal subspaces always produce bit-identical basis matrices. Matrices are
immutable value objects and all operations are pure functions, safe for
concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]


class FieldMismatch(ValueError):
    """Operands live over different fields."""


class ShapeError(ValueError):
    """Operand shapes are incompatible."""


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; these witness bases are exact far beyond 2^31.
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """A prime field GF(p), or the rationals when ``characteristic`` is 0."""

    characteristic: int

    def __post_init__(self) -> None:
        c = self.characteristic
        if c == 0:
            return
        if not (2 <= c < 2 ** 31 and _is_prime(c)):
            raise ValueError(
                f"characteristic must be 0 or a prime below 2^31, got {c}"
            )

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def coerce(self, value) -> Scalar:
        """Normalize ``value`` into this field.

        Rationals become ``Fraction`` in lowest terms with positive
        denominator; GF(p) values become residues in ``[0, p)``. Raises
        ``ValueError`` for entries that do not embed (for example a proper
        fraction handed to a finite field).
        """
        if self.characteristic == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(
                    f"{value} has no image in GF({self.characteristic})"
                )
            value = value.numerator
        if not isinstance(value, int):
            raise ValueError(f"bad scalar {value!r} for GF({self.characteristic})")
        return value % self.characteristic


QQ = Field(0)
GF2 = Field(2)
GF3 = Field(3)


@dataclass(frozen=True)
class Matrix:
    """An immutable ``rows x cols`` matrix with exact entries.

    ``entries`` is a tuple of row tuples. Construct through ``from_rows``,
    ``zeros`` or ``identity`` so entries are normalized; direct construction
    assumes already normalized entries.
    """

    field: Field
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape ({self.rows}, {self.cols})")
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ShapeError("entry grid does not match declared shape")

    @classmethod
    def from_rows(
        cls, field: Field, rows: Sequence[Sequence], cols: Optional[int] = None
    ) -> "Matrix":
        data = [tuple(field.coerce(x) for x in row) for row in rows]
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ShapeError("ragged rows")
            if cols is not None and cols != width:
                raise ShapeError(f"declared cols {cols} but rows have {width}")
            cols = width
        elif cols is None:
            raise ShapeError("a 0-row matrix needs an explicit column count")
        return cls(field, len(data), cols, tuple(data))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(
            field, n, n,
            tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)),
        )

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field, self.cols, self.rows,
            tuple(zip(*self.entries)) if self.entries else tuple(
                () for _ in range(self.cols)
            ),
        )

    def is_zero(self) -> bool:
        z = self.field.zero()
        return all(x == z for row in self.entries for x in row)

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(row[j] for row in self.entries)

    def take_cols(self, idxs: Sequence[int]) -> "Matrix":
        return Matrix(
            self.field, self.rows, len(idxs),
            tuple(tuple(row[j] for j in idxs) for row in self.entries),
        )

    def take_rows(self, idxs: Sequence[int]) -> "Matrix":
        return Matrix(
            self.field, len(idxs), self.cols,
            tuple(self.entries[i] for i in idxs),
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_field(self, other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("addition needs equal shapes")
        p = self.field.characteristic
        if p == 0:
            data = tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        else:
            data = tuple(
                tuple((a + b) % p for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        return Matrix(self.field, self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        p = self.field.characteristic
        if p == 0:
            data = tuple(tuple(-a for a in row) for row in self.entries)
        else:
            data = tuple(tuple((-a) % p for a in row) for row in self.entries)
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _check_same_field(self, other)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        p = self.field.characteristic
        bt = list(zip(*other.entries)) if other.entries else [
            () for _ in range(other.cols)
        ]
        out = []
        zero = Fraction(0)
        for row in self.entries:
            if p == 0:
                # skipping zero terms avoids most Fraction arithmetic on the
                # sparse block matrices the chain layer produces
                out.append(tuple(
                    sum((a * b for a, b in zip(row, col) if a and b), zero)
                    for col in bt
                ))
            else:
                out.append(tuple(
                    sum(a * b for a, b in zip(row, col) if a and b) % p
                    for col in bt
                ))
        return Matrix(self.field, self.rows, other.cols, tuple(out))

    def scale(self, s) -> "Matrix":
        c = self.field.coerce(s)
        p = self.field.characteristic
        if p == 0:
            data = tuple(tuple(c * a for a in row) for row in self.entries)
        else:
            data = tuple(tuple((c * a) % p for a in row) for row in self.entries)
        return Matrix(self.field, self.rows, self.cols, data)


def _check_same_field(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def hstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ShapeError("hstack of nothing")
    first = ms[0]
    for m in ms[1:]:
        _check_same_field(first, m)
        if m.rows != first.rows:
            raise ShapeError("hstack needs equal row counts")
    cols = sum(m.cols for m in ms)
    data = tuple(
        tuple(x for m in ms for x in m.entries[i]) for i in range(first.rows)
    )
    return Matrix(first.field, first.rows, cols, data)


def vstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ShapeError("vstack of nothing")
    first = ms[0]
    for m in ms[1:]:
        _check_same_field(first, m)
        if m.cols != first.cols:
            raise ShapeError("vstack needs equal column counts")
    data = tuple(row for m in ms for row in m.entries)
    return Matrix(first.field, sum(m.rows for m in ms), first.cols, data)


@dataclass(frozen=True)
class Rref:
    """Reduced row echelon form together with pivot bookkeeping."""

    R: Matrix
    pivots: Tuple[int, ...]
    rank: int


def rref(M: Matrix) -> Rref:
    """The unique reduced row echelon form of ``M``.

    Pivot columns are strictly increasing, pivot entries are 1 and are the
    only nonzero entries in their columns.
    """
    p = M.field.characteristic
    m, n = M.rows, M.cols
    rows = [list(r) for r in M.entries]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        if p == 0:
            inv = Fraction(1) / rows[r][c]
            rowr = [x * inv for x in rows[r]]
        else:
            inv = pow(rows[r][c], p - 2, p)
            rowr = [x * inv % p for x in rows[r]]
        rows[r] = rowr
        for i in range(m):
            f = rows[i][c]
            if i == r or f == 0:
                continue
            if p == 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], rowr)]
            else:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rowr)]
        pivots.append(c)
        r += 1
    R = Matrix(M.field, m, n, tuple(tuple(row) for row in rows))
    return Rref(R, tuple(pivots), r)


def rank(M: Matrix) -> int:
    return rref(M).rank


def kernel_basis(M: Matrix) -> Matrix:
    """Canonical basis of ``ker M``, one column per free variable.

    Free variables are taken in increasing column order and each is set to 1,
    so the output is a unique function of the kernel subspace.
    """
    red = rref(M)
    piv = red.pivots
    pivset = set(piv)
    free = [j for j in range(M.cols) if j not in pivset]
    z, o = M.field.zero(), M.field.one()
    p = M.field.characteristic
    cols = []
    for f in free:
        vec = [z] * M.cols
        vec[f] = o
        for i, pc in enumerate(piv):
            val = red.R.entries[i][f]
            vec[pc] = -val if p == 0 else (-val) % p
        cols.append(vec)
    data = tuple(tuple(col[i] for col in cols) for i in range(M.cols))
    return Matrix(M.field, M.cols, len(free), data)


def image_basis(M: Matrix) -> Matrix:
    """Canonical basis of the column span of ``M``.

    Concretely the nonzero rows of ``rref(transpose(M))`` written back as
    columns. This is the canonical form used to compare subspaces: the output
    depends only on the span, not on the presenting matrix.
    """
    red = rref(M.transpose())
    r = red.rank
    data = tuple(
        tuple(red.R.entries[j][i] for j in range(r)) for i in range(M.rows)
    )
    return Matrix(M.field, M.rows, r, data)


def subspace_contains(B1: Matrix, B2: Matrix) -> bool:
    """Whether ``span(B2)`` is a subspace of ``span(B1)`` (columns spans)."""
    _check_same_field(B1, B2)
    if B1.rows != B2.rows:
        raise ShapeError("ambient dimensions differ")
    return rank(hstack(B1, B2)) == rank(B1)


def subspace_equal(B1: Matrix, B2: Matrix) -> bool:
    """Whether two column spans coincide, decided on canonical forms."""
    _check_same_field(B1, B2)
    if B1.rows != B2.rows:
        raise ShapeError("ambient dimensions differ")
    return image_basis(B1) == image_basis(B2)


def solve_left(V: Matrix, W: Matrix) -> Optional[Matrix]:
    """One solution ``G`` of ``G @ V == W``, or None.

    A solution exists exactly when ``ker V`` is contained in ``ker W``. The
    returned solution is canonical: free variables of the transposed system
    are set to zero.
    """
    _check_same_field(V, W)
    if V.cols != W.cols:
        raise ShapeError("solve_left needs matching column counts")
    aug = rref(hstack(V.transpose(), W.transpose()))
    b = V.rows
    if any(pc >= b for pc in aug.pivots):
        return None
    z = V.field.zero()
    gt = [[z] * W.rows for _ in range(b)]
    for i, pc in enumerate(aug.pivots):
        for j in range(W.rows):
            gt[pc][j] = aug.R.entries[i][b + j]
    data = tuple(tuple(gt[i][j] for i in range(b)) for j in range(W.rows))
    return Matrix(V.field, W.rows, b, data)


def solve_right(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """One solution ``X`` of ``A @ X == B``, or None.

    A solution exists exactly when every column of ``B`` lies in the column
    span of ``A``. Free variables are set to zero.
    """
    _check_same_field(A, B)
    if A.rows != B.rows:
        raise ShapeError("solve_right needs matching row counts")
    aug = rref(hstack(A, B))
    n = A.cols
    if any(pc >= n for pc in aug.pivots):
        return None
    z = A.field.zero()
    x = [[z] * B.cols for _ in range(n)]
    for i, pc in enumerate(aug.pivots):
        for j in range(B.cols):
            x[pc][j] = aug.R.entries[i][n + j]
    return Matrix(A.field, n, B.cols, tuple(tuple(row) for row in x))


def invert(M: Matrix) -> Matrix:
    """Inverse of a square invertible matrix; raises ShapeError otherwise."""
    if M.rows != M.cols:
        raise ShapeError("only square matrices can be inverted")
    red = rref(hstack(M, Matrix.identity(M.field, M.rows)))
    if any(pc >= M.rows for pc in red.pivots):
        raise ShapeError("matrix is singular")
    return red.R.take_cols(range(M.rows, 2 * M.rows))


def direct_sum(M: Matrix, N: Matrix) -> Matrix:
    """Block diagonal sum ``[[M, 0], [0, N]]``."""
    _check_same_field(M, N)
    z = M.field.zero()
    top = tuple(row + (z,) * N.cols for row in M.entries)
    bottom = tuple((z,) * M.cols + row for row in N.entries)
    return Matrix(M.field, M.rows + N.rows, M.cols + N.cols, top + bottom)


def scalar_to_token(field: Field, s: Scalar):
    """JSON-friendly form of one entry: int for GF(p) and integral rationals,
    the string ``"a/b"`` in lowest terms otherwise."""
    if field.characteristic != 0:
        return int(s)
    f = Fraction(s)
    if f.denominator == 1:
        return int(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def matrix_to_rows(M: Matrix) -> list:
    """Nested-list form of a matrix with JSON-friendly entries."""
    return [[scalar_to_token(M.field, x) for x in row] for row in M.entries]
