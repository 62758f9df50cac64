"""Exact linear algebra over prime fields GF(p) and the rationals.

Scalars are plain Python objects: ``int`` in ``[0, p)`` for GF(p) and
``fractions.Fraction`` for Q.  Arithmetic is done with the usual operators
and then pushed through ``Field.reduce``, so nothing is ever rounded.

Subspaces are stored by their reduced row-echelon basis, which makes the
representation canonical: two equal subspaces compare equal field by field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import AmbientMismatch, SingularMatrix


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """GF(p) for prime ``p``, or Q when ``p == 0``."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and not _is_prime(p):
            raise ValueError(f"GF({p}): {p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def reduce(self, x):
        return x % self.p if self.p else x

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction or string like ``"3/4"``) into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            if isinstance(x, bool) or not isinstance(x, int):
                raise TypeError(f"cannot coerce {x!r} into GF({self.p})")
            return x % self.p
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {x!r} into Q")
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p) if self.p else 1 / Fraction(x)

    def elements(self):
        if not self.p:
            raise ValueError("Q is infinite")
        return range(self.p)

    def to_json(self, x):
        """Integers for GF(p); ``"a/b"`` strings (or plain ints) for Q."""
        if self.p:
            return int(x)
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "Q"


def GF(p: int) -> Field:
    return Field(p)


QQ = Field(0)


# ---------------------------------------------------------------------------
# row reduction on raw lists


def _rref(rows, F: Field, ncols: int):
    red = F.reduce
    A = [[red(v) for v in r] for r in rows]
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        if inv != 1:
            A[r] = [red(v * inv) for v in A[r]]
        prow = A[r]
        for i in range(m):
            if i != r:
                f = A[i][c]
                if f != 0:
                    A[i] = [red(a - f * b) for a, b in zip(A[i], prow)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in A], pivots


def _kernel(rows, F: Field, ncols: int):
    """Basis (list of tuples) of {x : rows . x = 0}."""
    R, pivots = _rref(rows, F, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.reduce(-R[i][free])
        basis.append(tuple(v))
    return basis


def _dot(F: Field, a, b):
    return F.reduce(sum(x * y for x, y in zip(a, b)))


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix over a :class:`Field`; acts on column vectors."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        self.field = field
        self.rows = rows
        self._hash = None

    @classmethod
    def _make(cls, field, rows):
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._make(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: Field, r: int, c: int | None = None) -> Matrix:
        c = r if c is None else c
        return cls._make(field, tuple((field.zero,) * c for _ in range(r)))

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> Matrix:
        """The matrix unit E_ij (zero-based)."""
        rows = [[field.zero] * n for _ in range(n)]
        rows[i][j] = field.one
        return cls._make(field, tuple(tuple(r) for r in rows))

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> Matrix:
        n = len(entries)
        rows = [[field.zero] * n for _ in range(n)]
        for i, e in enumerate(entries):
            rows[i][i] = field(e)
        return cls._make(field, tuple(tuple(r) for r in rows))

    @classmethod
    def from_flat(cls, field: Field, n: int, vec: Sequence) -> Matrix:
        return cls(field, (vec[i * n:(i + 1) * n] for i in range(n)))

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence]) -> Matrix:
        return cls(field, zip(*cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return list(zip(*self.rows))

    @property
    def T(self) -> Matrix:
        return Matrix._make(self.field, tuple(zip(*self.rows)))

    def _check(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("matrices over different fields")
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        red = self.field.reduce
        return Matrix._make(self.field, tuple(
            tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        red = self.field.reduce
        return Matrix._make(self.field, tuple(
            tuple(red(a - b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        red = self.field.reduce
        return Matrix._make(self.field, tuple(tuple(red(-a) for a in r) for r in self.rows))

    def scale(self, c) -> Matrix:
        c = self.field(c)
        red = self.field.reduce
        return Matrix._make(self.field, tuple(tuple(red(c * a) for a in r) for r in self.rows))

    def __matmul__(self, other):
        F = self.field
        red = F.reduce
        if isinstance(other, Matrix):
            if other.field != F:
                raise ValueError("matrices over different fields")
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows))
            return Matrix._make(F, tuple(
                tuple(red(sum(a * b for a, b in zip(r, c))) for c in cols) for r in self.rows))
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(red(sum(a * b for a, b in zip(r, vec))) for r in self.rows)

    def commutator(self, other: Matrix) -> Matrix:
        return self @ other - other @ self

    def trace(self):
        return self.field.reduce(sum(self.rows[i][i] for i in range(min(self.shape))))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(self.field, self.nrows)

    def rank(self) -> int:
        return len(_rref(self.rows, self.field, self.ncols)[1])

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        F = self.field
        A = [list(r) for r in self.rows]
        n = len(A)
        det = F.one
        for c in range(n):
            piv = next((i for i in range(c, n) if A[i][c] != 0), None)
            if piv is None:
                return F.zero
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                det = F.reduce(-det)
            det = F.reduce(det * A[c][c])
            inv = F.inv(A[c][c])
            for i in range(c + 1, n):
                f = F.reduce(A[i][c] * inv)
                if f != 0:
                    A[i] = [F.reduce(a - f * b) for a, b in zip(A[i], A[c])]
        return det

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> Matrix:
        n = self.nrows
        if n != self.ncols:
            raise SingularMatrix("non-square matrix has no inverse")
        F = self.field
        aug = [r + tuple(F.one if i == j else F.zero for j in range(n)) for i, r in enumerate(self.rows)]
        R, pivots = _rref(aug, F, n)
        if pivots != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix._make(F, tuple(r[n:] for r in R))

    def kernel(self) -> Subspace:
        """Null space {v : M v = 0}."""
        return Subspace._make(self.field, self.ncols, _canon(self.field, _kernel(self.rows, self.field, self.ncols), self.ncols))

    def image(self) -> Subspace:
        """Column space."""
        return Subspace.span(self.field, self.nrows, self.columns())

    def tolist(self) -> list[list]:
        return [[self.field.to_json(x) for x in r] for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.tolist()})"


def rref_rank(m: Matrix):
    """Reduced row-echelon form of ``m`` with its rank and pivot columns."""
    R, pivots = _rref(m.rows, m.field, m.ncols)
    return Matrix._make(m.field, tuple(R)), len(pivots), pivots


# ---------------------------------------------------------------------------
# subspaces


def _canon(F: Field, vectors, n: int) -> tuple:
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return ()
    R, pivots = _rref(vectors, F, n)
    return tuple(R[: len(pivots)])


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^n held as its reduced row-echelon basis."""

    field: Field
    ambient_dim: int
    basis: tuple

    @classmethod
    def _make(cls, field, n, basis):
        return cls(field, n, basis)

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable[Sequence]) -> Subspace:
        vecs = []
        for v in vectors:
            v = tuple(v)
            if len(v) != n:
                raise AmbientMismatch(f"vector of length {len(v)} in F^{n}")
            vecs.append(v)
        return cls(field, n, _canon(field, vecs, n))

    @classmethod
    def zero(cls, field: Field, n: int) -> Subspace:
        return cls(field, n, ())

    @classmethod
    def full(cls, field: Field, n: int) -> Subspace:
        return cls.coordinate(field, n, range(n))

    @classmethod
    def coordinate(cls, field: Field, n: int, coords: Iterable[int]) -> Subspace:
        """span{e_i : i in coords}."""
        coords = sorted(set(coords))
        return cls(field, n, tuple(
            tuple(field.one if j == i else field.zero for j in range(n)) for i in coords))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _same_ambient(self, other: Subspace):
        if not isinstance(other, Subspace):
            raise TypeError(f"expected Subspace, got {type(other).__name__}")
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise AmbientMismatch(
                f"{self.field!r}^{self.ambient_dim} vs {other.field!r}^{other.ambient_dim}")

    def __add__(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        return Subspace(self.field, self.ambient_dim,
                        _canon(self.field, self.basis + other.basis, self.ambient_dim))

    def annihilator(self) -> list[tuple]:
        """Row vectors c with c . w = 0 for every w in the subspace."""
        if not self.basis:
            return [tuple(self.field.one if j == i else self.field.zero for j in range(self.ambient_dim))
                    for i in range(self.ambient_dim)]
        return _kernel(self.basis, self.field, self.ambient_dim)

    def __and__(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        rows = self.annihilator() + other.annihilator()
        if not rows:
            return Subspace.full(self.field, self.ambient_dim)
        return Subspace(self.field, self.ambient_dim,
                        _canon(self.field, _kernel(rows, self.field, self.ambient_dim), self.ambient_dim))

    def contains(self, other: Subspace) -> bool:
        """True when ``other`` is a subspace of ``self``."""
        self._same_ambient(other)
        if other.dim > self.dim:
            return False
        ann = self.annihilator()
        return all(_dot(self.field, c, v) == 0 for c in ann for v in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)

    def __ge__(self, other: Subspace) -> bool:
        return self.contains(other)

    def contains_vector(self, v: Sequence) -> bool:
        v = tuple(v)
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length does not match ambient dimension")
        return all(_dot(self.field, c, v) == 0 for c in self.annihilator())

    def coordinate_complement(self) -> Subspace:
        """span of e_j over the non-pivot columns; a complement of ``self``."""
        piv = set(self.pivots())
        return Subspace.coordinate(self.field, self.ambient_dim, (j for j in range(self.ambient_dim) if j not in piv))

    def image_under(self, m: Matrix) -> Subspace:
        return Subspace.span(self.field, m.nrows, (m @ b for b in self.basis))

    def preimage_under(self, m: Matrix) -> Subspace:
        """{v : m v in self}."""
        rows = [tuple(_dot(self.field, c, col) for col in m.columns()) for c in self.annihilator()]
        if not rows:
            return Subspace.full(self.field, m.ncols)
        return Subspace(self.field, m.ncols, _canon(self.field, _kernel(rows, self.field, m.ncols), m.ncols))

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the echelon basis (``v`` must lie in the subspace)."""
        coeffs = tuple(v[p] for p in self.pivots())
        recon = [self.field.reduce(sum(c * b[j] for c, b in zip(coeffs, self.basis)))
                 for j in range(self.ambient_dim)]
        if tuple(recon) != tuple(v):
            raise ValueError("vector is not in the subspace")
        return coeffs

    def basis_matrix(self) -> Matrix:
        """Matrix whose columns are the basis vectors (n x dim)."""
        if not self.basis:
            raise ValueError("zero subspace has no basis matrix")
        return Matrix.from_columns(self.field, self.basis)

    def tolist(self) -> list[list]:
        return [[self.field.to_json(x) for x in row] for row in self.basis]

    def __repr__(self):
        return f"Subspace({self.field!r}^{self.ambient_dim}, dim={self.dim}, basis={self.tolist()})"


def subspace_combine(a: Subspace, b: Subspace, op: str):
    """``op`` is ``"sum"``, ``"intersect"`` or ``"contains"`` (is b inside a)."""
    if op == "sum":
        return a + b
    if op == "intersect":
        return a & b
    if op == "contains":
        return a.contains(b)
    raise ValueError(f"unknown subspace operation {op!r}")


def complement_in(inner: Subspace, outer: Subspace) -> Subspace:
    """A vector-space complement of ``inner`` inside ``outer`` (inner must lie in outer).

    Chosen canonically: the rows of ``outer``'s echelon basis whose pivots are
    not pivots of ``inner + (those rows already chosen)``, scanned in order.
    """
    if not outer.contains(inner):
        raise ValueError("inner subspace is not contained in outer")
    F, n = inner.field, inner.ambient_dim
    acc = inner
    chosen = []
    for row in outer.basis:
        if not acc.contains_vector(row):
            chosen.append(row)
            acc = acc + Subspace.span(F, n, [row])
    return Subspace.span(F, n, chosen)


# ---------------------------------------------------------------------------
# linear systems


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``witness + directions`` of a linear system."""

    witness: tuple
    directions: Subspace

    @property
    def dim(self) -> int:
        return self.directions.dim


def linear_map_matrix(field: Field, f: Callable[[tuple], Sequence], n_in: int) -> Matrix:
    """Matrix of the linear map ``f`` : F^n_in -> F^n_out from its values on unit vectors."""
    cols = []
    for k in range(n_in):
        e = tuple(field.one if j == k else field.zero for j in range(n_in))
        cols.append(tuple(f(e)))
    return Matrix.from_columns(field, cols)


def affine_solve(field: Field, rows: Sequence[Sequence], rhs: Sequence | None = None, *,
                 n_unknowns: int | None = None, offset: Sequence | None = None,
                 basis: Sequence[Sequence] | None = None) -> AffineSolution | None:
    """Solve ``rows . x = rhs`` exactly, optionally over the affine set ``offset + span(basis)``.

    Returns ``None`` when the system has no solution.
    """
    F = field
    rows = [tuple(r) for r in rows]
    if n_unknowns is None:
        if rows:
            n_unknowns = len(rows[0])
        elif offset is not None:
            n_unknowns = len(offset)
        elif basis:
            n_unknowns = len(basis[0])
        else:
            raise ValueError("cannot infer the number of unknowns")
    n = n_unknowns
    rhs = [F.zero] * len(rows) if rhs is None else [F.reduce(F(x)) for x in rhs]
    if len(rhs) != len(rows):
        raise ValueError("rhs length does not match number of constraints")
    off = tuple(F.zero for _ in range(n)) if offset is None else tuple(offset)
    if basis is None:
        B = [tuple(F.one if j == k else F.zero for j in range(n)) for k in range(n)]
    else:
        B = [tuple(b) for b in basis]
    m = len(B)
    # substitute x = off + sum y_k B_k
    sub_rows = [tuple(_dot(F, r, b) for b in B) for r in rows]
    sub_rhs = [F.reduce(c - _dot(F, r, off)) for r, c in zip(rows, rhs)]
    if m == 0:
        if any(c != 0 for c in sub_rhs):
            return None
        return AffineSolution(off, Subspace.zero(F, n))
    if sub_rows:
        aug = [r + (c,) for r, c in zip(sub_rows, sub_rhs)]
        R, pivots = _rref(aug, F, m + 1)
        if m in pivots:
            return None
        y = [F.zero] * m
        for i, pc in enumerate(pivots):
            y[pc] = R[i][m]
        kern = _kernel(sub_rows, F, m)
    else:
        y = [F.zero] * m
        kern = [tuple(F.one if j == k else F.zero for j in range(m)) for k in range(m)]
    witness = tuple(F.reduce(o + sum(yk * b[j] for yk, b in zip(y, B))) for j, o in enumerate(off))
    dirs = [tuple(F.reduce(sum(c * b[j] for c, b in zip(kv, B))) for j in range(n)) for kv in kern]
    return AffineSolution(witness, Subspace.span(F, n, dirs))
