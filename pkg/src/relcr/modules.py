"""Module-theoretic computations for a generator tuple acting on V = F^n.

The base fields GF(p) and Q are perfect, so semisimplicity of V decided
here is semisimplicity over the algebraic closure too, and the largest
stable subspace inside U / smallest stable subspace containing W are cut
out by linear conditions that commute with extending scalars.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotStable, RadicalUndecided, UnsupportedHSpec
from .linalg import Field, Matrix, Subspace, _dot, _kernel, affine_solve
from .oracle import DEFAULT_BUDGET
from .structures import GeneratorTuple, HSpec


class _Span:
    """Incrementally grown span with cheap membership tests."""

    def __init__(self, field: Field):
        self.F = field
        self.rows = []
        self.pivots = []

    def _reduce(self, v):
        F = self.F
        v = list(v)
        for p, row in zip(self.pivots, self.rows):
            c = v[p]
            if c != 0:
                v = [F.reduce(a - c * b) for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        r = self._reduce(v)
        p = next((j for j, x in enumerate(r) if x != 0), None)
        if p is None:
            return False
        inv = self.F.inv(r[p])
        self.rows.append(tuple(self.F.reduce(x * inv) for x in r))
        self.pivots.append(p)
        return True

    def __contains__(self, v) -> bool:
        return all(x == 0 for x in self._reduce(v))

    def __len__(self):
        return len(self.rows)


def is_stable(t: GeneratorTuple, w: Subspace) -> bool:
    return all(w.contains_vector(x @ b) for x in t.entries for b in w.basis)


def spin(t: GeneratorTuple, seed: Subspace) -> Subspace:
    """Smallest t-stable subspace containing ``seed``.

    Generators are applied in declaration order to every newly found vector
    until nothing new appears.  For invertible generators stability under x
    already gives stability under x^-1.
    """
    if seed.ambient_dim != t.dim:
        raise ValueError("seed lives in the wrong ambient space")
    span = _Span(t.field)
    queue = [b for b in seed.basis if span.add(b)]
    found = list(queue)
    while queue:
        v = queue.pop(0)
        for x in t.entries:
            xv = x @ v
            if span.add(xv):
                queue.append(xv)
                found.append(xv)
    return Subspace.span(t.field, t.dim, found)


def iota(t: GeneratorTuple, w: Subspace) -> Subspace:
    """Smallest t-submodule containing ``w``."""
    return spin(t, w)


def sigma(t: GeneratorTuple, u: Subspace) -> Subspace:
    """Largest t-submodule contained in ``u``.

    Iterates W <- {v in W : x v in W for all generators x} to a fixed point.
    """
    if u.ambient_dim != t.dim:
        raise ValueError("subspace lives in the wrong ambient space")
    F, n = t.field, t.dim
    w = u
    while True:
        if w.is_zero():
            return w
        ann = w.annihilator()
        rows = list(ann)
        for x in t.entries:
            cols = x.columns()
            rows.extend(tuple(_dot(F, c, col) for col in cols) for c in ann)
        nxt = Subspace.span(F, n, _kernel(rows, F, n)) if rows else w
        if nxt.dim == w.dim:
            return w
        w = nxt


def restrict(t: GeneratorTuple, w: Subspace) -> GeneratorTuple | None:
    """Action of t on the stable subspace ``w`` in its echelon basis (None if w = 0)."""
    if w.is_zero():
        return None
    if not is_stable(t, w):
        raise NotStable("cannot restrict to a subspace that is not t-stable")
    mats = []
    for x in t.entries:
        cols = [w.coordinates(x @ b) for b in w.basis]
        mats.append(Matrix.from_columns(t.field, cols))
    return GeneratorTuple(t.field, w.dim, t.kind, tuple(mats))


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class AlgebraBasis:
    """A subalgebra of Mat_n held as a subspace of flattened matrices."""

    field: Field
    n: int
    product: str  # "assoc" or "lie"
    space: Subspace
    closed: bool

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> list[Matrix]:
        return [Matrix.from_flat(self.field, self.n, b) for b in self.space.basis]

    def contains(self, m: Matrix) -> bool:
        return self.space.contains_vector(m.flat())

    @property
    def contains_identity(self) -> bool:
        return self.contains(Matrix.identity(self.field, self.n))


def _check_closed(mats, space: Subspace, product: str) -> bool:
    for a in mats:
        for b in mats:
            c = a @ b if product == "assoc" else a.commutator(b)
            if not space.contains_vector(c.flat()):
                return False
    return True


def _closure(field: Field, n: int, seeds, gens, product: str) -> AlgebraBasis:
    span = _Span(field)
    queue = [m for m in seeds if span.add(m.flat())]
    found = list(queue)
    while queue:
        b = queue.pop(0)
        for x in gens:
            c = b @ x if product == "assoc" else x.commutator(b)
            if span.add(c.flat()):
                queue.append(c)
                found.append(c)
    space = Subspace.span(field, n * n, (m.flat() for m in found)) if found else Subspace.zero(field, n * n)
    mats = [Matrix.from_flat(field, n, v) for v in space.basis]
    return AlgebraBasis(field, n, product, space, _check_closed(mats, space, product))


def algebra_closure(t: GeneratorTuple) -> AlgebraBasis:
    """The algebra generated by the tuple.

    Group and associative tuples give the unital associative algebra they
    generate (the span of K for a group); Lie tuples give the Lie subalgebra
    generated under the commutator bracket.
    """
    if t.kind == "lie":
        return _closure(t.field, t.dim, t.entries, t.entries, "lie")
    return associative_envelope(t)


def associative_envelope(t: GeneratorTuple) -> AlgebraBasis:
    """Unital associative algebra generated by the entries, whatever the kind."""
    ident = Matrix.identity(t.field, t.dim)
    return _closure(t.field, t.dim, (ident,) + tuple(t.entries), t.entries, "assoc")


@dataclass(frozen=True)
class Radical:
    space: Subspace  # flattened matrices
    method: str  # "trace" or "lattice"

    def is_zero(self) -> bool:
        return self.space.is_zero()


def _trace_radical(a: AlgebraBasis) -> Subspace:
    F = a.field
    mats = a.matrices()
    gram = [[(x @ y).trace() for y in mats] for x in mats]
    kern = _kernel(gram, F, len(mats))
    return Subspace.span(F, a.n * a.n, (
        tuple(F.reduce(sum(c * m[j] for c, m in zip(k, (x.flat() for x in mats)))) for j in range(a.n * a.n))
        for k in kern))


def _lattice_radical(a: AlgebraBasis, budget: int) -> Subspace:
    from .oracle import composition_series

    F, n = a.field, a.n
    mats = a.matrices()
    series = composition_series(GeneratorTuple(F, n, "assoc", tuple(mats)), budget)
    # sum c_k a_k maps every V_i into V_{i-1}
    rows = []
    for lower, upper in zip(series, series[1:]):
        ann = lower.annihilator()
        for v in upper.basis:
            images = [m @ v for m in mats]
            for c in ann:
                rows.append(tuple(_dot(F, c, im) for im in images))
    kern = _kernel(rows, F, len(mats)) if rows else [
        tuple(F.one if i == k else F.zero for i in range(len(mats))) for k in range(len(mats))]
    flats = [m.flat() for m in mats]
    return Subspace.span(F, n * n, (
        tuple(F.reduce(sum(c * f[j] for c, f in zip(k, flats))) for j in range(n * n)) for k in kern))


def radical(a: AlgebraBasis, method: str = "auto", budget: int = DEFAULT_BUDGET) -> Radical:
    """Jacobson radical of a unital associative subalgebra of Mat_n.

    ``"trace"`` uses the kernel of the trace form (x, y) -> tr(xy), valid in
    characteristic 0 or p > n.  ``"lattice"`` annihilates the factors of an
    explicit composition series and needs a finite field with p^n <= budget.
    ``"auto"`` picks the trace form when valid, the lattice otherwise, and
    raises :class:`RadicalUndecided` when neither applies.
    """
    if a.product != "assoc":
        raise ValueError("radical needs an associative algebra")
    if not a.closed or not a.contains_identity:
        raise ValueError("radical needs a multiplication-closed algebra containing I")
    p = a.field.characteristic
    trace_ok = p == 0 or p > a.n
    if method == "auto":
        if trace_ok:
            method = "trace"
        elif p ** a.n <= budget:
            method = "lattice"
        else:
            raise RadicalUndecided(f"characteristic {p} <= n = {a.n} and {p}^{a.n} exceeds budget {budget}")
    if method == "trace":
        if not trace_ok:
            raise ValueError(f"trace form radical is invalid for characteristic {p} <= n = {a.n}")
        return Radical(_trace_radical(a), "trace")
    if method == "lattice":
        if p == 0:
            raise ValueError("lattice radical needs a finite field")
        if p ** a.n > budget:
            raise RadicalUndecided(f"{p}^{a.n} exceeds budget {budget}")
        return Radical(_lattice_radical(a, budget), "lattice")
    raise ValueError(f"unknown radical method {method!r}")


def is_semisimple_module(t: GeneratorTuple | None, method: str = "auto", budget: int = DEFAULT_BUDGET) -> bool:
    """V is semisimple iff the radical of the algebra the tuple generates vanishes."""
    if t is None:  # the zero module
        return True
    return radical(associative_envelope(t), method, budget).is_zero()


def module_radical(t: GeneratorTuple, method: str = "auto", budget: int = DEFAULT_BUDGET) -> Subspace:
    """J.V for J the radical of the generated algebra; zero iff V is semisimple.

    When V is not semisimple this submodule has no submodule complement.
    """
    rad = radical(associative_envelope(t), method, budget)
    vecs = []
    for flat in rad.space.basis:
        m = Matrix.from_flat(t.field, t.dim, flat)
        vecs.extend(m.columns())
    return Subspace.span(t.field, t.dim, vecs)


# ---------------------------------------------------------------------------
# centralizers and complements


def commutant(h: HSpec, t: GeneratorTuple) -> list[Matrix]:
    """Basis of {z in Lie(H) : z x = x z for every entry x}."""
    F = t.field
    basis = h.lie_basis(F)
    if not basis:
        return []
    cols = []
    for b in basis:
        col = []
        for x in t.entries:
            col.extend(b.commutator(x).flat())
        cols.append(col)
    rows = list(zip(*cols))
    kern = _kernel(rows, F, len(basis))
    out = []
    for k in kern:
        z = Matrix.zeros(F, t.dim)
        for c, b in zip(k, basis):
            if c != 0:
                z = z + b.scale(c)
        out.append(z)
    return out


def centralizer_dim(h: HSpec, t: GeneratorTuple) -> int:
    """dim C_H(t).

    The centralizer is the unit group of the commutant computed by
    :func:`commutant` (shifted by I off the H-blocks), an open dense subset,
    so the dimensions agree.  Determinant-one blocks are refused: there the
    Lie centralizer can be strictly bigger than the group centralizer.
    """
    if h.dim != t.dim:
        raise ValueError("HSpec and tuple dimensions differ")
    if h.has_det_one:
        raise UnsupportedHSpec("centralizer_dim does not handle determinant-one blocks")
    return len(commutant(h, t))


def equivariant_complement(t: GeneratorTuple, w: Subspace, must_contain: Subspace | None = None,
                           must_avoid_within: Subspace | None = None) -> Subspace | None:
    """A t-stable complement W' of the submodule ``w`` with must_contain <= W' <= must_avoid_within.

    Solves for a t-equivariant projection p onto ``w`` with p(must_contain) = 0
    and image(1 - p) inside ``must_avoid_within``; W' = ker p.  Returns None
    when no such projection exists.
    """
    F, n = t.field, t.dim
    if not is_stable(t, w):
        raise NotStable("equivariant_complement needs a t-stable subspace")
    N = n * n
    zero = F.zero

    def var(i, j):
        return i * n + j

    rows, rhs = [], []
    for x in t.entries:
        for i in range(n):
            for j in range(n):
                r = [zero] * N
                for k in range(n):
                    r[var(i, k)] = F.reduce(r[var(i, k)] + x[k, j])
                    r[var(k, j)] = F.reduce(r[var(k, j)] - x[i, k])
                rows.append(r)
                rhs.append(zero)
    # p b = b on w
    for b in w.basis:
        for i in range(n):
            r = [zero] * N
            for k in range(n):
                r[var(i, k)] = b[k]
            rows.append(r)
            rhs.append(b[i])
    # image of p inside w
    for c in w.annihilator():
        for j in range(n):
            r = [zero] * N
            for i in range(n):
                r[var(i, j)] = c[i]
            rows.append(r)
            rhs.append(zero)
    if must_contain is not None:
        for m in must_contain.basis:
            for i in range(n):
                r = [zero] * N
                for k in range(n):
                    r[var(i, k)] = m[k]
                rows.append(r)
                rhs.append(zero)
    if must_avoid_within is not None:
        for c in must_avoid_within.annihilator():
            for j in range(n):
                r = [zero] * N
                for i in range(n):
                    r[var(i, j)] = c[i]
                rows.append(r)
                rhs.append(c[j])
    sol = affine_solve(F, rows, rhs, n_unknowns=N)
    if sol is None:
        return None
    p = Matrix.from_flat(F, n, sol.witness)
    return (Matrix.identity(F, n) - p).image()
