"""Brute-force baselines over tiny finite fields.

Everything here discharges quantifiers literally: subspaces are enumerated
by their echelon pattern, and lattice questions (containment, trivial
intersection, direct sums) are answered on explicit point sets rather than
through the echelon machinery the decision procedures use.
"""

from __future__ import annotations

from itertools import combinations, product

from .errors import BudgetExceeded
from .linalg import Field, Subspace
from .structures import GeneratorTuple, HSpec

DEFAULT_BUDGET = 2 ** 16


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def _check_budget(field: Field, n: int, budget: int):
    if not field.is_finite:
        raise BudgetExceeded("brute force needs a finite field")
    if field.p ** n > budget:
        raise BudgetExceeded(f"{field.p}^{n} = {field.p ** n} exceeds budget {budget}")


def enumerate_subspaces(n: int, field: Field, budget: int = DEFAULT_BUDGET):
    """Yield every subspace of GF(q)^n exactly once, in canonical form.

    Ordered by dimension, then pivot pattern, then the free entries.
    """
    _check_budget(field, n, budget)
    elems = list(field.elements())
    one, zero = field.one, field.zero
    for k in range(n + 1):
        for pivots in combinations(range(n), k):
            pivset = set(pivots)
            free = [(r, j) for r, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivset]
            for values in product(elems, repeat=len(free)):
                rows = [[zero] * n for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = one
                for (r, j), v in zip(free, values):
                    rows[r][j] = v
                yield Subspace(field, n, tuple(tuple(r) for r in rows))


def points(w: Subspace) -> frozenset:
    """All vectors of a subspace over a finite field, as tuples."""
    F = w.field
    n = w.ambient_dim
    out = set()
    for coeffs in product(list(F.elements()), repeat=w.dim):
        out.add(tuple(F.reduce(sum(c * b[j] for c, b in zip(coeffs, w.basis))) for j in range(n)))
    if not w.basis:
        out.add(tuple(F.zero for _ in range(n)))
    return frozenset(out)


def _stable(t: GeneratorTuple, w: Subspace, pts: frozenset) -> bool:
    return all((x @ b) in pts for x in t.entries for b in w.basis)


def submodule_lattice(t: GeneratorTuple, budget: int = DEFAULT_BUDGET, verify: bool = False) -> list:
    """All t-stable subspaces, in enumeration order.

    With ``verify`` the lattice is checked to be closed under sums and
    intersections (quadratic in its size).
    """
    out = []
    for w in enumerate_subspaces(t.dim, t.field, budget):
        if _stable(t, w, points(w)):
            out.append(w)
    if verify:
        psets = {points(w) for w in out}
        for a in out:
            for b in out:
                if points(a) & points(b) not in psets:
                    raise AssertionError("lattice not closed under intersection")
                if points(a + b) not in psets:
                    raise AssertionError("lattice not closed under sum")
    return out


class _Lattice:
    """Submodule lattice as point sets, for the literal complement quantifiers."""

    def __init__(self, t: GeneratorTuple, budget: int):
        self.size = t.field.p ** t.dim
        self.zero = tuple(t.field.zero for _ in range(t.dim))
        self.members = [(w, points(w)) for w in submodule_lattice(t, budget)]

    def complements(self, pw: frozenset):
        for w, p in self.members:
            if len(pw) * len(p) == self.size and pw & p == {self.zero}:
                yield w, p


def brute_force_semisimple(t: GeneratorTuple, budget: int = DEFAULT_BUDGET) -> bool:
    """Every submodule has a submodule complement."""
    lat = _Lattice(t, budget)
    return all(any(True for _ in lat.complements(p)) for _, p in lat.members)


def brute_force_relcr(t: GeneratorTuple, h: HSpec, budget: int = DEFAULT_BUDGET) -> bool:
    """Relative complete reducibility for H = GL(U), checking both complement conditions literally.

    (i) every submodule inside U has a submodule complement containing the
    fixed complement U~; (ii) every submodule containing U~ has a submodule
    complement inside U.
    """
    if h.kind == "levi":
        raise ValueError("brute_force_relcr needs a GL(U)-type HSpec")
    F, n = t.field, t.dim
    pu = points(Subspace.coordinate(F, n, h.u_coords))
    pc = points(Subspace.coordinate(F, n, h.complement_coords))
    lat = _Lattice(t, budget)
    for _, p in lat.members:
        if p <= pu and not any(pc <= q for _, q in lat.complements(p)):
            return False
        if pc <= p and not any(q <= pu for _, q in lat.complements(p)):
            return False
    return True


def composition_series(t: GeneratorTuple, budget: int = DEFAULT_BUDGET) -> list:
    """A composition series 0 = V_0 < ... < V_r = V of the module over GF(q).

    Each step takes a smallest cyclic submodule spin(V_i + v) over all coset
    representatives v; a minimal nonzero submodule of V/V_i is cyclic, so the
    smallest one found is a simple step.
    """
    from .modules import spin

    F, n = t.field, t.dim
    _check_budget(F, n, budget)
    current = Subspace.zero(F, n)
    series = [current]
    elems = list(F.elements())
    while not current.is_full():
        comp = current.coordinate_complement()
        best = None
        for coeffs in product(elems, repeat=comp.dim):
            if all(c == 0 for c in coeffs):
                continue
            v = tuple(F.reduce(sum(c * b[j] for c, b in zip(coeffs, comp.basis))) for j in range(n))
            w = spin(t, current + Subspace.span(F, n, [v]))
            if best is None or w.dim < best.dim:
                best = w
                if best.dim == current.dim + 1:
                    break
        current = best
        series.append(current)
    return series
