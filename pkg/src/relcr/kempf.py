"""Optimal destabilizing cocharacters for tuples that degenerate to the trivial tuple.

Only diagonal cocharacters of H are searched.  Every entry (minus I for
groups) splits into coordinate components E_ij carrying the weight
e_i - e_j.  The quality of lambda is m(lambda) / |lambda| with m the smallest
pairing with a component, so the optimum is the shortest point of the
polyhedron {<e_i - e_j, lambda> >= 1} cut down by the H constraints.  That
point is found exactly by trying each active set: the shortest point of the
active affine subspace, kept when it satisfies all the other inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm

from .cocharacter import WeightedCocharacter, make_cocharacter
from .linalg import Matrix, QQ, affine_solve
from .structures import GeneratorTuple, HSpec

OPTIMAL = "optimal"
ALREADY_IN_TARGET = "already_in_target"
NOT_UNSTABLE = "not_unstable"


@dataclass(frozen=True)
class OptimalResult:
    status: str
    lambda_opt: WeightedCocharacter | None = None
    value: Fraction | None = None  # m(lambda)^2 / |lambda|^2
    parabolic_fingerprint: tuple | None = None

    def to_json(self) -> dict:
        return {"status": self.status,
                "lambda": None if self.lambda_opt is None else list(self.lambda_opt.weights),
                "value": None if self.value is None else str(self.value),
                "fingerprint": None if self.parabolic_fingerprint is None
                else [list(p) for p in self.parabolic_fingerprint]}


def weight_components(t: GeneratorTuple) -> list:
    """Sorted coordinate pairs (i, j) carrying a nonzero entry of some generator."""
    n = t.dim
    comps = set()
    for x in t.entries:
        y = x - Matrix.identity(t.field, n) if t.kind == "group" else x
        for i in range(n):
            for j in range(n):
                if y[i, j] != 0:
                    comps.add((i, j))
    return sorted(comps)


def _equalities(h: HSpec) -> list:
    n = h.dim
    rows = [[1 if j == p else 0 for j in range(n)] for p in h.pinned]
    for b, d1 in zip(h.blocks, h.det_one):
        if d1:
            rows.append([1 if j in b else 0 for j in range(n)])
    return rows


def _pairing(c, lam):
    return lam[c[0]] - lam[c[1]]


def _shortest_on(active, eqs, n):
    """Shortest vector with <chi, l> = 1 for chi in ``active`` and eqs . l = 0."""
    rows = []
    rhs = []
    for i, j in active:
        r = [0] * n
        r[i] += 1
        r[j] -= 1
        rows.append(r)
        rhs.append(1)
    for e in eqs:
        rows.append(list(e))
        rhs.append(0)
    if not rows:
        return [Fraction(0)] * n
    # l = M^T y with M M^T y = b
    gram = [[sum(Fraction(a) * b for a, b in zip(r1, r2)) for r2 in rows] for r1 in rows]
    sol = affine_solve(QQ, gram, rhs, n_unknowns=len(rows))
    if sol is None:
        return None
    lam = [sum(y * r[k] for y, r in zip(sol.witness, rows)) for k in range(n)]
    if any(sum(Fraction(a) * b for a, b in zip(r, lam)) != c for r, c in zip(rows, rhs)):
        return None
    return lam


def _primitive(vec) -> tuple:
    den = 1
    for v in vec:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g > 1 else tuple(ints)


def quality(components, weights) -> Fraction:
    """m(lambda)^2 / |lambda|^2, or 0 when some component pairs non-positively."""
    m = min(_pairing(c, weights) for c in components)
    norm = sum(d * d for d in weights)
    if m <= 0 or norm == 0:
        return Fraction(0)
    return Fraction(m * m, norm)


def optimal_destabilizing_cocharacter(t: GeneratorTuple, h: HSpec) -> OptimalResult:
    """The primitive diagonal cocharacter of H maximizing m(lambda)/|lambda|, Euclidean norm."""
    if h.dim != t.dim:
        raise ValueError("HSpec and tuple dimensions differ")
    comps = weight_components(t)
    if not comps:
        return OptimalResult(ALREADY_IN_TARGET, value=None, parabolic_fingerprint=(tuple(range(t.dim)),))
    if any(i == j for i, j in comps):
        return OptimalResult(NOT_UNSTABLE)
    n = t.dim
    eqs = _equalities(h)
    best = None
    best_norm = None
    for k in range(1, len(comps) + 1):
        for active in combinations(comps, k):
            lam = _shortest_on(active, eqs, n)
            if lam is None or any(_pairing(c, lam) < 1 for c in comps):
                continue
            norm = sum(v * v for v in lam)
            if best is None or norm < best_norm:
                best, best_norm = lam, norm
    if best is None:
        return OptimalResult(NOT_UNSTABLE)
    weights = _primitive(best)
    lam = make_cocharacter(h, weights)
    return OptimalResult(OPTIMAL, lam, quality(comps, weights), lam.preorder())


def brute_force_optimal(t: GeneratorTuple, h: HSpec, bound: int = 6):
    """Best (value, weights) over primitive integer vectors with entries in [-bound, bound].

    Ties are broken by the lexicographically smallest weight vector.  Returns
    None when no vector in the box destabilizes.
    """
    comps = weight_components(t)
    if not comps:
        return None
    eqs = _equalities(h)
    best = None
    for w in product(range(-bound, bound + 1), repeat=t.dim):
        if any(sum(a * b for a, b in zip(e, w)) != 0 for e in eqs):
            continue
        g = 0
        for v in w:
            g = gcd(g, v)
        if g != 1:
            continue
        q = quality(comps, w)
        if q > 0 and (best is None or q > best[0]):
            best = (q, w)
    return best
