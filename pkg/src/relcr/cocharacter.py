"""Cocharacters of H as weighted coordinate vectors, with parabolic/Levi data.

A cocharacter is ``lambda(a) = g diag(a^d_1, ..., a^d_n) g^-1`` for an integer
weight vector ``d`` and an optional conjugator ``g`` in H.  In the frame
``x' = g^-1 x g`` the entry (i, j) of x' scales by ``a^(d_i - d_j)``, so the
limit as a -> 0 exists iff every nonzero entry has ``d_i >= d_j``; the limit
keeps the weight-zero entries and kills the positive ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotInH, NotInP
from .linalg import Matrix, QQ, _rref
from .structures import GeneratorTuple, HSpec


@dataclass(frozen=True)
class WeightedCocharacter:
    h: HSpec
    weights: tuple
    conjugator: Matrix | None = None

    @property
    def is_trivial(self) -> bool:
        return all(d == 0 for d in self.weights)

    def to_frame(self, x: Matrix) -> Matrix:
        """x' = g^-1 x g."""
        g = self.conjugator
        return x if g is None else g.inverse() @ x @ g

    def from_frame(self, x: Matrix) -> Matrix:
        g = self.conjugator
        return x if g is None else g @ x @ g.inverse()

    def weight(self, i: int, j: int) -> int:
        return self.weights[i] - self.weights[j]

    def preorder(self) -> tuple:
        """Coordinates grouped by level, highest weight first."""
        levels = sorted(set(self.weights), reverse=True)
        return tuple(tuple(i for i, d in enumerate(self.weights) if d == lv) for lv in levels)

    def negate(self) -> WeightedCocharacter:
        return WeightedCocharacter(self.h, tuple(-d for d in self.weights), self.conjugator)

    def positive_lie_basis(self, field) -> list[Matrix]:
        """Basis, in the frame, of the positive-weight part of Lie(H) (= Lie R_u(P_lambda(H)))."""
        out = []
        n = self.h.dim
        for b in self.h.blocks:
            for i in b:
                for j in b:
                    if self.weights[i] - self.weights[j] > 0:
                        out.append(Matrix.unit(field, n, i, j))
        return out

    def to_json(self) -> dict:
        return {"weights": list(self.weights),
                "conjugator": None if self.conjugator is None else self.conjugator.tolist()}


def make_cocharacter(h: HSpec, weights: Sequence[int], conjugator: Matrix | None = None) -> WeightedCocharacter:
    """Validated cocharacter of H; raises :class:`NotInH` naming the violated constraint."""
    weights = tuple(int(d) for d in weights)
    if len(weights) != h.dim:
        raise NotInH(f"weight vector has length {len(weights)}, expected {h.dim}")
    for i in h.pinned:
        if weights[i] != 0:
            raise NotInH(f"coordinate {i} lies outside every H-block, so its weight must be 0 (got {weights[i]})")
    for b, d1 in zip(h.blocks, h.det_one):
        if d1 and sum(weights[i] for i in b) != 0:
            raise NotInH(f"determinant-one block {list(b)} needs weights summing to 0")
    if conjugator is not None:
        h.check_element(conjugator)
        if conjugator.is_identity():
            conjugator = None
    return WeightedCocharacter(h, weights, conjugator)


class Membership(str, Enum):
    IN_RU = "InRu"
    IN_LEVI = "InLevi"
    IN_P_ONLY = "InPOnly"
    NOT_IN_P = "NotInP"

    @property
    def in_p(self) -> bool:
        return self is not Membership.NOT_IN_P


def classify_membership(lam: WeightedCocharacter, x: Matrix, kind: str = "group") -> Membership:
    """Where x sits relative to P_lambda, L_lambda and R_u(P_lambda) (Lie versions for lie/assoc)."""
    xp = lam.to_frame(x)
    n = xp.nrows
    d = lam.weights
    levi = True
    for i in range(n):
        for j in range(n):
            if xp[i, j] != 0:
                w = d[i] - d[j]
                if w < 0:
                    return Membership.NOT_IN_P
                if w > 0:
                    levi = False
    if levi:
        return Membership.IN_LEVI
    y = xp - Matrix.identity(xp.field, n) if kind == "group" else xp
    if all(y[i, j] == 0 or d[i] - d[j] > 0 for i in range(n) for j in range(n)):
        return Membership.IN_RU
    return Membership.IN_P_ONLY


def limit_matrix(lam: WeightedCocharacter, x: Matrix) -> Matrix:
    """c_lambda(x); raises :class:`NotInP` if the limit does not exist."""
    xp = lam.to_frame(x)
    n = xp.nrows
    d = lam.weights
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v = xp[i, j]
            w = d[i] - d[j]
            if v != 0 and w < 0:
                raise NotInP(f"entry ({i},{j}) has weight {w} < 0 in the cocharacter frame")
            row.append(v if w == 0 else xp.field.zero)
        rows.append(tuple(row))
    return lam.from_frame(Matrix._make(xp.field, tuple(rows)))


def apply_limit(lam: WeightedCocharacter, t: GeneratorTuple) -> GeneratorTuple:
    """c_lambda applied entrywise to the tuple."""
    out = []
    for k, x in enumerate(t.entries):
        try:
            out.append(limit_matrix(lam, x))
        except NotInP as e:
            raise NotInP(f"tuple entry {k}: {e}", index=k) from None
    return t.with_entries(out)


def tuple_in_parabolic(lam: WeightedCocharacter, t: GeneratorTuple) -> bool:
    return all(classify_membership(lam, x, t.kind).in_p for x in t.entries)


# ---------------------------------------------------------------------------
# candidate enumeration


def _ordered_partitions(items: list):
    """All ordered set partitions (weak orderings) of ``items``."""
    n = len(items)
    if n == 0:
        yield []
        return
    # assign each item a level, keep surjective assignments onto 0..k-1
    for k in range(1, n + 1):
        for assign in product(range(k), repeat=n):
            if len(set(assign)) != k:
                continue
            yield [[it for it, a in zip(items, assign) if a == lv] for lv in range(k)]


def _fm_point(cons: list, nvars: int):
    """A rational point of {y : a.y >= b for (a, b) in cons}, or None.

    Exact Fourier-Motzkin elimination followed by back substitution, each
    variable set to its largest lower bound (0 if unbounded).
    """
    stages = [cons]
    for j in range(nvars - 1, -1, -1):
        cur = stages[-1]
        pos = [c for c in cur if c[0][j] > 0]
        neg = [c for c in cur if c[0][j] < 0]
        new = [c for c in cur if c[0][j] == 0]
        for a, b in pos:
            for c, e in neg:
                s, t = -c[j], a[j]
                new.append((tuple(s * x + t * y for x, y in zip(a, c)), s * b + t * e))
        stages.append(new)
    if any(b > 0 for a, b in stages[-1]):
        return None
    y = [Fraction(0)] * nvars
    for j in range(nvars):
        system = stages[nvars - j - 1]
        lo = hi = None
        for a, b in system:
            if a[j] == 0:
                continue
            rest = sum(a[k] * y[k] for k in range(j))
            bound = Fraction(b - rest) / a[j]
            if a[j] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None:
            y[j] = lo
        elif hi is not None:
            y[j] = min(hi, Fraction(0))
    return y


def _solve_levels(r: int, equalities: list):
    """Integer levels l_0 > l_1 > ... > l_{r-1} with every equality row . l = 0.

    Consecutive levels are used whenever some shift makes them feasible;
    otherwise an exact rational point is scaled to a primitive integer vector.
    Returns None when no strictly decreasing solution exists.
    """
    F = QQ
    # consecutive: l_k = c + (r - 1 - k)
    c_val = None
    ok = True
    for row in equalities:
        a = sum(row)
        b = sum(coef * (r - 1 - k) for k, coef in enumerate(row))
        if a == 0:
            if b != 0:
                ok = False
                break
            continue
        c = Fraction(-b, a)
        if c_val is not None and c != c_val:
            ok = False
            break
        c_val = c
    if ok:
        c_val = Fraction(0) if c_val is None else c_val
        levels = [c_val + (r - 1 - k) for k in range(r)]
        return _primitive(levels)
    # general case: eliminate equalities, then Fourier-Motzkin on the free variables
    eq = [tuple(F(x) for x in row) for row in equalities]
    R, pivots = _rref(eq, F, r)
    free = [k for k in range(r) if k not in pivots]

    def expand(yfree):
        vals = [Fraction(0)] * r
        for k, v in zip(free, yfree):
            vals[k] = v
        for i, p in enumerate(pivots):
            vals[p] = -sum(R[i][k] * vals[k] for k in free)
        return vals

    # express each l_k as a linear form in the free variables
    forms = []
    for k in range(r):
        unit = [Fraction(1) if f == k else Fraction(0) for f in free]
        if k in free:
            forms.append(unit)
        else:
            i = pivots.index(k)
            forms.append([-R[i][f] for f in free])
    cons = []
    for k in range(r - 1):
        cons.append((tuple(a - b for a, b in zip(forms[k], forms[k + 1])), Fraction(1)))
    if not free:
        return None
    y = _fm_point(cons, len(free))
    if y is None:
        return None
    return _primitive(expand(y))


def _primitive(levels):
    den = 1
    for v in levels:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in levels]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def enumerate_destabilizer_candidates(h: HSpec, conjugator_pool: Iterable[Matrix] | None = None):
    """One representative cocharacter per nontrivial coordinate preorder, per conjugator.

    Pinned coordinates share level 0; determinant-one blocks keep only
    preorders admitting integer levels with block sum 0.  Within a conjugator
    the candidates are listed in lexicographic order of their weight vectors.
    """
    pool = [None] if conjugator_pool is None else list(conjugator_pool)
    pinned = h.pinned
    free = [i for b in h.blocks for i in b]
    items = free + (["*"] if pinned else [])
    reps = []
    for parts in _ordered_partitions(items):
        r = len(parts)
        if r < 2:
            continue
        where = {}
        for k, part in enumerate(parts):
            for it in part:
                where[it] = k
        eqs = []
        if pinned:
            eqs.append([1 if k == where["*"] else 0 for k in range(r)])
        for b, d1 in zip(h.blocks, h.det_one):
            if d1:
                row = [0] * r
                for i in b:
                    row[where[i]] += 1
                eqs.append(row)
        levels = _solve_levels(r, eqs)
        if levels is None:
            continue
        weights = [0] * h.dim
        for i in free:
            weights[i] = levels[where[i]]
        reps.append(tuple(weights))
    reps = sorted(set(reps))
    for g in pool:
        for w in reps:
            yield make_cocharacter(h, w, g)
