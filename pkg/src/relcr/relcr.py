"""Deciding relative complete reducibility and relative irreducibility.

Two routes:

* the module criterion, complete for H = GL(U): K is relatively cr iff the
  largest submodule sigma inside U is semisimple and
  V = sigma (+) iota, iota the submodule generated by the fixed complement U~;
* a cocharacter search over candidate destabilizers, which works for any
  coordinate-block H and is complete when the conjugator pool provably covers
  every relevant cocharacter.

For a candidate lambda with K inside P_lambda, "some mu with P_mu = P_lambda
and K inside L_mu" is decided by one affine linear system: such mu exists iff
some u = I + n with n in the positive-weight part of Lie(H) satisfies
x u = u c_lambda(x) for every generator x (then u^-1 x u = c_lambda(x) lies in
the Levi).  The group R_u(P_lambda(H)) is exactly this affine space for the
GL/SL block groups handled here, so no search is involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

from .cocharacter import (WeightedCocharacter, apply_limit, enumerate_destabilizer_candidates,
                          limit_matrix, make_cocharacter, tuple_in_parabolic)
from .errors import NotInP, RadicalUndecided
from .linalg import Matrix, QQ, Subspace, affine_solve
from .modules import (associative_envelope, centralizer_dim, equivariant_complement, is_semisimple_module,
                      iota, is_stable, module_radical, restrict, sigma, AlgebraBasis)
from .oracle import DEFAULT_BUDGET, submodule_lattice
from .structures import GeneratorTuple, HSpec


class Verdict(str, Enum):
    REL_CR = "RelCR"
    NOT_REL_CR = "NotRelCR"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ModuleWitness:
    sigma: Subspace
    iota: Subspace
    sigma_semisimple: bool
    direct_sum: bool


@dataclass(frozen=True)
class Destabilizer:
    cocharacter: WeightedCocharacter
    limit: GeneratorTuple
    reason: str = ""


@dataclass(frozen=True)
class RelCrReport:
    verdict: Verdict
    mode: str  # "module" or "search"
    search_exhausted: bool = False
    destabilizer: Destabilizer | None = None
    module: ModuleWitness | None = None
    notes: tuple = dc_field(default=())

    @property
    def is_relcr(self) -> bool:
        return self.verdict is Verdict.REL_CR


# ---------------------------------------------------------------------------
# restoring a cocharacter


def restoring_element(lam: WeightedCocharacter, t: GeneratorTuple) -> Matrix | None:
    """u in R_u(P_lambda(H)) with u^-1 x u = c_lambda(x) for all entries, or None.

    Raises :class:`NotInP` when some entry is outside P_lambda.
    """
    F, n = t.field, t.dim
    ident = Matrix.identity(F, n)
    frames = [lam.to_frame(x) for x in t.entries]
    limits = [limit_matrix(lam, x) for x in t.entries]  # raises NotInP
    if lam.is_trivial:
        return ident
    lim_frames = [lam.to_frame(m) for m in limits]
    basis = lam.positive_lie_basis(F)
    rhs = []
    for x, m in zip(frames, lim_frames):
        rhs.extend((m - x).flat())
    if not basis:
        if all(v == 0 for v in rhs):
            return ident
        return None
    cols = []
    for b in basis:
        col = []
        for x, m in zip(frames, lim_frames):
            col.extend((x @ b - b @ m).flat())
        cols.append(col)
    rows = list(zip(*cols))
    sol = affine_solve(F, rows, rhs, n_unknowns=len(basis))
    if sol is None:
        return None
    u = ident
    for c, b in zip(sol.witness, basis):
        if c != 0:
            u = u + b.scale(c)
    return lam.from_frame(u)


def exists_restoring_mu(lam: WeightedCocharacter, t: GeneratorTuple, h: HSpec | None = None,
                        route: str = "conjugation") -> bool:
    """Is there mu in Y(H) with P_mu = P_lambda and every entry in L_mu?

    ``route="conjugation"`` solves for the conjugating unipotent element
    directly (any HSpec).  ``route="dimension"`` compares dim C_H before and
    after taking the limit; equal dimensions are equivalent to restorability,
    but the route is unavailable for determinant-one blocks.
    """
    h = lam.h if h is None else h
    if route == "conjugation":
        return restoring_element(lam, t) is not None
    if route == "dimension":
        limit = apply_limit(lam, t)
        return centralizer_dim(h, t) == centralizer_dim(h, limit)
    raise ValueError(f"unknown route {route!r}")


# ---------------------------------------------------------------------------
# module criterion for H = GL(U)


def _u_spaces(t: GeneratorTuple, h: HSpec):
    if h.kind == "levi":
        raise ValueError("the module criterion needs H = GL(U) (HSpec.glu or HSpec.full)")
    if h.dim != t.dim:
        raise ValueError("HSpec and tuple dimensions differ")
    F, n = t.field, t.dim
    return Subspace.coordinate(F, n, h.u_coords), Subspace.coordinate(F, n, h.complement_coords)


def module_witness(t: GeneratorTuple, h: HSpec, radical_method: str = "auto",
                   budget: int = DEFAULT_BUDGET) -> ModuleWitness:
    U, Ut = _u_spaces(t, h)
    s = sigma(t, U)
    i = iota(t, Ut)
    ss = is_semisimple_module(restrict(t, s), radical_method, budget)
    direct = (s & i).is_zero() and (s + i).is_full()
    return ModuleWitness(s, i, ss, direct)


def _lift(w: Subspace, coords_space: Subspace) -> Subspace:
    """Map a subspace given in the echelon coordinates of ``w`` back into V."""
    F, n = w.field, w.ambient_dim
    vecs = [tuple(F.reduce(sum(c * b[j] for c, b in zip(v, w.basis))) for j in range(n))
            for v in coords_space.basis]
    return Subspace.span(F, n, vecs)


def _canonical_key(w: Subspace):
    return (w.dim, w.tolist())


def failure_witnesses(t: GeneratorTuple, h: HSpec, radical_method: str = "auto",
                      budget: int = DEFAULT_BUDGET):
    """Submodules at which the two complement conditions fail.

    Returns ``(cond_i, cond_ii)``: lists of submodules W inside U with no
    complement containing U~, and submodules W containing U~ with no
    complement inside U.  Both lists are empty iff the tuple is relatively cr.
    """
    mw = module_witness(t, h, radical_method, budget)
    s, i = mw.sigma, mw.iota
    cond_i, cond_ii = [], []
    meet = s & i
    if not meet.is_zero():
        cond_i.append(meet)
    if not mw.sigma_semisimple:
        rt = restrict(t, s)
        cond_i.append(_lift(s, module_radical(rt, radical_method, budget)))
    if not (s + i).is_full():
        cond_ii.append(i)
    cond_i.sort(key=_canonical_key)
    cond_ii.sort(key=_canonical_key)
    return cond_i, cond_ii


def destabilizer_from_witness(h: HSpec, condition: str, w: Subspace) -> WeightedCocharacter:
    """The two-level cocharacter of GL(U) whose parabolic is the stabilizer of ``w``.

    condition ``"i"`` (w inside U): weight 1 on w, 0 elsewhere.
    condition ``"ii"`` (w contains U~): weight -1 on a complement of w inside U.
    """
    F, n = w.field, w.ambient_dim
    U = Subspace.coordinate(F, n, h.u_coords)
    if condition == "i":
        if not U.contains(w):
            raise ValueError("condition (i) witness must lie inside U")
        adapted = w
    elif condition == "ii":
        adapted = w & U
    else:
        raise ValueError("condition must be 'i' or 'ii'")
    cols = [list(Matrix.identity(F, n).column(j)) for j in range(n)]
    piv = adapted.pivots()
    for p, row in zip(piv, adapted.basis):
        cols[p] = list(row)
    g = Matrix.from_columns(F, cols)
    if condition == "i":
        weights = [1 if j in piv else 0 for j in range(n)]
    else:
        pset = set(piv)
        weights = [-1 if (j in h.u_coords and j not in pset) else 0 for j in range(n)]
    return make_cocharacter(h, weights, g)


def choose_destabilizer(t: GeneratorTuple, h: HSpec, prefer: str = "i", radical_method: str = "auto",
                        budget: int = DEFAULT_BUDGET) -> tuple | None:
    """(condition, witness, cocharacter) for the preferred failing condition, or None if relatively cr.

    The smallest witness (dimension, then canonical basis) of the preferred
    condition is used; the other condition is consulted only if the preferred
    one has no failure.
    """
    cond_i, cond_ii = failure_witnesses(t, h, radical_method, budget)
    order = [("i", cond_i), ("ii", cond_ii)]
    if prefer == "ii":
        order.reverse()
    for cond, ws in order:
        if ws:
            w = ws[0]
            return cond, w, destabilizer_from_witness(h, cond, w)
    return None


# ---------------------------------------------------------------------------
# normalization by H (makes the identity conjugator pool complete)


def _same_torus_character(h: HSpec, a: tuple, b: tuple) -> bool:
    n = h.dim
    diff = [0] * n
    diff[a[0]] += 1
    diff[a[1]] -= 1
    diff[b[0]] -= 1
    diff[b[1]] += 1
    gens = []
    for p in h.pinned:
        gens.append([1 if j == p else 0 for j in range(n)])
    for blk, d1 in zip(h.blocks, h.det_one):
        if d1:
            gens.append([1 if j in blk else 0 for j in range(n)])
    if all(x == 0 for x in diff):
        return True
    if not gens:
        return False
    r0 = Matrix(QQ, gens).rank()
    return Matrix(QQ, gens + [diff]).rank() == r0


def normalized_by_h(h: HSpec, algebra: AlgebraBasis) -> bool:
    """Does H normalize the algebra (as a subspace of Mat_n)?

    H is generated by its diagonal torus and the root groups I + s E_ij for
    i != j in a common block; the algebra is torus-stable iff it is the sum of
    its torus weight components, and root-group-stable iff it is closed under
    a -> E a - a E and a -> E a E.
    """
    F, n = algebra.field, algebra.n
    mats = algebra.matrices()
    positions = [(i, j) for i in range(n) for j in range(n)]
    classes = []
    for pos in positions:
        for cls in classes:
            if _same_torus_character(h, cls[0], pos):
                cls.append(pos)
                break
        else:
            classes.append([pos])
    for a in mats:
        for cls in classes:
            members = set(cls)
            part = Matrix._make(F, tuple(
                tuple(a[i, j] if (i, j) in members else F.zero for j in range(n)) for i in range(n)))
            if not algebra.contains(part):
                return False
    for blk in h.blocks:
        for i in blk:
            for j in blk:
                if i == j:
                    continue
                e = Matrix.unit(F, n, i, j)
                for a in mats:
                    if not algebra.contains(e @ a - a @ e) or not algebra.contains(e @ a @ e):
                        return False
    return True


# ---------------------------------------------------------------------------
# the checker


def check_relcr(t: GeneratorTuple, h: HSpec, mode: str = "module", conjugator_pool=None,
                radical_method: str = "auto", budget: int = DEFAULT_BUDGET) -> RelCrReport:
    """Decide whether the tuple is relatively completely reducible with respect to H.

    ``mode="module"`` needs H = GL(U) and is always complete.  ``mode="search"``
    walks the candidate cocharacters for each conjugator in the pool (identity
    first) and reports the first destabilizer met.  A RelCR answer from the
    search carries ``search_exhausted=True`` only when the pool is known to be
    complete: for GL(U)-type H the pool is extended by the conjugator of the
    module-criterion destabilizer, and for any H the identity pool suffices
    when H normalizes the algebra generated by the tuple.
    """
    if mode == "module":
        return _check_module(t, h, radical_method, budget)
    if mode == "search":
        return _check_search(t, h, conjugator_pool, radical_method, budget)
    raise ValueError(f"unknown mode {mode!r}")


def _check_module(t, h, radical_method, budget):
    try:
        mw = module_witness(t, h, radical_method, budget)
    except RadicalUndecided as e:
        return RelCrReport(Verdict.INCONCLUSIVE, "module", notes=(str(e),))
    if mw.sigma_semisimple and mw.direct_sum:
        return RelCrReport(Verdict.REL_CR, "module", search_exhausted=True, module=mw)
    cond, w, lam = choose_destabilizer(t, h, "i", radical_method, budget)
    dest = Destabilizer(lam, apply_limit(lam, t), f"condition ({cond}) fails at submodule of dimension {w.dim}")
    return RelCrReport(Verdict.NOT_REL_CR, "module", search_exhausted=True, destabilizer=dest, module=mw)


def _check_search(t, h, pool, radical_method, budget):
    F, n = t.field, t.dim
    ident = Matrix.identity(F, n)
    pool = [ident] if pool is None else [g for g in pool]
    for g in pool:
        h.check_element(g)
    notes = []
    complete = False
    expected_fail = None
    if h.kind in ("glu", "full"):
        try:
            found = choose_destabilizer(t, h, "i", radical_method, budget)
            complete = True
            if found is not None:
                expected_fail = found
                g = found[2].conjugator
                g = ident if g is None else g
                if g not in pool:
                    pool.append(g)
                notes.append("pool extended by the module-criterion destabilizer conjugator")
        except RadicalUndecided as e:
            notes.append(f"module analysis undecided: {e}")
    if not complete and ident in pool and normalized_by_h(h, associative_envelope(t)):
        complete = True
        notes.append("H normalizes the generated algebra; identity pool is complete")
    for lam in enumerate_destabilizer_candidates(h, pool):
        if not tuple_in_parabolic(lam, t):
            continue
        if not exists_restoring_mu(lam, t, h):
            dest = Destabilizer(lam, apply_limit(lam, t), "no mu in Y(H) with the same parabolic has the tuple in its Levi")
            return RelCrReport(Verdict.NOT_REL_CR, "search", search_exhausted=False, destabilizer=dest,
                               notes=tuple(notes))
    if expected_fail is not None:
        raise RuntimeError("module criterion found a destabilizer that the search did not confirm")
    if not complete:
        notes.append("conjugator pool not known to be complete")
    return RelCrReport(Verdict.REL_CR, "search", search_exhausted=complete, notes=tuple(notes))


def check_relcr_complements(t: GeneratorTuple, h: HSpec, budget: int = DEFAULT_BUDGET) -> bool:
    """The complement form of the criterion over a finite field.

    Quantifies over the enumerated submodule lattice and decides each
    complement question with :func:`equivariant_complement`.
    """
    U, Ut = _u_spaces(t, h)
    V = Subspace.full(t.field, t.dim)
    for w in submodule_lattice(t, budget):
        if U.contains(w) and equivariant_complement(t, w, must_contain=Ut, must_avoid_within=V) is None:
            return False
        if w.contains(Ut) and equivariant_complement(t, w, must_contain=None, must_avoid_within=U) is None:
            return False
    return True


def is_rel_irreducible(t: GeneratorTuple, h: HSpec) -> bool:
    """Is the tuple in no proper parabolic P_lambda with lambda in Y(GL(U))?

    For proper nonzero U this means no nonzero submodule inside U and no
    proper submodule containing U~, i.e. sigma(U) = 0 and iota(U~) = V.  When
    U = V it is absolute irreducibility, decided by Burnside's theorem (the
    generated algebra is all of Mat_n); when U = 0 there is nothing to check.
    """
    U, Ut = _u_spaces(t, h)
    n = t.dim
    if U.is_zero():
        return True
    if Ut.is_zero():
        return associative_envelope(t).dim == n * n
    result = sigma(t, U).is_zero() and iota(t, Ut).is_full()
    if result and centralizer_dim(h, t) != 0:
        raise RuntimeError("relatively irreducible tuple with a positive-dimensional centralizer in H")
    return result


def levi_necessary_condition(t: GeneratorTuple, blocks, radical_method: str = "auto",
                             budget: int = DEFAULT_BUDGET) -> bool:
    """Module criterion for each GL(U_i) of the Levi GL(U_1) x ... x GL(U_s).

    A False answer certifies that the tuple is not relatively cr with
    respect to the Levi subgroup.
    """
    for b in blocks:
        rep = check_relcr(t, HSpec.glu(t.dim, b), "module", radical_method=radical_method, budget=budget)
        if rep.verdict is Verdict.INCONCLUSIVE:
            raise RadicalUndecided(f"block {list(b)} undecided")
        if not rep.is_relcr:
            return False
    return True


# ---------------------------------------------------------------------------
# certificate replay


def replay_destabilizer(t: GeneratorTuple, lam: WeightedCocharacter) -> bool:
    """A NotRelCR certificate holds iff the tuple lies in P_lambda and no mu restores it."""
    try:
        return tuple_in_parabolic(lam, t) and not exists_restoring_mu(lam, t)
    except NotInP:
        return False


def replay_module_certificate(t: GeneratorTuple, h: HSpec, s: Subspace, i: Subspace,
                              radical_method: str = "auto", budget: int = DEFAULT_BUDGET) -> bool:
    """A RelCR module certificate holds iff sigma/iota are right, sigma is semisimple and V = sigma (+) iota."""
    U, Ut = _u_spaces(t, h)
    if not (is_stable(t, s) and is_stable(t, i) and U.contains(s) and i.contains(Ut)):
        return False
    if s != sigma(t, U) or i != iota(t, Ut):
        return False
    if not ((s & i).is_zero() and (s + i).is_full()):
        return False
    return is_semisimple_module(restrict(t, s), radical_method, budget)
