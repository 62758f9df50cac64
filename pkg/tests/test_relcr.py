import random

import pytest

from relcr.cocharacter import (Membership, apply_limit, classify_membership, enumerate_destabilizer_candidates,
                               make_cocharacter)
from relcr.linalg import GF, QQ, Matrix, Subspace, affine_solve
from relcr.modules import (associative_envelope, centralizer_dim, commutant, is_semisimple_module, is_stable,
                           radical, _closure)
from relcr.relcr import (Verdict, check_relcr, choose_destabilizer, destabilizer_from_witness,
                         exists_restoring_mu, failure_witnesses, is_rel_irreducible, levi_necessary_condition,
                         normalized_by_h, replay_destabilizer, replay_module_certificate, restoring_element)
from relcr.structures import GeneratorTuple, HSpec

from instances import coordinate_subsets, random_tuple, scalar

F3, F5 = GF(3), GF(5)
SL_BLOCK = HSpec.levi(3, [[1, 2]], [True])


def unip(F, n, *positions):
    m = Matrix.identity(F, n)
    for i, j in positions:
        m = m + Matrix.unit(F, n, i, j)
    return m


def tup(F, *mats, kind="group"):
    return GeneratorTuple.make(F, kind, mats)


JORDAN = tup(F3, [[1, 1], [0, 1]])
SWAP = tup(F3, [[0, 1], [1, 0]])


# exists_restoring_mu

def test_restoring_trivial_cocharacter():
    lam = make_cocharacter(HSpec.full(2), (0, 0))
    assert exists_restoring_mu(lam, JORDAN)


def test_restoring_fails_for_sl_block_example():
    lam = make_cocharacter(SL_BLOCK, (0, 1, -1))
    assert not exists_restoring_mu(lam, tup(F3, unip(F3, 3, (0, 2))))


def test_restoring_holds_for_levi_element():
    lam = make_cocharacter(HSpec.full(2), (1, 0))
    t = tup(F3, Matrix.diagonal(F3, [2, 1]))
    assert exists_restoring_mu(lam, t)
    assert exists_restoring_mu(lam, t, route="dimension")


def test_restoring_element_conjugates_into_levi():
    # x = u l u^-1 with u unipotent in R_u(P_lambda): the solver must undo u
    rng = random.Random(4)
    h = HSpec.levi(4, [[0, 1, 2, 3]], [True])
    for _ in range(30):
        w = [rng.randint(-2, 2) for _ in range(3)]
        w.append(-sum(w))
        lam = make_cocharacter(h, w)
        l = Matrix.diagonal(F5, [rng.randrange(1, 5) for _ in range(4)])
        n = Matrix.zeros(F5, 4)
        for b in lam.positive_lie_basis(F5):
            n = n + b.scale(rng.randrange(5))
        u = Matrix.identity(F5, 4) + n
        t = tup(F5, u @ l @ u.inverse())
        v = restoring_element(lam, t)
        assert v is not None
        y = v.inverse() @ t.entries[0] @ v
        assert classify_membership(lam, y) is Membership.IN_LEVI
        assert (v - Matrix.identity(F5, 4)).is_zero() or all(
            (v - Matrix.identity(F5, 4))[i, j] == 0 or lam.weight(i, j) > 0 for i in range(4) for j in range(4))


def test_restoring_routes_agree():
    rng = random.Random(9)
    for _ in range(60):
        t = random_tuple(rng, F3, 3)
        h = HSpec.glu(3, [i for i in range(3) if rng.random() < 0.7])
        for lam in enumerate_destabilizer_candidates(h):
            if all(classify_membership(lam, x, t.kind).in_p for x in t.entries):
                assert exists_restoring_mu(lam, t, h) == exists_restoring_mu(lam, t, h, route="dimension")


def test_restoring_rejects_unknown_route():
    with pytest.raises(ValueError):
        exists_restoring_mu(make_cocharacter(HSpec.full(2), (0, 0)), JORDAN, route="guess")


# check_relcr examples

@pytest.mark.parametrize("h", [HSpec.full(2), HSpec.glu(2, [0]), HSpec.glu(2, [1]), HSpec.glu(2, []),
                               HSpec.levi(2, [[0, 1]], [True])])
def test_identity_is_relcr(h):
    t = tup(F3, Matrix.identity(F3, 2))
    mode = "search" if h.kind == "levi" else "module"
    assert check_relcr(t, h, mode).verdict is Verdict.REL_CR


def test_jordan_not_relcr_in_both_modes():
    h = HSpec.glu(2, [1])
    r = check_relcr(JORDAN, h)
    assert r.verdict is Verdict.NOT_REL_CR
    assert r.module.sigma.is_zero() and r.module.iota == Subspace.span(F3, 2, [[1, 0]])
    assert r.destabilizer.cocharacter.weights == (0, -1)
    s = check_relcr(JORDAN, h, "search")
    assert s.verdict is Verdict.NOT_REL_CR and s.destabilizer.cocharacter.weights == (0, -1)


def test_sl_block_example():
    both = tup(F3, unip(F3, 3, (0, 1)), unip(F3, 3, (0, 2)))
    r = check_relcr(both, SL_BLOCK, "search")
    assert r.verdict is Verdict.REL_CR and r.search_exhausted
    first = check_relcr(tup(F3, unip(F3, 3, (0, 1))), SL_BLOCK, "search")
    assert first.destabilizer.cocharacter.weights == (0, -1, 1)
    second = check_relcr(tup(F3, unip(F3, 3, (0, 2))), SL_BLOCK, "search")
    assert second.destabilizer.cocharacter.weights == (0, 1, -1)


def test_module_mode_needs_glu():
    with pytest.raises(ValueError):
        check_relcr(tup(F3, Matrix.identity(F3, 3)), SL_BLOCK, "module")


def test_unnormalized_search_is_not_exhaustive():
    swap01 = tup(F3, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert not normalized_by_h(SL_BLOCK, associative_envelope(swap01))
    r = check_relcr(swap01, SL_BLOCK, "search")
    assert r.verdict is Verdict.REL_CR and not r.search_exhausted


def test_normalization_examples():
    both = tup(F3, unip(F3, 3, (0, 1)), unip(F3, 3, (0, 2)))
    assert normalized_by_h(SL_BLOCK, associative_envelope(both))
    assert not normalized_by_h(SL_BLOCK, associative_envelope(tup(F3, unip(F3, 3, (0, 1)))))
    diag = tup(F3, Matrix.diagonal(F3, [1, 2, 2]))
    assert normalized_by_h(SL_BLOCK, associative_envelope(diag))


def test_inconclusive_when_radical_undecided():
    t = tup(GF(2), unip(GF(2), 3, (0, 1)))
    r = check_relcr(t, HSpec.full(3), budget=4)
    assert r.verdict is Verdict.INCONCLUSIVE


def test_search_pool_is_validated():
    with pytest.raises(Exception):
        check_relcr(JORDAN, HSpec.glu(2, [1]), "search", [Matrix.diagonal(F3, [2, 1])])


# irreducibility and the Levi condition

def test_irreducible_examples():
    assert is_rel_irreducible(SWAP, HSpec.glu(2, [1]))
    assert not is_rel_irreducible(tup(F3, Matrix.identity(F3, 2)), HSpec.glu(2, [0]))
    assert not is_rel_irreducible(JORDAN, HSpec.glu(2, [0]))
    assert is_rel_irreducible(JORDAN, HSpec.glu(2, []))


def test_irreducible_full_is_burnside():
    # a 3-cycle plus a transvection generate Mat_3 over GF(3)
    t = tup(F3, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], unip(F3, 3, (0, 1)))
    assert is_rel_irreducible(t, HSpec.full(3))
    assert not is_rel_irreducible(tup(F3, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]), HSpec.full(3))


def test_levi_condition_examples():
    assert levi_necessary_condition(tup(F3, Matrix.identity(F3, 2)), [[0], [1]])
    assert not levi_necessary_condition(JORDAN, [[0], [1]])
    assert levi_necessary_condition(SWAP, [[0], [1]])


# properties on random GLU instances

def random_instances(seed, count, fields=(F3,), dims=(2, 3)):
    rng = random.Random(seed)
    for _ in range(count):
        F = rng.choice(fields)
        n = rng.choice(dims)
        t = random_tuple(rng, F, n)
        u = [i for i in range(n) if rng.random() < 0.6]
        yield rng, t, HSpec.glu(n, u)


def test_irreducible_implies_relcr():
    hits = 0
    for _, t, h in random_instances(21, 150):
        if is_rel_irreducible(t, h):
            hits += 1
            assert check_relcr(t, h).verdict is Verdict.REL_CR
    assert hits > 5


def test_search_and_module_agree_on_glu():
    for _, t, h in random_instances(22, 120):
        m = check_relcr(t, h, "module")
        s = check_relcr(t, h, "search")
        assert m.verdict == s.verdict
        assert s.search_exhausted or s.verdict is Verdict.NOT_REL_CR


def test_kraft_reduction():
    for _, t, h in random_instances(23, 80):
        full = HSpec.full(t.dim)
        assert (check_relcr(t, full).verdict is Verdict.REL_CR) == is_semisimple_module(t)


def test_submodule_remark():
    # t semisimple and U stable: relatively cr iff the complement is stable too
    rng = random.Random(24)
    seen = set()
    for _ in range(300):
        n = rng.choice((2, 3))
        t = random_tuple(rng, F3, n)
        if not is_semisimple_module(t):
            continue
        for u in coordinate_subsets(n):
            U = Subspace.coordinate(F3, n, u)
            if not is_stable(t, U):
                continue
            Ut = Subspace.coordinate(F3, n, [i for i in range(n) if i not in u])
            rel = check_relcr(t, HSpec.glu(n, u)).verdict is Verdict.REL_CR
            assert rel == is_stable(t, Ut)
            seen.add(rel)
    assert seen == {True, False}


def test_certificates_replay():
    for _, t, h in random_instances(25, 120):
        for mode in ("module", "search"):
            r = check_relcr(t, h, mode)
            if r.verdict is Verdict.NOT_REL_CR:
                assert replay_destabilizer(t, r.destabilizer.cocharacter)
                assert r.destabilizer.limit == apply_limit(r.destabilizer.cocharacter, t)
            elif r.module is not None:
                assert replay_module_certificate(t, h, r.module.sigma, r.module.iota)


def test_tampered_certificates_rejected():
    h = HSpec.glu(2, [1])
    r = check_relcr(SWAP, h)
    assert not replay_module_certificate(SWAP, h, r.module.sigma, Subspace.span(F3, 2, [[1, 0]]))
    # (0, 1) does not destabilize: the Jordan block is not in its parabolic
    assert not replay_destabilizer(JORDAN, make_cocharacter(h, (0, 1)))


def test_witness_cocharacters_destabilize():
    for _, t, h in random_instances(26, 120):
        cond_i, cond_ii = failure_witnesses(t, h)
        for cond, ws in (("i", cond_i), ("ii", cond_ii)):
            for w in ws:
                lam = destabilizer_from_witness(h, cond, w)
                assert replay_destabilizer(t, lam)


def centralizing_elements(rng, t, h, count=2):
    """Random elements g of H commuting with every entry: g = P + z, P the projection onto the complement."""
    F, n = t.field, t.dim
    basis = h.lie_basis(F)
    if not basis:
        return []
    proj = Matrix.diagonal(F, [0 if i in h.u_coords else 1 for i in range(n)])
    rows, rhs = [], []
    for x in t.entries:
        target = (x @ proj - proj @ x).flat()
        cols = [b.commutator(x).flat() for b in basis]
        rows += [list(r) for r in zip(*cols)]
        rhs += list(target)
    sol = affine_solve(F, rows, rhs, n_unknowns=len(basis))
    out = []
    for _ in range(10 * count):
        coeffs = list(sol.witness)
        for d in sol.directions.basis:
            c = scalar(rng, F)
            coeffs = [a + c * b for a, b in zip(coeffs, d)]
        z = Matrix.zeros(F, n)
        for c, b in zip(coeffs, basis):
            z = z + b.scale(c)
        g = proj + z
        if g.is_invertible():
            out.append(g)
        if len(out) == count:
            break
    return out


def test_metamorphic_centralizer_extension():
    checked = 0
    for rng, t, h in random_instances(27, 150):
        gs = centralizing_elements(rng, t, h)
        for g in gs:
            assert all((g @ x - x @ g).is_zero() for x in t.entries)
        ext = t.with_entries(list(t.entries) + gs)
        if check_relcr(ext, h).verdict is Verdict.REL_CR:
            checked += 1
            assert check_relcr(t, h).verdict is Verdict.REL_CR
    assert checked > 10


def test_centralizer_algebra_is_semisimple_when_relcr():
    # the unit group of the centralizer algebra is reductive, so its radical vanishes
    hits = 0
    for _, t, h in random_instances(28, 150, fields=(F5, QQ), dims=(2, 3, 4)):
        if check_relcr(t, h).verdict is not Verdict.REL_CR:
            continue
        hits += 1
        F, n = t.field, t.dim
        zs = commutant(h, t)
        alg = _closure(F, n, [Matrix.identity(F, n)] + zs, zs, "assoc")
        assert radical(alg, "trace").is_zero()
    assert hits > 20


def test_monotone_centralizer_dimension():
    for rng, t, h in random_instances(29, 80):
        for lam in enumerate_destabilizer_candidates(h):
            if all(classify_membership(lam, x, t.kind).in_p for x in t.entries):
                assert centralizer_dim(h, apply_limit(lam, t)) >= centralizer_dim(h, t)


def test_choose_destabilizer_order():
    # U = <e0>: sigma = <e0> meets iota = V, so condition (i) fails first
    h = HSpec.glu(2, [0])
    assert choose_destabilizer(JORDAN, h, "i")[0] == "i"
    # U = <e1>: sigma = 0 and iota = <e0>, only condition (ii) fails
    h = HSpec.glu(2, [1])
    assert choose_destabilizer(JORDAN, h, "i")[0] == "ii"
    assert choose_destabilizer(SWAP, h) is None
