import random
from fractions import Fraction
from math import gcd

from relcr.cocharacter import Membership, classify_membership
from relcr.kempf import (ALREADY_IN_TARGET, NOT_UNSTABLE, OPTIMAL, brute_force_optimal,
                         optimal_destabilizing_cocharacter, quality, weight_components)
from relcr.linalg import GF, QQ, Matrix
from relcr.structures import GeneratorTuple, HSpec

F3 = GF(3)


def lie(F, *mats):
    return GeneratorTuple.make(F, "lie", mats)


def test_single_root_vector():
    r = optimal_destabilizing_cocharacter(lie(QQ, [[0, 1], [0, 0]]), HSpec.full(2))
    assert r.status == OPTIMAL
    assert r.lambda_opt.weights == (1, -1)
    assert r.value == 2
    assert r.parabolic_fingerprint == ((0,), (1,))


def test_zero_tuple_already_in_target():
    r = optimal_destabilizing_cocharacter(lie(QQ, [[0, 0], [0, 0]]), HSpec.full(2))
    assert r.status == ALREADY_IN_TARGET and r.lambda_opt is None


def test_opposite_roots_not_unstable():
    r = optimal_destabilizing_cocharacter(lie(QQ, [[0, 1], [1, 0]]), HSpec.full(2))
    assert r.status == NOT_UNSTABLE


def test_diagonal_component_not_unstable():
    r = optimal_destabilizing_cocharacter(lie(F3, [[1, 1], [0, 0]]), HSpec.full(2))
    assert r.status == NOT_UNSTABLE


def test_group_kind_uses_x_minus_identity():
    t = GeneratorTuple.make(F3, "group", [[[1, 1], [0, 1]]])
    r = optimal_destabilizing_cocharacter(t, HSpec.full(2))
    assert r.lambda_opt.weights == (1, -1)
    assert optimal_destabilizing_cocharacter(GeneratorTuple.make(F3, "group", [Matrix.identity(F3, 2)]),
                                             HSpec.full(2)).status == ALREADY_IN_TARGET


def test_regular_nilpotent_gl3():
    r = optimal_destabilizing_cocharacter(lie(F3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]]), HSpec.full(3))
    assert r.lambda_opt.weights == (1, 0, -1)
    assert r.value == Fraction(1, 2)


def test_hspec_constraints_respected():
    # pinned coordinate 0 must keep weight 0
    t = lie(QQ, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    r = optimal_destabilizing_cocharacter(t, HSpec.glu(3, [1, 2]))
    assert r.lambda_opt.weights[0] == 0
    assert r.lambda_opt.weights == (0, -1, 0)
    assert r.value == 1
    # E_01 and E_20 with H = GL on {1, 2}: d_1 <= -1 and d_2 >= 1 are compatible
    t = lie(QQ, [[0, 1, 0], [0, 0, 0], [1, 0, 0]])
    r = optimal_destabilizing_cocharacter(t, HSpec.glu(3, [1, 2]))
    assert r.lambda_opt.weights == (0, -1, 1)
    # with nothing free, nothing destabilizes
    assert optimal_destabilizing_cocharacter(t, HSpec.glu(3, [])).status == NOT_UNSTABLE


def test_det_one_block():
    t = lie(QQ, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    r = optimal_destabilizing_cocharacter(t, HSpec.levi(3, [[0, 1, 2]], [True]))
    assert r.lambda_opt.weights == (1, -1, 0)
    assert sum(r.lambda_opt.weights) == 0


def random_support_tuple(rng, n, F=F3):
    k = rng.randint(1, 3)
    mats = []
    for _ in range(k):
        rows = [[rng.randrange(F.p) if i != j and rng.random() < 0.3 else 0 for j in range(n)] for i in range(n)]
        mats.append(rows)
    return lie(F, *mats)


def test_optimal_against_oracle_and_invariants():
    rng = random.Random(41)
    hs = {2: [HSpec.full(2)], 3: [HSpec.full(3), HSpec.glu(3, [0, 2]), HSpec.levi(3, [[0, 1, 2]], [True])],
          4: [HSpec.full(4), HSpec.levi(4, [[0, 1], [2, 3]], [True, False])]}
    checked = 0
    for _ in range(150):
        n = rng.choice((2, 3, 4))
        t = random_support_tuple(rng, n)
        h = rng.choice(hs[n])
        r = optimal_destabilizing_cocharacter(t, h)
        best = brute_force_optimal(t, h)
        if r.status != OPTIMAL:
            # the oracle may still find nothing; it never beats "not unstable"
            assert best is None
            continue
        w = r.lambda_opt.weights
        g = 0
        for v in w:
            g = gcd(g, v)
        assert g == 1 and r.value > 0
        for x in t.entries:
            if x.is_zero():
                continue
            assert classify_membership(r.lambda_opt, x, "lie") is Membership.IN_RU
        assert best is not None and best[0] <= r.value
        if max(abs(v) for v in w) <= 6:
            checked += 1
            assert best == (r.value, w)
        for m in (2, 3):
            assert quality(weight_components(t), [m * v for v in w]) == r.value
    assert checked > 30


def test_permutation_equivariance():
    rng = random.Random(43)
    n = 3
    h = HSpec.full(n)
    for _ in range(60):
        t = random_support_tuple(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        p = Matrix(F3, [[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)])
        tp = t.conjugate(p)
        a = optimal_destabilizing_cocharacter(t, h)
        b = optimal_destabilizing_cocharacter(tp, h)
        assert a.status == b.status
        if a.status == OPTIMAL:
            moved = [0] * n
            for j in range(n):
                moved[perm[j]] = a.lambda_opt.weights[j]
            assert tuple(moved) == b.lambda_opt.weights
            assert a.value == b.value


def test_json():
    d = optimal_destabilizing_cocharacter(lie(QQ, [[0, 1], [0, 0]]), HSpec.full(2)).to_json()
    assert d == {"status": "optimal", "lambda": [1, -1], "value": "2", "fingerprint": [[0], [1]]}
