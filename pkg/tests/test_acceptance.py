"""The eight acceptance checks, each printing one PASS/FAIL line."""

import random
import time
from itertools import product

import pytest

from relcr.cocharacter import apply_limit, limit_matrix, make_cocharacter, tuple_in_parabolic
from relcr.corpus import jordan_block, sl_block_example
from relcr.kempf import OPTIMAL, brute_force_optimal, optimal_destabilizing_cocharacter, weight_components
from relcr.linalg import GF, Matrix
from relcr.modules import associative_envelope, centralizer_dim, is_semisimple_module, radical
from relcr.oracle import brute_force_relcr, brute_force_semisimple
from relcr.relcr import Verdict, check_relcr, check_relcr_complements, exists_restoring_mu
from relcr.semisimplify import final_invariants, semisimplify
from relcr.structures import GeneratorTuple, HSpec

from instances import oracle_instances, oracle_tuples, random_invertible

F3 = GF(3)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail
    return emit


def test_1_sl_block_example(report):
    start = time.perf_counter()
    h, both, first, second = sl_block_example()
    r_both = check_relcr(both, h, "search")
    r1 = check_relcr(first, h, "search")
    r2 = check_relcr(second, h, "search")
    elapsed = time.perf_counter() - start
    ok = (r_both.verdict is Verdict.REL_CR
          and r1.verdict is Verdict.NOT_REL_CR and r1.destabilizer.cocharacter.weights == (0, -1, 1)
          and r2.verdict is Verdict.NOT_REL_CR and r2.destabilizer.cocharacter.weights == (0, 1, -1)
          and elapsed < 1.0)
    report(1, ok, f"{r_both.verdict.value}, {r1.destabilizer.cocharacter.weights}, "
                  f"{r2.destabilizer.cocharacter.weights}, {elapsed:.3f}s")


@pytest.fixture(scope="module")
def oracle_run():
    """Module verdict and oracle verdict on every instance, timed together."""
    instances = oracle_instances()
    start = time.perf_counter()
    rows = [(t, h, check_relcr(t, h).verdict is Verdict.REL_CR, brute_force_relcr(t, h)) for t, h in instances]
    return rows, time.perf_counter() - start


def test_2_oracle_equivalence(report, oracle_run):
    rows, elapsed = oracle_run
    bad = [(t, h) for t, h, a, b in rows if a != b]
    dims = sorted({t.dim for t, *_ in rows})
    report(2, not bad and elapsed < 300, f"{len(rows)} instances, dims {dims}, "
                                          f"{len(bad)} disagreements, {elapsed:.1f}s")


def test_3_criterion_forms_agree(report, oracle_run):
    rows, _ = oracle_run
    bad = sum(check_relcr_complements(t, h) != a for t, h, a, _ in rows)
    report(3, bad == 0, f"{len(rows)} instances, {bad} disagreements")


def test_4_kraft_reduction(report):
    tuples = oracle_tuples()
    bad = 0
    for t in tuples:
        a = check_relcr(t, HSpec.full(t.dim)).verdict is Verdict.REL_CR
        b = is_semisimple_module(t)
        c = brute_force_semisimple(t)
        bad += not (a == b == c)
    report(4, bad == 0, f"{len(tuples)} tuples, {bad} disagreements")


def _parabolic_element(rng, lam, n, group):
    while True:
        rows = [[rng.randrange(3) if lam.weights[i] - lam.weights[j] >= 0 else 0 for j in range(n)]
                for i in range(n)]
        x = lam.from_frame(Matrix(F3, rows))
        if not group or x.is_invertible():
            return x


def _levi_element(rng, lam, n):
    while True:
        rows = [[rng.randrange(3) if lam.weights[i] == lam.weights[j] else 0 for j in range(n)] for i in range(n)]
        x = lam.from_frame(Matrix(F3, rows))
        if x.is_invertible():
            return x


def _random_unipotent_radical(rng, lam, n):
    u = Matrix.identity(F3, n)
    for e in lam.positive_lie_basis(F3):
        u = u + e.scale(rng.randrange(3))
    return lam.from_frame(u)


def _random_pair(rng):
    n = rng.randint(2, 4)
    choice = rng.random()
    if choice < 0.5:
        h = HSpec.full(n)
    else:
        h = HSpec.glu(n, sorted(rng.sample(range(n), rng.randint(1, n))))
    free = set(h.u_coords)
    weights = [rng.randint(-2, 2) if i in free else 0 for i in range(n)]
    g = None
    if rng.random() < 0.4 and h.kind == "full":
        g = random_invertible(rng, F3, n)
    lam = make_cocharacter(h, weights, g)
    k = rng.randint(1, 3)
    if rng.random() < 0.5:
        # a Levi tuple moved by R_u(P): the limit is conjugate to it
        u = _random_unipotent_radical(rng, lam, n)
        t = GeneratorTuple.make(F3, "group", [_levi_element(rng, lam, n) for _ in range(k)]).conjugate(u)
    else:
        t = GeneratorTuple.make(F3, "group", [_parabolic_element(rng, lam, n, True) for _ in range(k)])
    return h, lam, t


def test_5_limit_homomorphism_and_monotonicity(report):
    rng = random.Random(5005)
    hom_bad = mono_bad = eq_bad = equal = 0
    for _ in range(500):
        h, lam, t = _random_pair(rng)
        assert tuple_in_parabolic(lam, t)
        xs = list(t.entries)
        for x in xs:
            for y in xs:
                if limit_matrix(lam, x @ y) != limit_matrix(lam, x) @ limit_matrix(lam, y):
                    hom_bad += 1
        lim = apply_limit(lam, t)
        before, after = centralizer_dim(h, t), centralizer_dim(h, lim)
        mono_bad += after < before
        equal += after == before
        eq_bad += (after == before) != exists_restoring_mu(lam, t, h)
    ok = hom_bad == mono_bad == eq_bad == 0
    report(5, ok, f"500 pairs ({equal} with equal dims); violations: homomorphism {hom_bad}, "
                  f"monotonicity {mono_bad}, equality criterion {eq_bad}")


def test_6_jordan_semisimplification(report):
    bad = []
    for k in range(1, 6):
        t = GeneratorTuple.make(F3, "group", [jordan_block(F3, k)])
        h = HSpec.full(k)
        a = semisimplify(t, h)
        b = semisimplify(t, h, prefer="ii")
        ok = (len(a.steps) <= k - 1 and all(s.after_dim > s.before_dim for s in a.steps)
              and a.final.is_trivial() and final_invariants(a, h) == final_invariants(b, h))
        if not ok:
            bad.append(k)
    report(6, not bad, f"k = 1..5, failing k: {bad}")


def test_7_kempf(report):
    r = optimal_destabilizing_cocharacter(GeneratorTuple.make(F3, "lie", [[[0, 1], [0, 0]]]), HSpec.full(2))
    first = r.status == OPTIMAL and r.lambda_opt.weights == (1, -1) and r.value == 2
    h = HSpec.full(3)
    upper = [Matrix(F3, [[0, a, b], [0, 0, c], [0, 0, 0]]) for a, b, c in product(range(3), repeat=3)]
    memo = {}
    count = bad = 0
    for length in (1, 2, 3):
        for mats in product(upper, repeat=length):
            t = GeneratorTuple(F3, 3, "lie", mats)
            key = tuple(weight_components(t))
            if key not in memo:
                memo[key] = brute_force_optimal(t, h)
            expect = memo[key]
            got = optimal_destabilizing_cocharacter(t, h)
            count += 1
            if expect is None:
                bad += got.status == OPTIMAL
            else:
                bad += got.status != OPTIMAL or (got.value, got.lambda_opt.weights) != expect
    report(7, first and bad == 0, f"E_12 -> {r.lambda_opt.weights} value {r.value}; "
                                  f"{count} upper-triangular tuples, {bad} mismatches")


def test_8_radical_methods_agree(report):
    rng = random.Random(8008)
    bad = 0
    for _ in range(200):
        gens = [Matrix(F3, [[rng.randrange(3) for _ in range(2)] for _ in range(2)])
                for _ in range(rng.randint(1, 2))]
        a = associative_envelope(GeneratorTuple(F3, 2, "assoc", tuple(gens)))
        if radical(a, "trace").space != radical(a, "lattice").space:
            bad += 1
    report(8, bad == 0, f"200 subalgebras of Mat_2(GF(3)), {bad} disagreements")
