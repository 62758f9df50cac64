"""Built-in regression cases with known answers."""

from __future__ import annotations

from fractions import Fraction

from .cocharacter import make_cocharacter
from .kempf import optimal_destabilizing_cocharacter
from .linalg import GF, Matrix
from .relcr import Verdict, check_relcr, exists_restoring_mu, is_rel_irreducible
from .semisimplify import final_invariants, semisimplify
from .structures import GeneratorTuple, HSpec


def _unipotent(F, n, *positions):
    m = Matrix.identity(F, n)
    return [m + Matrix.unit(F, n, i, j) for i, j in positions]


def jordan_block(F, k: int) -> Matrix:
    return Matrix(F, [[1 if j in (i, i + 1) else 0 for j in range(k)] for i in range(k)])


def sl_block_example():
    """GL_3 with H = SL_2 on coordinates 1, 2 and coordinate 0 fixed."""
    F = GF(3)
    h = HSpec.levi(3, [[1, 2]], [True])
    both = GeneratorTuple.make(F, "group", _unipotent(F, 3, (0, 1), (0, 2)))
    first = GeneratorTuple.make(F, "group", _unipotent(F, 3, (0, 1)))
    second = GeneratorTuple.make(F, "group", _unipotent(F, 3, (0, 2)))
    return h, both, first, second


def _case_sl_block():
    h, both, first, second = sl_block_example()
    out = []
    r = check_relcr(both, h, "search")
    out.append(("sl-block: both root groups are relatively cr",
                r.verdict is Verdict.REL_CR and r.search_exhausted, r.verdict.value))
    for name, t, want in (("first", first, (0, -1, 1)), ("second", second, (0, 1, -1))):
        r = check_relcr(t, h, "search")
        got = r.destabilizer.cocharacter.weights if r.destabilizer else None
        out.append((f"sl-block: {name} root group destabilized by {want}",
                    r.verdict is Verdict.NOT_REL_CR and got == want, f"{r.verdict.value} {got}"))
    lam = make_cocharacter(h, (0, 1, -1))
    ok = not exists_restoring_mu(lam, second, h)
    out.append(("sl-block: no restoring mu for (0, 1, -1)", ok, str(not ok)))
    return out


def _case_jordan():
    F = GF(3)
    out = []
    for k in range(2, 6):
        t = GeneratorTuple.make(F, "group", [jordan_block(F, k)])
        h = HSpec.full(k)
        r = check_relcr(t, h)
        tr = semisimplify(t, h)
        tr2 = semisimplify(t, h, prefer="ii")
        dims = [s.after_dim > s.before_dim for s in tr.steps]
        ok = (r.verdict is Verdict.NOT_REL_CR and len(tr.steps) <= k - 1 and all(dims)
              and tr.final.is_trivial() and final_invariants(tr, h) == final_invariants(tr2, h))
        out.append((f"jordan J_{k} over GF(3): not cr, semisimplifies to the identity", ok,
                    f"{r.verdict.value}, {len(tr.steps)} steps"))
    return out


def _case_small():
    F = GF(3)
    jordan = GeneratorTuple.make(F, "group", [[[1, 1], [0, 1]]])
    swap = GeneratorTuple.make(F, "group", [[[0, 1], [1, 0]]])
    out = []
    r = check_relcr(jordan, HSpec.glu(2, [1]))
    out.append(("jordan GF(3), U = <e2>: not relatively cr",
                r.verdict is Verdict.NOT_REL_CR and r.destabilizer.cocharacter.weights == (0, -1), r.verdict.value))
    r = check_relcr(swap, HSpec.glu(2, [1]))
    out.append(("swap GF(3), U = <e2>: relatively cr", r.verdict is Verdict.REL_CR, r.verdict.value))
    out.append(("swap GF(3), U = <e2>: relatively irreducible", is_rel_irreducible(swap, HSpec.glu(2, [1])), ""))
    e12 = GeneratorTuple.make(F, "lie", [[[0, 1], [0, 0]]])
    res = optimal_destabilizing_cocharacter(e12, HSpec.full(2))
    ok = res.lambda_opt is not None and res.lambda_opt.weights == (1, -1) and res.value == Fraction(2)
    out.append(("optimal cocharacter of E_12 is (1, -1) with value 2", ok, str(res.value)))
    return out


def run_corpus():
    """List of (name, passed, detail)."""
    return _case_sl_block() + _case_jordan() + _case_small()
