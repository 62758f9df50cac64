"""Degenerate a tuple step by step to a relatively completely reducible limit."""

from __future__ import annotations

from dataclasses import dataclass

from .cocharacter import WeightedCocharacter, apply_limit, tuple_in_parabolic
from .modules import centralizer_dim
from .oracle import DEFAULT_BUDGET
from .relcr import RelCrReport, Verdict, check_relcr, choose_destabilizer
from .structures import GeneratorTuple, HSpec


@dataclass(frozen=True)
class Step:
    cocharacter: WeightedCocharacter
    condition: str
    before_dim: int
    after_dim: int


@dataclass(frozen=True)
class SemisimplifyTrace:
    steps: tuple
    final: GeneratorTuple
    final_report: RelCrReport

    def to_json(self) -> dict:
        return {
            "steps": [dict(s.cocharacter.to_json(), condition=s.condition,
                           before_dim=s.before_dim, after_dim=s.after_dim) for s in self.steps],
            "final": [m.tolist() for m in self.final.entries],
            "final_verdict": self.final_report.verdict.value,
        }


def semisimplify(t: GeneratorTuple, h: HSpec, prefer: str = "i", radical_method: str = "auto",
                 budget: int = DEFAULT_BUDGET) -> SemisimplifyTrace:
    """Apply explicit destabilizers until the tuple is relatively cr for H = GL(U).

    Each step picks the smallest submodule at which a complement condition
    fails (condition ``prefer`` first) and takes the limit along the matching
    two-level cocharacter.  The centralizer dimension strictly increases, so
    at most dim H steps are taken.
    """
    if h.kind == "levi":
        raise ValueError("semisimplify needs H = GL(U)")
    steps = []
    cur = t
    for _ in range(h.lie_dim() + 1):
        found = choose_destabilizer(cur, h, prefer, radical_method, budget)
        if found is None:
            break
        cond, _, lam = found
        if not tuple_in_parabolic(lam, cur):
            raise RuntimeError("destabilizer does not contain the tuple in its parabolic")
        before = centralizer_dim(h, cur)
        cur = apply_limit(lam, cur)
        after = centralizer_dim(h, cur)
        if after <= before:
            raise RuntimeError(f"centralizer dimension did not grow ({before} -> {after})")
        steps.append(Step(lam, cond, before, after))
    else:
        raise RuntimeError("semisimplification did not terminate within dim H steps")
    report = check_relcr(cur, h, "module", radical_method=radical_method, budget=budget)
    if report.verdict is not Verdict.REL_CR:
        raise RuntimeError("final tuple is not relatively cr")
    return SemisimplifyTrace(tuple(steps), cur, report)


def final_invariants(trace: SemisimplifyTrace, h: HSpec) -> tuple:
    """Conjugacy-invariant shadow of the final class: (dim C_H, sorted {dim sigma, dim iota})."""
    mw = trace.final_report.module
    return centralizer_dim(h, trace.final), tuple(sorted((mw.sigma.dim, mw.iota.dim)))


def replay_trace(t: GeneratorTuple, h: HSpec, trace: SemisimplifyTrace) -> bool:
    """Re-run the recorded limits and check containment and dimension growth at every step."""
    cur = t
    for s in trace.steps:
        if not tuple_in_parabolic(s.cocharacter, cur):
            return False
        if centralizer_dim(h, cur) != s.before_dim:
            return False
        cur = apply_limit(s.cocharacter, cur)
        if centralizer_dim(h, cur) != s.after_dim or s.after_dim <= s.before_dim:
            return False
    return cur == trace.final
