"""Command-line front end: ``python -m relcr <command> problem.json``.

Exit codes: 0 verdict computed (or certificate valid), 1 failed corpus case
or invalid certificate, 2 input error, 3 inconclusive or over budget.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cocharacter import make_cocharacter
from .errors import BudgetExceeded, NotInH, RadicalUndecided, UnsupportedHSpec
from .kempf import optimal_destabilizing_cocharacter
from .modules import associative_envelope, module_radical, radical
from .oracle import DEFAULT_BUDGET, brute_force_relcr, brute_force_semisimple
from .problem import (ProblemError, cocharacter_json, dumps, extract_cert, load_problem, matrix_json,
                      parse_matrix, parse_pool, parse_problem, loads_json, subspace_json,
                      text_report, tuple_json)
from .relcr import (Verdict, check_relcr, is_rel_irreducible, replay_destabilizer,
                    replay_module_certificate)
from .semisimplify import semisimplify

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v).replace(" ", "")


def _emit(args, lines, cert, out):
    if args.format == "json":
        out.write(dumps(cert) + "\n")
    else:
        out.write(text_report(lines, cert))


def _problem_head(command, prob):
    head = {"command": command, "problem": tuple_json(prob.tuple)}
    if prob.h is not None:
        head["problem"]["h"] = prob.h.to_json()
    return head


def _need_glu(prob, what):
    if prob.h.kind == "levi":
        raise InputError(f"{what} needs h of type full or glu")


def _budget(args, prob):
    return args.max_dim_budget or prob.options.get("budget", DEFAULT_BUDGET)


def _report_json(rep):
    d = {"verdict": rep.verdict.value, "mode": rep.mode, "search_exhausted": rep.search_exhausted,
         "notes": list(rep.notes)}
    if rep.destabilizer is not None:
        d["destabilizer"] = dict(cocharacter_json(rep.destabilizer.cocharacter),
                                 limit=[matrix_json(x) for x in rep.destabilizer.limit.entries],
                                 reason=rep.destabilizer.reason)
    if rep.module is not None:
        m = rep.module
        d["module"] = {"sigma": subspace_json(m.sigma), "iota": subspace_json(m.iota),
                       "sigma_semisimple": m.sigma_semisimple, "direct_sum": m.direct_sum}
    return d


def _report_lines(d):
    lines = [f"verdict: {d['verdict']}", f"mode: {d['mode']}",
             f"search_exhausted: {_fmt(d['search_exhausted'])}"]
    if "module" in d:
        m = d["module"]
        lines += [f"sigma: {_fmt(m['sigma'])}", f"iota: {_fmt(m['iota'])}",
                  f"sigma_semisimple: {_fmt(m['sigma_semisimple'])}", f"direct_sum: {_fmt(m['direct_sum'])}"]
    if "destabilizer" in d:
        ds = d["destabilizer"]
        lines += [f"destabilizer: {_fmt(ds['weights'])}", f"conjugator: {_fmt(ds['conjugator'])}",
                  f"limit: {_fmt(ds['limit'])}", f"reason: {ds['reason']}"]
    lines += [f"note: {n}" for n in d["notes"]]
    return lines


def cmd_check(args, out):
    prob = load_problem(args.problem)
    mode = args.mode or prob.options.get("mode") or ("search" if prob.h.kind == "levi" else "module")
    if mode not in ("module", "search"):
        raise InputError(f"unknown mode {mode!r}")
    if mode == "module":
        _need_glu(prob, "the module criterion")
    pool = prob.pool
    if args.pool:
        pool = _load_pool(args.pool, prob)
    rep = check_relcr(prob.tuple, prob.h, mode, pool, prob.options.get("radical", "auto"), _budget(args, prob))
    d = _report_json(rep)
    cert = dict(_problem_head("check", prob), **d)
    _emit(args, ["command: check"] + _report_lines(d), cert, out)
    return EXIT_INCONCLUSIVE if rep.verdict is Verdict.INCONCLUSIVE else EXIT_OK


def _load_pool(path, prob):
    src = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemError(f"cannot read file: {e.strerror}", src) from None
    obj = loads_json(text, src)
    if isinstance(obj, dict):
        obj = obj.get("pool")
    return parse_pool(prob.tuple.field, obj, prob.tuple.dim, prob.h, src)


def cmd_irr(args, out):
    prob = load_problem(args.problem)
    _need_glu(prob, "relative irreducibility")
    res = is_rel_irreducible(prob.tuple, prob.h)
    cert = dict(_problem_head("irr", prob), rel_irreducible=res)
    _emit(args, ["command: irr", f"rel_irreducible: {_fmt(res)}"], cert, out)
    return EXIT_OK


def cmd_kraft(args, out):
    prob = load_problem(args.problem, require_h=False)
    method = prob.options.get("radical", "auto")
    budget = _budget(args, prob)
    rad = radical(associative_envelope(prob.tuple), method, budget)
    res = rad.is_zero()
    jv = module_radical(prob.tuple, method, budget)
    cert = dict(_problem_head("kraft", prob), semisimple=res, radical_method=rad.method,
                radical_dim=rad.space.dim, module_radical=subspace_json(jv))
    lines = ["command: kraft", f"semisimple: {_fmt(res)}", f"radical_method: {rad.method}",
             f"radical_dim: {rad.space.dim}", f"module_radical: {_fmt(subspace_json(jv))}"]
    _emit(args, lines, cert, out)
    return EXIT_OK


def cmd_semisimplify(args, out):
    prob = load_problem(args.problem)
    _need_glu(prob, "semisimplify")
    prefer = args.prefer or prob.options.get("prefer", "i")
    tr = semisimplify(prob.tuple, prob.h, prefer, prob.options.get("radical", "auto"), _budget(args, prob))
    d = tr.to_json()
    d["steps"] = [dict(s, conjugator=None if st.cocharacter.conjugator is None else matrix_json(st.cocharacter.conjugator))
                  for s, st in zip(d["steps"], tr.steps)]
    d["final"] = [matrix_json(x) for x in tr.final.entries]
    cert = dict(_problem_head("semisimplify", prob), **d)
    lines = ["command: semisimplify", f"steps: {len(tr.steps)}"]
    for k, s in enumerate(d["steps"]):
        lines.append(f"step {k + 1}: weights {_fmt(s['weights'])} condition ({s['condition']}) "
                     f"dim C_H {s['before_dim']} -> {s['after_dim']}")
    lines += [f"final: {_fmt(d['final'])}", f"final_verdict: {d['final_verdict']}"]
    _emit(args, lines, cert, out)
    return EXIT_OK


def cmd_optimal(args, out):
    prob = load_problem(args.problem)
    res = optimal_destabilizing_cocharacter(prob.tuple, prob.h)
    d = res.to_json()
    cert = dict(_problem_head("optimal", prob), **d)
    lines = ["command: optimal", f"status: {d['status']}", f"lambda: {_fmt(d['lambda'])}",
             f"value: {_fmt(d['value'])}", f"fingerprint: {_fmt(d['fingerprint'])}"]
    _emit(args, lines, cert, out)
    return EXIT_OK


def cmd_oracle(args, out):
    prob = load_problem(args.problem, require_h=False)
    budget = _budget(args, prob)
    ss = brute_force_semisimple(prob.tuple, budget)
    cert = dict(_problem_head("oracle", prob), semisimple=ss)
    lines = ["command: oracle", f"semisimple: {_fmt(ss)}"]
    if prob.h is not None and prob.h.kind != "levi":
        rc = brute_force_relcr(prob.tuple, prob.h, budget)
        cert["relcr"] = rc
        lines.append(f"relcr: {_fmt(rc)}")
    _emit(args, lines, cert, out)
    return EXIT_OK


def cmd_examples(args, out):
    from .corpus import run_corpus

    results = run_corpus()
    failed = 0
    lines = []
    for name, ok, detail in results:
        failed += not ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}" + (f" [{detail}]" if detail and not ok else ""))
    lines.append(f"{len(results) - failed}/{len(results)} passed")
    cert = {"command": "examples", "results": [{"name": n, "passed": ok} for n, ok, _ in results]}
    _emit(args, lines, cert, out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify_cert(args, out):
    src = str(args.problem)
    try:
        text = Path(args.problem).read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemError(f"cannot read file: {e.strerror}", src) from None
    cert = extract_cert(text, src)
    if not isinstance(cert, dict) or cert.get("command") != "check" or "problem" not in cert:
        raise ProblemError("not a check certificate", src)
    prob = parse_problem(cert["problem"], src)
    t, h = prob.tuple, prob.h
    verdict = cert.get("verdict")
    if verdict == "NotRelCR":
        ds = cert.get("destabilizer")
        if not isinstance(ds, dict):
            raise ProblemError("NotRelCR certificate without destabilizer", src, where="destabilizer")
        g = None
        if ds.get("conjugator") is not None:
            g = parse_matrix(t.field, ds["conjugator"], "destabilizer.conjugator", src, t.dim)
        try:
            lam = make_cocharacter(h, ds.get("weights", []), g)
        except NotInH as e:
            raise ProblemError(str(e), src, where="destabilizer") from None
        valid = replay_destabilizer(t, lam)
        what = "destabilizer"
    elif verdict == "RelCR" and "module" in cert:
        m = cert["module"]
        F, n = t.field, t.dim
        from .linalg import Subspace

        def space(key):
            rows = m.get(key)
            if not isinstance(rows, list):
                raise ProblemError(f"missing {key}", src, where=f"module.{key}")
            return Subspace.span(F, n, [[F(v) for v in r] for r in rows])

        valid = replay_module_certificate(t, h, space("sigma"), space("iota"))
        what = "module decomposition"
    else:
        _emit(args, ["command: verify-cert", f"verdict: {verdict}", "replay: not applicable"],
              {"command": "verify-cert", "verdict": verdict, "valid": None}, out)
        return EXIT_OK
    _emit(args, ["command: verify-cert", f"verdict: {verdict}", f"replayed: {what}", f"valid: {_fmt(valid)}"],
          {"command": "verify-cert", "verdict": verdict, "valid": valid}, out)
    return EXIT_OK if valid else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-dim-budget", type=int, default=None,
                        help="largest q^n a brute-force or lattice computation may enumerate")
    p = argparse.ArgumentParser(prog="relcr", description="Relative complete reducibility for subgroups of GL_n.")
    sub = p.add_subparsers(dest="command", required=True)
    specs = [
        ("check", cmd_check, "decide relative complete reducibility"),
        ("irr", cmd_irr, "decide relative irreducibility"),
        ("kraft", cmd_kraft, "semisimplicity of the natural module"),
        ("semisimplify", cmd_semisimplify, "degenerate to a relatively cr limit"),
        ("optimal", cmd_optimal, "optimal destabilizing cocharacter (trivial limit)"),
        ("oracle", cmd_oracle, "brute-force answers over a small finite field"),
        ("verify-cert", cmd_verify_cert, "replay a check certificate"),
    ]
    for name, fn, helptext in specs:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("problem", help="problem JSON file (certificate file for verify-cert)")
        sp.set_defaults(func=fn)
        if name == "check":
            sp.add_argument("--mode", choices=("module", "search"))
            sp.add_argument("--pool", help="JSON file with an array of conjugators in H")
        if name == "semisimplify":
            sp.add_argument("--prefer", choices=("i", "ii"))
    ex = sub.add_parser("examples", parents=[common], help="run the built-in regression cases")
    ex.set_defaults(func=cmd_examples)
    return p


def run_command(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.max_dim_budget is not None and args.max_dim_budget < 1:
        err.write("error: --max-dim-budget must be positive\n")
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (ProblemError, InputError, UnsupportedHSpec, NotInH) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT
    except (BudgetExceeded, RadicalUndecided) as e:
        err.write(f"inconclusive: {e}\n")
        return EXIT_INCONCLUSIVE


def main():
    sys.exit(run_command())
