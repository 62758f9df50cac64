"""Problem files and report serialization.

A problem is one JSON object::

    {"field": "GF(3)", "kind": "group",
     "generators": [[[1, 1], [0, 1]]],
     "h": {"type": "glu", "u": [1]},
     "pool": [...], "options": {"mode": "module"}}

``field`` is ``"GF(p)"`` or ``"Q"``; rationals are written as ``"a/b"``
strings.  ``h`` is ``{"type": "full"}``, ``{"type": "glu", "u": [...]}`` or
``{"type": "levi", "blocks": [[...], ...], "det_one": [...]}`` with zero-based
coordinates.  ``dim`` is optional and checked against the matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from .errors import NotInH
from .linalg import Field, GF, Matrix, QQ, Subspace
from .structures import KINDS, GeneratorTuple, HSpec


class ProblemError(ValueError):
    """Malformed problem input, with a location."""

    def __init__(self, message: str, source: str = "<input>", line: int | None = None,
                 col: int | None = None, where: str | None = None):
        self.message = message
        self.source = source
        self.line = line
        self.col = col
        self.where = where
        super().__init__(str(self))

    def __str__(self):
        loc = self.source
        if self.line is not None:
            loc += f":{self.line}:{self.col}"
        if self.where:
            loc += f": at {self.where}"
        return f"{loc}: {self.message}"


@dataclass(frozen=True)
class Problem:
    tuple: GeneratorTuple
    h: HSpec | None
    pool: list | None = None
    options: dict = dc_field(default_factory=dict)


def parse_field(desc) -> Field:
    if not isinstance(desc, str):
        raise ValueError("field must be a string such as \"GF(3)\" or \"Q\"")
    s = desc.strip().replace(" ", "")
    if s in ("Q", "QQ"):
        return QQ
    if s.upper().startswith("GF(") and s.endswith(")"):
        try:
            return GF(int(s[3:-1]))
        except ValueError as e:
            raise ValueError(f"bad field {desc!r}: {e}") from None
    raise ValueError(f"unknown field {desc!r}")


def field_name(F: Field) -> str:
    return f"GF({F.p})" if F.is_finite else "Q"


def _scalar(F: Field, v, where: str, source: str):
    if isinstance(v, bool):
        raise ProblemError("booleans are not field elements", source, where=where)
    if F.is_finite:
        if not isinstance(v, int):
            raise ProblemError(f"GF({F.p}) entries must be integers, got {v!r}", source, where=where)
        return F(v)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ProblemError(f"cannot read rational {v!r}", source, where=where) from None
    raise ProblemError(f"rational entries must be integers or \"a/b\" strings, got {v!r}", source, where=where)


def parse_matrix(F: Field, m, where: str, source: str = "<input>", n: int | None = None) -> Matrix:
    if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
        raise ProblemError("a matrix must be a non-empty array of row arrays", source, where=where)
    size = len(m) if n is None else n
    if len(m) != size:
        raise ProblemError(f"expected {size} rows, got {len(m)}", source, where=where)
    rows = []
    for i, r in enumerate(m):
        if len(r) != size:
            raise ProblemError(f"row {i} has {len(r)} entries, expected {size}", source, where=f"{where}[{i}]")
        rows.append([_scalar(F, v, f"{where}[{i}][{j}]", source) for j, v in enumerate(r)])
    return Matrix(F, rows)


def parse_hspec(d, n: int, source: str = "<input>") -> HSpec:
    if not isinstance(d, dict) or "type" not in d:
        raise ProblemError("h must be an object with a \"type\" key", source, where="h")
    typ = d["type"]

    def coords(v, where):
        if not isinstance(v, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in v):
            raise ProblemError("coordinates must be an array of integers", source, where=where)
        bad = [i for i in v if not 0 <= i < n]
        if bad:
            raise ProblemError(f"coordinate {bad[0]} out of range 0..{n - 1}", source, where=where)
        return v

    try:
        if typ == "full":
            return HSpec.full(n)
        if typ == "glu":
            return HSpec.glu(n, coords(d.get("u"), "h.u"))
        if typ == "levi":
            blocks = d.get("blocks")
            if not isinstance(blocks, list):
                raise ProblemError("levi needs a \"blocks\" array", source, where="h.blocks")
            blocks = [coords(b, f"h.blocks[{k}]") for k, b in enumerate(blocks)]
            flags = d.get("det_one")
            if flags is not None and (not isinstance(flags, list) or not all(isinstance(f, bool) for f in flags)):
                raise ProblemError("det_one must be an array of booleans", source, where="h.det_one")
            return HSpec.levi(n, blocks, flags)
    except ValueError as e:
        if isinstance(e, ProblemError):
            raise
        raise ProblemError(str(e), source, where="h") from None
    raise ProblemError(f"unknown h type {typ!r} (expected full, glu or levi)", source, where="h.type")


def parse_pool(F: Field, pool, n: int, h: HSpec | None, source: str = "<input>", where: str = "pool") -> list:
    if not isinstance(pool, list):
        raise ProblemError("pool must be an array of matrices", source, where=where)
    out = []
    for k, m in enumerate(pool):
        g = parse_matrix(F, m, f"{where}[{k}]", source, n)
        if h is not None:
            try:
                h.check_element(g)
            except NotInH as e:
                raise ProblemError(f"conjugator not in H: {e}", source, where=f"{where}[{k}]") from None
        out.append(g)
    return out


def loads_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemError(e.msg, source, e.lineno, e.colno) from None


def parse_problem(obj, source: str = "<input>", require_h: bool = True) -> Problem:
    if not isinstance(obj, dict):
        raise ProblemError("a problem must be a JSON object", source)
    try:
        F = parse_field(obj.get("field"))
    except ValueError as e:
        raise ProblemError(str(e), source, where="field") from None
    kind = obj.get("kind", "group")
    if kind not in KINDS:
        raise ProblemError(f"kind must be one of {list(KINDS)}", source, where="kind")
    gens = obj.get("generators")
    if not isinstance(gens, list) or not gens:
        raise ProblemError("generators must be a non-empty array of matrices", source, where="generators")
    n = obj.get("dim")
    if n is not None and (not isinstance(n, int) or isinstance(n, bool) or n < 1):
        raise ProblemError("dim must be a positive integer", source, where="dim")
    mats = []
    for k, m in enumerate(gens):
        x = parse_matrix(F, m, f"generators[{k}]", source, n)
        n = x.nrows
        mats.append(x)
    try:
        t = GeneratorTuple(F, n, kind, tuple(mats))
    except ValueError as e:
        raise ProblemError(str(e), source, where="generators") from None
    h = None
    if "h" in obj:
        h = parse_hspec(obj["h"], n, source)
    elif require_h:
        raise ProblemError("missing \"h\"", source, where="h")
    pool = parse_pool(F, obj["pool"], n, h, source) if "pool" in obj else None
    options = obj.get("options", {})
    if not isinstance(options, dict):
        raise ProblemError("options must be an object", source, where="options")
    return Problem(t, h, pool, options)


def load_problem(path, require_h: bool = True) -> Problem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemError(f"cannot read file: {e.strerror}", str(path)) from None
    return parse_problem(loads_json(text, str(path)), str(path), require_h)


# ---------------------------------------------------------------------------
# serialization


def matrix_json(m: Matrix) -> list:
    F = m.field
    return [[F.to_json(v) for v in row] for row in m.tolist()]


def subspace_json(w: Subspace) -> list:
    F = w.field
    return [[F.to_json(v) for v in row] for row in w.basis]


def tuple_json(t: GeneratorTuple) -> dict:
    return {"field": field_name(t.field), "dim": t.dim, "kind": t.kind,
            "generators": [matrix_json(x) for x in t.entries]}


def cocharacter_json(lam) -> dict:
    return {"weights": list(lam.weights),
            "conjugator": None if lam.conjugator is None else matrix_json(lam.conjugator)}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def text_report(lines: list, cert: dict) -> str:
    """Human-readable lines followed by the machine-readable certificate block."""
    return "\n".join(lines) + "\n---cert---\n" + dumps(cert) + "\n"


def extract_cert(text: str, source: str = "<input>") -> dict:
    """Read a certificate from either a text report or a bare JSON report."""
    marker = "---cert---"
    if marker in text:
        head, _, body = text.partition(marker)
        offset = head.count("\n") + 1
        try:
            return json.loads(body)
        except json.JSONDecodeError as e:
            raise ProblemError(e.msg, source, e.lineno + offset, e.colno) from None
    return loads_json(text, source)
