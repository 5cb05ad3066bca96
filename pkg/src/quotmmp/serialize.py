"""JSON-shaped file formats: points, subspaces, MMP reports and census results."""
from __future__ import annotations

import json
from fractions import Fraction

from .chamberfan import Chamber, Cone2, DivisorClass, MMPReport, WallRecord
from .exactcore import ExactMatrix, FieldSpec
from .ffenum import CensusResult
from .p1forms import ModuliParams, ParseError, format_form, parse_form
from .quotmodel import GrassmannPoint
from .sheafpoint import SheafMapPoint


class FormatError(ValueError):
    """Input text does not match a file format; carries line/column when known."""

    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)


def field_to_json(F: FieldSpec) -> dict:
    return {"type": "Q"} if F.kind == "Q" else {"type": "Fp", "p": F.characteristic}


def field_from_json(obj) -> FieldSpec:
    if not isinstance(obj, dict) or "type" not in obj:
        raise FormatError("field must be an object with a 'type' key")
    if obj["type"] == "Q":
        return FieldSpec.rationals()
    if obj["type"] == "Fp":
        try:
            return FieldSpec.prime(int(obj["p"]))
        except (KeyError, ValueError) as exc:
            raise FormatError(f"bad prime field: {exc}") from exc
    raise FormatError(f"unknown field type {obj['type']!r}")


def parse_field_option(text: str) -> FieldSpec:
    """CLI spelling: ``Q`` or ``Fp:101`` (also ``F101``)."""
    t = text.strip()
    if t.upper() in ("Q", "QQ"):
        return FieldSpec.rationals()
    for prefix in ("Fp:", "FP:", "fp:", "F"):
        if t.startswith(prefix) and t[len(prefix):].isdigit():
            return FieldSpec.prime(int(t[len(prefix):]))
    raise ValueError(f"unrecognised field {text!r} (use Q or Fp:<prime>)")


def loads_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from exc


def _locate(text: str, needle: str, offset: int) -> tuple[int | None, int | None]:
    quoted = json.dumps(needle)
    at = text.find(quoted)
    if at < 0:
        return None, None
    at += 1 + offset
    line = text.count("\n", 0, at) + 1
    col = at - (text.rfind("\n", 0, at) + 1) + 1
    return line, col


def _element(x, F: FieldSpec):
    if isinstance(x, int):
        return F.coerce(x)
    if isinstance(x, str):
        try:
            return F.coerce(Fraction(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad field element {x!r}") from exc
    raise FormatError(f"field elements must be integers or 'p/q' strings, got {x!r}")


def _element_json(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return int(x)


def _require(obj: dict, keys):
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"missing keys {missing}")


# -- points ---------------------------------------------------------------

def point_to_json(pt: SheafMapPoint) -> dict:
    p = pt.params
    return {
        "field": field_to_json(pt.field),
        "n": p.n, "r": p.r, "d": p.d,
        "column_degrees": list(pt.column_degrees),
        "entries": [[format_form(f) for f in row] for row in pt.entries],
    }


def point_from_json(obj, text: str = "") -> SheafMapPoint:
    if not isinstance(obj, dict):
        raise FormatError("a point file holds a JSON object")
    _require(obj, ("field", "n", "r", "d", "column_degrees", "entries"))
    F = field_from_json(obj["field"])
    try:
        params = ModuliParams(int(obj["n"]), int(obj["r"]), int(obj["d"]))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    degs = [int(a) for a in obj["column_degrees"]]
    rows = obj["entries"]
    if not isinstance(rows, list) or any(not isinstance(r, list) or len(r) != len(degs) for r in rows):
        raise FormatError("entries must be an n x s array of polynomial strings")
    entries = []
    for i, row in enumerate(rows):
        out = []
        for j, s in enumerate(row):
            if not isinstance(s, str):
                s = str(s)
            if degs[j] < 0:
                raise FormatError(f"negative column degree {degs[j]}")
            try:
                out.append(parse_form(s, degs[j], F))
            except ParseError as exc:
                line, col = _locate(text, s, exc.pos)
                raise FormatError(f"entries[{i}][{j}]: {exc}", line, col) from exc
        entries.append(tuple(out))
    return SheafMapPoint(params, tuple(degs), tuple(entries), F)


def dumps_point(pt: SheafMapPoint) -> str:
    return json.dumps(point_to_json(pt), indent=2, ensure_ascii=False)


def loads_point(text: str) -> SheafMapPoint:
    return point_from_json(loads_json(text), text)


# -- subspaces ------------------------------------------------------------

def subspace_to_json(K: GrassmannPoint) -> dict:
    p = K.params
    return {
        "field": field_to_json(K.field),
        "n": p.n, "r": p.r, "d": p.d, "m": K.m,
        "basis": [[_element_json(x) for x in row] for row in K.basis.tolist()],
    }


def subspace_from_json(obj) -> GrassmannPoint:
    if not isinstance(obj, dict):
        raise FormatError("a subspace file holds a JSON object")
    _require(obj, ("field", "n", "r", "d", "m", "basis"))
    F = field_from_json(obj["field"])
    params = ModuliParams(int(obj["n"]), int(obj["r"]), int(obj["d"]))
    m = int(obj["m"])
    rows = [[_element(x, F) for x in row] for row in obj["basis"]]
    try:
        return GrassmannPoint(params, m, ExactMatrix(rows, F, cols=params.dim_V(m)))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def dumps_subspace(K: GrassmannPoint) -> str:
    return json.dumps(subspace_to_json(K), indent=2)


def loads_subspace(text: str) -> GrassmannPoint:
    return subspace_from_json(loads_json(text))


def is_subspace_json(obj) -> bool:
    return isinstance(obj, dict) and "basis" in obj


# -- reports --------------------------------------------------------------

def _cls(c: DivisorClass | None):
    if c is None:
        return None
    return {"a": c.a, "b": c.b, "label": c.label()}


def _cls_in(obj) -> DivisorClass | None:
    return None if obj is None else DivisorClass(int(obj["a"]), int(obj["b"]))


def _cone(c: Cone2 | None):
    return None if c is None else [_cls(c.ray1), _cls(c.ray2)]


def _cone_in(obj) -> Cone2 | None:
    return None if obj is None else Cone2(_cls_in(obj[0]), _cls_in(obj[1]))


def report_to_json(rep: MMPReport) -> dict:
    p = rep.params
    return {
        "params": {"n": p.n, "r": p.r, "d": p.d, "s": p.s},
        "degenerate": rep.degenerate,
        "picard_rank": 1 if rep.degenerate else 2,
        "chambers": [{"model": c.model, "nef": _cone(c.nef)} for c in rep.chambers],
        "mov": _cone(rep.mov),
        "eff": _cone(rep.eff),
        "walls": [{
            "class": _cls(w.cls), "kind": w.kind, "target": w.target,
            "target_data": w.target_data, "sides": list(w.sides),
            "contracted": _cls(w.contracted),
        } for w in rep.walls],
        "canonical_class": _cls(rep.canonical),
        "log_fano": rep.log_fano,
        "notes": list(rep.notes),
    }


def report_from_json(obj) -> MMPReport:
    p = obj["params"]
    return MMPReport(
        params=ModuliParams(int(p["n"]), int(p["r"]), int(p["d"])),
        degenerate=bool(obj["degenerate"]),
        chambers=[Chamber(c["model"], _cone_in(c["nef"])) for c in obj["chambers"]],
        mov=_cone_in(obj["mov"]),
        eff=_cone_in(obj["eff"]),
        walls=[WallRecord(_cls_in(w["class"]), w["kind"], w["target"], dict(w["target_data"]),
                          tuple(w["sides"]), _cls_in(w["contracted"])) for w in obj["walls"]],
        canonical=_cls_in(obj["canonical_class"]),
        log_fano=bool(obj["log_fano"]),
        notes=list(obj.get("notes", [])),
    )


def dumps_report(rep: MMPReport) -> str:
    return json.dumps(report_to_json(rep), indent=2, ensure_ascii=False)


def loads_report(text: str) -> MMPReport:
    return report_from_json(loads_json(text))


def report_text(rep: MMPReport) -> str:
    p = rep.params
    lines = [f"Quot scheme R: n={p.n}, r={p.r}, d={p.d} (s={p.s}), dim R = {p.dim_R}"]
    if rep.degenerate:
        lines.append("degenerate case: Picard rank 1")
        lines.extend(rep.notes)
        return "\n".join(lines) + "\n"
    lines.append(f"Nef(R) = {rep.nef}")
    lines.append(f"Mov(R) = {rep.mov}")
    lines.append(f"Eff(R) = {rep.eff}")
    lines.append("chambers (counterclockwise):")
    for c in rep.chambers:
        lines.append(f"  Nef({c.model}) = {c.nef}")
    lines.append("walls (counterclockwise):")
    for w in rep.walls:
        extra = f", contracted divisor class {w.contracted}" if w.contracted is not None else ""
        lines.append(f"  {w.cls}: {w.kind} -> {w.target} [{' | '.join(w.sides)}]{extra}")
    lines.append(f"K_R = {rep.canonical}")
    lines.append(f"log Fano (-K_R in Mov and interior of Eff): {rep.log_fano}")
    return "\n".join(lines) + "\n"


# -- census ---------------------------------------------------------------

def census_from_json(obj) -> CensusResult:
    p = obj["params"]
    return CensusResult(
        params=ModuliParams(int(p["n"]), int(p["r"]), int(p["d"])),
        m=int(obj["m"]), q=int(obj["q"]), total=int(obj["total"]),
        counts={int(k): int(v) for k, v in obj["counts"].items()},
        pr1_counts={int(k): int(v) for k, v in obj["pr1_counts"].items()},
        disagreements=int(obj["disagreements"]),
        max_index_allowed=int(obj["max_index_allowed"]),
        rm_point_count_stratified=obj["rm_point_count_stratified"],
        rm_point_count_direct=obj["rm_point_count_direct"],
        pr2_fiber_counts={int(k): int(v) for k, v in obj["pr2_fiber_counts"].items()},
    )
