"""JSON documents for regions, step fuzzy sets, collections, tables and reports.

Rationals always travel as strings (``"-3/4"``), never as JSON numbers.
Writers emit keys in a fixed order with compact separators so identical
values serialise to identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from typing import Any

from . import __version__
from . import fuzzyset as fz
from . import geometry as geo
from .errors import FuzzyPolarError, InvalidInputError
from .fuzzyset import StepFuzzySet
from .geometry import DualPair
from .oracle import Table

RATIONAL_RE = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")

CONVENTIONS = "\n".join([
    "cut at theta <= 0 is the whole space",
    "polar of the empty set is the whole dual space",
    "polar of the whole space is the origin",
    "sup of the empty set is 0",
    "fuzzy polar takes the supremum, attained or not",
    "regions are closed",
])
CONVENTIONS_HASH = hashlib.sha256(CONVENTIONS.encode()).hexdigest()[:16]


class DocumentError(InvalidInputError):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


# ----------------------------------------------------------------------------
# scalars and vectors
# ----------------------------------------------------------------------------

def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(s: Any, where: str) -> Fraction:
    if not isinstance(s, str) or not RATIONAL_RE.fullmatch(s):
        raise DocumentError(f"{where}: malformed rational {s!r}")
    return Fraction(s)


def parse_vector(v: Any, dim: int | None, where: str) -> tuple:
    if not isinstance(v, list):
        raise DocumentError(f"{where}: expected a list of rational strings")
    out = tuple(parse_rational(x, f"{where}[{i}]") for i, x in enumerate(v))
    if dim is not None and len(out) != dim:
        raise DocumentError(f"{where}: expected {dim} coordinates, got {len(out)}")
    return out


def vector_obj(v) -> list[str]:
    return [rational_str(x) for x in v]


def parse_matrix(m: Any, where: str, cols: int | None = None) -> tuple:
    if not isinstance(m, list) or not m:
        raise DocumentError(f"{where}: expected a nonempty list of rows")
    return tuple(parse_vector(row, cols, f"{where}[{i}]") for i, row in enumerate(m))


# ----------------------------------------------------------------------------
# regions
# ----------------------------------------------------------------------------

def region_obj(r: geo.Region) -> dict:
    if isinstance(r, geo.Empty):
        return {"type": "empty"}
    if isinstance(r, geo.WholeSpace):
        return {"type": "whole_space"}
    if isinstance(r, geo.Points):
        return {"type": "points", "vertices": [vector_obj(p) for p in r.points]}
    if isinstance(r, geo.VPolytope):
        return {"type": "vpolytope", "vertices": [vector_obj(p) for p in r.vertices]}
    if isinstance(r, geo.HPolyhedron):
        return {"type": "hpolyhedron",
                "halfspaces": [{"normal": vector_obj(h.normal), "offset": rational_str(h.offset)}
                               for h in r.halfspaces]}
    if isinstance(r, geo.Union):
        return {"type": "union", "regions": [region_obj(m) for m in r.members]}
    raise TypeError(f"not a region: {r!r}")


def parse_region(obj: Any, dim: int, where: str = "region") -> geo.Region:
    if not isinstance(obj, dict) or "type" not in obj:
        raise DocumentError(f"{where}: expected an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "empty":
            return geo.Empty(dim)
        if kind == "whole_space":
            return geo.WholeSpace(dim)
        if kind in ("points", "vpolytope"):
            verts = obj.get("vertices")
            if not isinstance(verts, list) or not verts:
                raise DocumentError(f"{where}.vertices: expected a nonempty list")
            vs = [parse_vector(v, dim, f"{where}.vertices[{i}]") for i, v in enumerate(verts)]
            return geo.points(vs, dim) if kind == "points" else geo.polytope(vs, dim)
        if kind == "hpolyhedron":
            hs = obj.get("halfspaces")
            if not isinstance(hs, list):
                raise DocumentError(f"{where}.halfspaces: expected a list")
            pairs = []
            for i, h in enumerate(hs):
                if not isinstance(h, dict):
                    raise DocumentError(f"{where}.halfspaces[{i}]: expected an object")
                a = parse_vector(h.get("normal"), dim, f"{where}.halfspaces[{i}].normal")
                b = parse_rational(h.get("offset"), f"{where}.halfspaces[{i}].offset")
                pairs.append((a, b))
            return geo.polyhedron(pairs, dim)
        if kind == "union":
            rs = obj.get("regions")
            if not isinstance(rs, list):
                raise DocumentError(f"{where}.regions: expected a list")
            return geo.union([parse_region(m, dim, f"{where}.regions[{i}]") for i, m in enumerate(rs)], dim)
    except DocumentError:
        raise
    except FuzzyPolarError as exc:
        if isinstance(exc, InvalidInputError):
            raise DocumentError(f"{where}: {exc}") from exc
        raise
    raise DocumentError(f"{where}.type: unknown region type {kind!r}")


# ----------------------------------------------------------------------------
# fuzzy sets
# ----------------------------------------------------------------------------

def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc


def _dimension(doc: Any, where: str = "dimension") -> int:
    n = doc.get("dimension") if isinstance(doc, dict) else None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError(f"{where}: expected a positive integer")
    return n


def fuzzy_set_from_obj(doc: Any, dim: int | None = None, where: str = "") -> StepFuzzySet:
    prefix = f"{where}." if where else ""
    if not isinstance(doc, dict):
        raise DocumentError(f"{where or 'document'}: expected an object")
    n = _dimension(doc, prefix + "dimension") if dim is None or "dimension" in doc else dim
    if dim is not None and n != dim:
        raise DocumentError(f"{prefix}dimension: expected {dim}, got {n}")
    levels = doc.get("levels")
    if not isinstance(levels, list):
        raise DocumentError(f"{prefix}levels: expected a list")
    parsed = []
    for i, lv in enumerate(levels):
        w = f"{prefix}levels[{i}]"
        if not isinstance(lv, dict):
            raise DocumentError(f"{w}: expected an object")
        g = parse_rational(lv.get("grade"), f"{w}.grade")
        if not 0 < g <= 1:
            raise DocumentError(f"{w}.grade: invalid grade {g} outside (0, 1]")
        parsed.append((g, parse_region(lv.get("region"), n, f"{w}.region")))
    try:
        return fz.construct(parsed, n)
    except InvalidInputError as exc:
        raise DocumentError(f"{prefix}levels: {exc}") from exc


def fuzzy_set_obj(mu: StepFuzzySet, pair: DualPair | None = None) -> dict:
    out = {"dimension": mu.dim,
           "levels": [{"grade": rational_str(g), "region": region_obj(r)} for g, r in mu.levels]}
    if pair is not None and not pair.is_standard:
        out["pairing"] = [vector_obj(row) for row in pair.matrix]
    return out


def pair_from_obj(doc: dict, n: int) -> DualPair | None:
    if "pairing" not in doc:
        return None
    m = parse_matrix(doc["pairing"], "pairing", n)
    try:
        return DualPair(n, m)
    except InvalidInputError as exc:
        raise DocumentError(f"pairing: {exc}") from exc


def load_document(text: str) -> tuple[StepFuzzySet, DualPair | None]:
    doc = _load(text)
    mu = fuzzy_set_from_obj(doc)
    return mu, pair_from_obj(doc, mu.dim)


def parse_document(text: str) -> StepFuzzySet:
    """Parse a fuzzy set document into a canonical step fuzzy set."""
    return load_document(text)[0]


def write_document(mu: StepFuzzySet, pair: DualPair | None = None) -> str:
    return _dumps(fuzzy_set_obj(mu, pair))


# ----------------------------------------------------------------------------
# collections, vectors, tables
# ----------------------------------------------------------------------------

def load_collection(text: str) -> tuple[list[StepFuzzySet], DualPair | None, str]:
    """A collection document, or a single fuzzy set treated as a one-element base.

    Returns the member sets, the pairing (if any) and the family name.
    """
    doc = _load(text)
    if isinstance(doc, dict) and "levels" in doc:
        mu = fuzzy_set_from_obj(doc)
        return [mu], pair_from_obj(doc, mu.dim), "generated"
    n = _dimension(doc)
    sets = doc.get("sets")
    if not isinstance(sets, list) or not sets:
        raise DocumentError("sets: expected a nonempty list of fuzzy sets")
    members = [fuzzy_set_from_obj(s, n, f"sets[{i}]") for i, s in enumerate(sets)]
    family = doc.get("family", "generated")
    if family not in ("generated", "finite_points"):
        raise DocumentError(f"family: unknown family {family!r}")
    return members, pair_from_obj(doc, n), family


def write_collection(sets, pair: DualPair | None = None, family: str | None = None) -> str:
    n = sets[0].dim
    out = {"dimension": n}
    if family is not None:
        out["family"] = family
    out["sets"] = [{"levels": fuzzy_set_obj(s)["levels"]} for s in sets]
    if pair is not None and not pair.is_standard:
        out["pairing"] = [vector_obj(row) for row in pair.matrix]
    return _dumps(out)


def load_vectors(text: str, dim: int | None = None) -> tuple[list[tuple], list[bool] | None]:
    """A list of vectors, or ``{"vectors": [...], "continuous": [...]}``."""
    doc = _load(text)
    flags = None
    if isinstance(doc, dict):
        if "dimension" in doc:
            d = _dimension(doc)
            if dim is not None and d != dim:
                raise DocumentError(f"dimension: expected {dim}, got {d}")
            dim = d
        flags = doc.get("continuous")
        doc = doc.get("vectors")
    if not isinstance(doc, list) or not doc:
        raise DocumentError("vectors: expected a nonempty list")
    vs = [parse_vector(v, dim, f"vectors[{i}]") for i, v in enumerate(doc)]
    if dim is None and any(len(v) != len(vs[0]) for v in vs):
        raise DocumentError("vectors: inconsistent lengths")
    if flags is not None:
        if not isinstance(flags, list) or len(flags) != len(vs) or not all(isinstance(f, bool) for f in flags):
            raise DocumentError("continuous: expected one boolean per vector")
    return vs, flags


def load_matrix(text: str) -> tuple:
    doc = _load(text)
    if isinstance(doc, dict):
        doc = doc.get("matrix")
    m = parse_matrix(doc, "matrix")
    if any(len(row) != len(m[0]) for row in m):
        raise DocumentError("matrix: rows differ in length")
    return m


def region_document(r: geo.Region) -> str:
    return _dumps({"dimension": r.dim, "region": region_obj(r)})


def table_obj(t: Table) -> dict:
    return {"dimension": t.dim, "kind": t.kind,
            "rows": [{"point": vector_obj(x), "grade": rational_str(g)} for x, g in t.rows]}


def write_table(t: Table) -> str:
    return _dumps(table_obj(t))


def load_table(text: str) -> Table:
    doc = _load(text)
    n = _dimension(doc)
    rows = doc.get("rows")
    if not isinstance(rows, list):
        raise DocumentError("rows: expected a list")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, dict):
            raise DocumentError(f"rows[{i}]: expected an object")
        out.append((parse_vector(row.get("point"), n, f"rows[{i}].point"),
                    parse_rational(row.get("grade"), f"rows[{i}].grade")))
    return Table(n, str(doc.get("kind", "table")), tuple(out))


def report_envelope(kind: str, body: dict) -> str:
    out = {"report": kind, "tool_version": __version__, "conventions_hash": CONVENTIONS_HASH}
    out.update(body)
    return _dumps(out)
