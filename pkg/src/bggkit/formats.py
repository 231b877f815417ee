"""JSON document formats: algebras, modules, polynomial matrices, reports."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Hashable, List, Mapping, Sequence, Tuple

from . import linalg as la
from .algebra import Algebra, AlgebraError
from .modules import LeftModule
from .polyseries import LaurentPoly, PolyMatrix, TruncSeries
from .quiver import QuiverError, make_quiver, quiver_algebra


class DocumentError(ValueError):
    pass


def read_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise DocumentError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"not a rational: {x!r}") from None
    raise DocumentError(f"rationals must be integers or \"num/den\" strings, got {x!r}")


def write_rational(x: Fraction) -> str:
    return str(x)


def _check_format(doc: Mapping, name: str):
    if not isinstance(doc, Mapping) or doc.get("format") != name:
        raise DocumentError(f"expected a document with \"format\": \"{name}\"")


def _vertex(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise DocumentError(f"vertex labels must be integers or strings, got {v!r}")
    return v


# algebras

def ingest_algebra(doc: Mapping) -> Algebra:
    """Build an algebra from either structure constants or a bound quiver."""
    _check_format(doc, "alg/1")
    name = str(doc.get("name", ""))
    try:
        if "quiver" in doc:
            q = doc["quiver"]
            verts = [_vertex(v) for v in q["vertices"]]
            arrows = [(a["name"], _vertex(a["source"]), _vertex(a["target"])) for a in q.get("arrows", [])]
            rels = [[(read_rational(c), p) for c, p in rel] for rel in q.get("relations", [])]
            Q = make_quiver(verts, arrows, rels, int(q.get("bound", 2)))
            return quiver_algebra(Q, name=name)
        basis = [str(b) for b in doc["basis"]]
        n = len(basis)
        table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for entry in doc.get("mult", []):
            a, b, c, x = entry
            for k in (a, b, c):
                if not isinstance(k, int) or not 0 <= k < n:
                    raise DocumentError(f"basis index out of range in {entry!r}")
            table[a][b][c] += read_rational(x)
        idem = {}
        for item in doc["idempotents"]:
            v, k = _vertex(item["vertex"]), item["index"]
            if v in idem:
                raise DocumentError(f"duplicate vertex {v!r}")
            idem[v] = k
        unit = [read_rational(x) for x in doc["unit"]] if "unit" in doc else None
        return Algebra(basis, table, idem, unit, name=name)
    except (KeyError, TypeError) as err:
        raise DocumentError(f"malformed algebra document: {err}") from None
    except QuiverError as err:
        raise DocumentError(str(err)) from None


def export_algebra(A: Algebra) -> Dict[str, Any]:
    mult = []
    for a in range(A.dim):
        for b in range(A.dim):
            for c, x in enumerate(A.table[a][b]):
                if x:
                    mult.append([a, b, c, write_rational(x)])
    return {
        "format": "alg/1",
        "name": A.name,
        "basis": list(A.basis),
        "mult": mult,
        "idempotents": [{"vertex": v, "index": A.idempotents[v]} for v in A.vertices],
        "unit": [write_rational(x) for x in A.unit],
    }


# modules

def ingest_module(doc: Mapping, A: Algebra) -> LeftModule:
    _check_format(doc, "mod/1")
    try:
        dim = int(doc["dim"])
        acts = [[[read_rational(x) for x in row] for row in m] for m in doc["action"]]
    except (KeyError, TypeError, ValueError) as err:
        raise DocumentError(f"malformed module document: {err}") from None
    if len(acts) != A.dim:
        raise DocumentError(f"need {A.dim} action matrices, got {len(acts)}")
    for m in acts:
        if len(m) != dim or any(len(r) != dim for r in m):
            raise DocumentError(f"action matrices must be {dim}x{dim}")
    V = LeftModule(A, acts, name=str(doc.get("name", "")), dim=dim)
    if not V.is_valid():
        raise DocumentError("action matrices do not define a unital module")
    return V


def export_module(V: LeftModule) -> Dict[str, Any]:
    return {"format": "mod/1", "name": V.name, "dim": V.dim,
            "action": [[[write_rational(x) for x in row] for row in m] for m in V.action]}


# polynomial matrices

def read_entry(x):
    if isinstance(x, Mapping):
        return TruncSeries([int(c) for c in x["coeffs"]], int(x["N"]))
    return LaurentPoly.from_pairs(x)


def write_entry(e):
    if isinstance(e, LaurentPoly):
        return e.to_pairs()
    return {"coeffs": list(e.coeffs), "N": e.N}


def ingest_polymatrix(doc: Mapping) -> PolyMatrix:
    _check_format(doc, "polymatrix/1")
    try:
        labels = [_vertex(v) for v in doc["labels"]]
        rows = doc["rows"]
        if len(rows) != len(labels) or any(len(r) != len(labels) for r in rows):
            raise DocumentError("rows must form a square matrix matching the labels")
        return PolyMatrix.from_function(labels, lambda i, j: read_entry(rows[labels.index(i)][labels.index(j)]))
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, DocumentError):
            raise
        raise DocumentError(f"malformed matrix document: {err}") from None


def export_polymatrix(m: PolyMatrix) -> Dict[str, Any]:
    return {"format": "polymatrix/1", "labels": list(m.labels),
            "rows": [[write_entry(e) for e in row] for row in m.rows]}


# files and reports

DATA_PACKAGE = "bggkit.data"


def bundled_path(name: str) -> Path:
    return Path(str(resources.files(DATA_PACKAGE).joinpath(name)))


def bundled_names() -> List[str]:
    return sorted(p.name for p in resources.files(DATA_PACKAGE).iterdir() if p.name.endswith((".alg", ".mod", ".klv",
                                                                                             ".expect", ".json")))


def resolve_path(name: str) -> Path:
    """An existing path, or else a file of that name shipped with the package."""
    p = Path(name)
    if p.exists():
        return p
    b = bundled_path(p.name)
    if b.exists():
        return b
    raise DocumentError(f"no such file: {name}")


def load_document(name: str) -> Tuple[Dict[str, Any], bytes]:
    path = resolve_path(name)
    raw = path.read_bytes()
    try:
        return json.loads(raw.decode("utf-8")), raw
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        raise DocumentError(f"{name}: not valid JSON ({err})") from None


def digest(parts: Sequence[bytes]) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(hashlib.sha256(p).digest())
    return h.hexdigest()


def _plain(x):
    """Make report values JSON-friendly with stable representations."""
    if isinstance(x, Mapping):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return write_rational(x)
    if isinstance(x, LaurentPoly):
        return x.to_pairs()
    if isinstance(x, TruncSeries):
        return write_entry(x)
    if isinstance(x, float):
        return "inf" if x == float("inf") else x
    return x


def render_report(report: Mapping) -> str:
    return json.dumps(_plain(report), sort_keys=True, indent=2, ensure_ascii=True) + "\n"
