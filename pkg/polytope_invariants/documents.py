"""
Reading and writing structured inputs.

Documents are parsed with ``yaml.safe_load`` so JSON and YAML are both
accepted. A source is ``-`` (stdin), a file path, or an inline document.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List

import yaml

from .chain3m import ChainComplexData, chain_from_entries
from .errors import InputError
from .grothendieck import GrothElement
from .lattice import IntegralPolytope, hull
from .marked import MarkedPolytope
from .words import FreeWordSum, Presentation, parse_word, parse_word_sum

logger = logging.getLogger("polytope_invariants.documents")


def read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        if Path(source).is_file():
            return Path(source).read_text(encoding="utf-8")
    except OSError:
        pass
    return source


def load_document(source: str) -> Any:
    text = read_source(source)
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InputError(f"cannot parse document: {e}", code="bad_document") from e
    if data is None:
        raise InputError("empty document", detail={"source": source}, code="empty_input")
    logger.debug("loaded %s document from %s", type(data).__name__, source)
    return data


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _require(data: Any, kind: type, what: str) -> Any:
    if not isinstance(data, kind):
        raise InputError(f"{what} must be a {kind.__name__}", detail={"got": type(data).__name__}, code="bad_document")
    return data


def _field(data: Dict[str, Any], key: str, what: str) -> Any:
    if key not in data:
        raise InputError(f"{what} is missing '{key}'", code="bad_document")
    return data[key]


# ============================================================================
# Polytopes
# ============================================================================

def polytope_to_dict(P: IntegralPolytope) -> Dict[str, Any]:
    return {"dim": P.dim, "points": [list(v) for v in P.points]}


def _points(data: Dict[str, Any]) -> List[tuple]:
    pts = _require(_field(data, "points", "polytope"), list, "points")
    out = [tuple(_require(p, list, "point")) for p in pts]
    if "dim" in data and any(len(p) != data["dim"] for p in out):
        raise InputError("points do not match 'dim'", detail={"dim": data["dim"]}, code="dimension_mismatch")
    return out


def polytope_from_dict(data: Any) -> IntegralPolytope:
    return hull(_points(_require(data, dict, "polytope")))


def marked_to_dict(M: MarkedPolytope) -> Dict[str, Any]:
    out = polytope_to_dict(M.polytope)
    out["marked"] = sorted(M.marked)
    return out


def marked_from_dict(data: Any) -> MarkedPolytope:
    """``marked`` indexes into ``points``; ``marked_points`` lists coordinates."""
    data = _require(data, dict, "marked polytope")
    pts = _points(data)
    chosen = [tuple(p) for p in data.get("marked_points", [])]
    for i in data.get("marked", []):
        if not isinstance(i, int) or not 0 <= i < len(pts):
            raise InputError(f"marked index {i!r} out of range", code="bad_marking")
        chosen.append(pts[i])
    return MarkedPolytope.from_points(pts, chosen)


def groth_to_dict(E: GrothElement) -> Dict[str, Any]:
    return {"pos": polytope_to_dict(E.pos), "neg": polytope_to_dict(E.neg)}


def groth_from_dict(data: Any) -> GrothElement:
    """``{"pos": P, "neg": Q}``; a bare polytope document means ``P - point``."""
    data = _require(data, dict, "Grothendieck element")
    if "points" in data:
        P = polytope_from_dict(data)
        return GrothElement(P, hull([(0,) * P.dim]))
    return GrothElement(
        polytope_from_dict(_field(data, "pos", "Grothendieck element")),
        polytope_from_dict(_field(data, "neg", "Grothendieck element")),
    )


# ============================================================================
# Words
# ============================================================================

def word_sum_to_json(f: FreeWordSum) -> List[Dict[str, Any]]:
    return [{"coef": coef, "word": str(word)} for word, coef in f.terms]


def word_sum_from_json(data: Any) -> FreeWordSum:
    """A string such as ``"x - 1"``, an integer, or a list of {coef, word}."""
    if isinstance(data, bool):
        raise InputError("word sum cannot be a boolean", code="bad_document")
    if isinstance(data, int):
        return parse_word_sum(str(data))
    if isinstance(data, str):
        return parse_word_sum(data)
    terms = []
    for term in _require(data, list, "word sum"):
        term = _require(term, dict, "word sum term")
        coef = _field(term, "coef", "word sum term")
        if isinstance(coef, bool) or not isinstance(coef, int):
            raise InputError("coefficients must be integers", detail={"coef": coef}, code="bad_document")
        terms.append((parse_word(str(_field(term, "word", "word sum term"))), coef))
    return FreeWordSum(tuple(terms))


def presentation_to_dict(p: Presentation) -> Dict[str, Any]:
    return {
        "relator": str(p.relator),
        "exponent_sums": list(p.exponent_sums),
        "b1": p.b1,
        "nice": p.nice,
        **p.flags(),
    }


def chain_from_dict(data: Any) -> ChainComplexData:
    data = _require(data, dict, "chain complex")
    a = [word_sum_from_json(x) for x in _require(_field(data, "a", "chain complex"), list, "a")]
    c = [word_sum_from_json(x) for x in _require(_field(data, "c", "chain complex"), list, "c")]
    b = [[word_sum_from_json(x) for x in _require(row, list, "b row")]
         for row in _require(_field(data, "b", "chain complex"), list, "b")]
    return chain_from_entries(a, b, c, b1=data.get("b1"))
