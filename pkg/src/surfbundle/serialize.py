"""Problem-file parsing and exact report serialization.

The wire format is JSON with schema_version 1.  Parsing is strict: unknown
fields are rejected so a typo cannot silently change a computation.  All
numeric payload is exact, integers where the data is integral and
[numerator, denominator] pairs for rationals; no float ever appears.

Malformed input (bad JSON, wrong types, unknown or missing fields) raises
ParseError; structurally well-formed input that violates a mathematical
invariant (sizes, symplecticity, the closed-base relator, ...) raises
ValidationError with the failing invariant named.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .homology import (BASE_CIRCLE, COINVARIANT_CLASS, CYLINDER_CLASS,
                       EULER_DUAL, FIBER_CLASS, FUNDAMENTAL_CLASS,
                       INVARIANT_3MFLD, VERTICAL_3MFLD, BettiReport,
                       GeneratorEntry, Verdict)
from .search import SearchHit, word_str
from .symplectic import (BASE_TYPES, HolonomyProblem, ValidationError,
                         build_problem)

SCHEMA_VERSION = 1


class ParseError(ValueError):
    """The input is not a well-formed problem file."""


def _require_keys(obj: dict, keys: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be a JSON object")
    missing = keys - obj.keys()
    unknown = obj.keys() - keys
    if missing:
        raise ParseError(f"{where} is missing fields: {sorted(missing)}")
    if unknown:
        raise ParseError(f"{where} has unknown fields: {sorted(unknown)}")


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where} must be an integer")
    return value


def parse_problem(data) -> HolonomyProblem:
    """Parse and fully validate a problem file (bytes or str of JSON)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    _require_keys(raw, {"schema_version", "fiber_genus", "base", "holonomy"},
                  "problem file")
    if _require_int(raw["schema_version"], "schema_version") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {raw['schema_version']}")
    h = _require_int(raw["fiber_genus"], "fiber_genus")
    _require_keys(raw["base"], {"type", "genus"}, "base")
    base_type = raw["base"]["type"]
    if not isinstance(base_type, str):
        raise ParseError("base.type must be a string")
    if base_type not in BASE_TYPES:
        raise ValidationError(f"base type must be one of {BASE_TYPES}")
    g = _require_int(raw["base"]["genus"], "base.genus")
    if not isinstance(raw["holonomy"], list):
        raise ParseError("holonomy must be an array")

    entries = []
    echo = []
    for idx, entry in enumerate(raw["holonomy"], start=1):
        where = f"holonomy entry {idx}"
        if not isinstance(entry, dict) or len(entry) != 1:
            raise ParseError(f"{where} must be an object with exactly one of "
                             "'matrix' or 'word'")
        key, value = next(iter(entry.items()))
        if key == "word":
            if not isinstance(value, str):
                raise ParseError(f"{where}: word must be a string")
            entries.append(value)
            echo.append({"word": value})
        elif key == "matrix":
            rows = _parse_int_matrix(value, where)
            if len(rows) != 2 * h or any(len(r) != 2 * h for r in rows):
                raise ValidationError(
                    f"{where}: matrix must be square of size {2 * h}")
            entries.append(rows)
            echo.append({"matrix": rows})
        else:
            raise ParseError(f"{where} has unknown field {key!r}")
    return build_problem(h, base_type, g, entries, source_entries=tuple(
        json.dumps(e, sort_keys=True) for e in echo))


def _parse_int_matrix(value, where: str) -> list[list[int]]:
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: matrix must be a non-empty array of rows")
    rows = []
    for r in value:
        if not isinstance(r, list):
            raise ParseError(f"{where}: matrix rows must be arrays")
        rows.append([_require_int(x, f"{where} matrix entry") for x in r])
    return rows


def serialize_problem(p: HolonomyProblem) -> dict:
    """Problem as a JSON-ready dict; parse(serialize(p)) == p."""
    if p.source_entries is not None:
        holonomy = [json.loads(e) for e in p.source_entries]
    else:
        holonomy = [{"matrix": s.int_rows()} for s in p.holonomy]
    return {
        "schema_version": SCHEMA_VERSION,
        "fiber_genus": p.h,
        "base": {"type": p.base_type, "genus": p.g},
        "holonomy": holonomy,
    }


def frac_pair(q: Fraction) -> list[int]:
    return [q.numerator, q.denominator]


def vector_json(v: Sequence[Fraction]) -> list[list[int]]:
    return [frac_pair(x) for x in v]


def _generator_json(gen: GeneratorEntry) -> dict:
    out = {"label": gen.label, "degree": gen.degree}
    if gen.label in (BASE_CIRCLE, VERTICAL_3MFLD):
        out["index"] = gen.index
    elif gen.label in (COINVARIANT_CLASS, INVARIANT_3MFLD):
        out["vector"] = vector_json(gen.vector)
    elif gen.label == CYLINDER_CLASS:
        out["blocks"] = [vector_json(c) for c in gen.cylinder.components]
    elif gen.label == EULER_DUAL:
        out["boundary_coefficient"] = gen.coefficient
    elif gen.label not in (FIBER_CLASS, FUNDAMENTAL_CLASS):
        raise ValueError(f"unknown generator label {gen.label!r}")
    return out


def _verdict_json(v: Verdict) -> dict:
    return {"name": v.name, "verdict": v.status, "detail": v.detail}


def homology_report_dict(report: BettiReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "mode": "homology",
        "problem": serialize_problem(report.problem),
        "betti": list(report.betti),
        "dims": {
            "W": report.dim_W,
            "Fix": report.dim_Fix,
            "K": report.dim_K,
            "rank_beta": report.rank_beta,
        },
        "generators": [_generator_json(gen) for gen in report.generators],
        "validations": [_verdict_json(v) for v in report.validations],
    }


def _hit_json(hit: SearchHit) -> dict:
    return {
        "word": word_str(hit.word),
        "letters": [[i, e] for i, e in hit.word],
        "product": hit.product.int_rows(),
        "fixed_space": {
            "dim": hit.fixed_space.dim,
            "basis": [vector_json(v) for v in hit.fixed_space.basis],
        },
        "cycle": [vector_json(v) for v in hit.cycle],
        "product_is_identity": hit.product_is_identity,
        "fiber_genus_two_note": hit.fiber_genus_two_note,
    }


def search_report_dict(problem: HolonomyProblem, hits: list[SearchHit],
                       max_len: int, max_states: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "mode": "search",
        "problem": serialize_problem(problem),
        "max_len": max_len,
        "max_states": max_states,
        "hit_count": len(hits),
        "hits": [_hit_json(h) for h in hits],
    }


def oracle_report_dict(report: BettiReport, kunneth: tuple[int, ...]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "mode": "oracle",
        "fiber_genus": report.h,
        "base_type": report.base_type,
        "base_genus": report.g,
        "engine_betti": list(report.betti),
        "kunneth_betti": list(kunneth),
        "agree": list(report.betti) == list(kunneth),
        "validations": [_verdict_json(v) for v in report.validations],
    }


def dumps(obj: dict) -> str:
    """Canonical JSON text: fixed key order (construction order), ASCII."""
    return json.dumps(obj, indent=2) + "\n"
