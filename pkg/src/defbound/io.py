"""JSON encoding for lattices, Seifert forms and results. Rationals travel as "p/q" strings."""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import BadInput
from .lattice import GramLattice
from .seifert import SeifertForm


def encode(obj: Any) -> Any:
    """Turn library objects into JSON-ready values."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, GramLattice):
        return {"gram": [list(r) for r in obj.gram]}
    if isinstance(obj, SeifertForm):
        return {"e0": obj.e0, "pairs": [list(p) for p in obj.pairs]}
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: encode(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), sort_keys=True)


def parse_rational(s: Any) -> Fraction:
    try:
        return Fraction(s) if not isinstance(s, float) else Fraction(str(s))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise BadInput(f"not a rational number: {s!r}") from exc


def lattice_from_obj(obj: Any) -> GramLattice:
    if isinstance(obj, dict):
        obj = obj.get("gram")
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise BadInput('expected {"gram": [[...], ...]}')
    try:
        if any(not isinstance(x, int) or isinstance(x, bool) for r in obj for x in r):
            raise BadInput("Gram entries must be integers")
        return GramLattice(obj)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc


def seifert_from_obj(obj: Any) -> SeifertForm:
    if not isinstance(obj, dict) or "e0" not in obj or "pairs" not in obj:
        raise BadInput('expected {"e0": int, "pairs": [[a, b], ...]}')
    e0, pairs = obj["e0"], obj["pairs"]
    if not isinstance(e0, int) or not isinstance(pairs, list):
        raise BadInput("e0 must be an integer and pairs a list")
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p)):
            raise BadInput(f"bad pair {p!r}")
    return SeifertForm(e0, pairs)


def _read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise BadInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise BadInput(f"{path}: invalid JSON ({exc.msg})") from exc


def load_lattice(path: str | Path) -> GramLattice:
    return lattice_from_obj(_read_json(path))


def load_seifert(path: str | Path) -> SeifertForm:
    return seifert_from_obj(_read_json(path))


def fixture(name: str) -> Any:
    """Parsed contents of a bundled fixture, e.g. fixture("e8")."""
    res = resources.files("defbound.fixtures").joinpath(f"{name}.json")
    if not res.is_file():
        raise BadInput(f"no fixture named {name!r}")
    return json.loads(res.read_text())
