"""Job configuration: parsing, validation and rendering of the JSON input format."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from .category import CategoryError
from .quiver import Quiver, QuiverError
from .reps import Representation, injective_at, projective_at, simple_at
from .xfield import Field


class ConfigError(ValueError):
    """Malformed configuration; ``where`` locates the offending entry."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


_NAMED = re.compile(r"^\s*([PIS])\(\s*([^()\s]+)\s*\)\s*$")


@dataclass
class JobConfig:
    quiver: Quiver
    field: Field
    M_parts: list  # raw module specs, one per factor of B
    strategy: str = "auto"
    bound: int = 3
    pd_cutoff: int = 6
    seed: int = 0
    pd_suite: int = 20
    regulars: list = field(default_factory=list)
    output_format: str = "json"

    def module(self, spec, where: str = "module") -> Representation:
        return parse_module(self.quiver, self.field, spec, where)

    def parts(self) -> list[Representation]:
        return [self.module(s, f"M.parts[{i}]") for i, s in enumerate(self.M_parts)]

    def regular_modules(self) -> list[Representation]:
        return [self.module(s, f"regulars[{i}]") for i, s in enumerate(self.regulars)]

    def to_json(self) -> dict:
        return {
            "quiver": {
                "vertices": list(self.quiver.vertices),
                "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in self.quiver.arrows],
                "field": self.field.to_json(),
            },
            "M": {"parts": list(self.M_parts)},
            "catalog": {"strategy": self.strategy, "bound": self.bound},
            "options": {"pd_cutoff": self.pd_cutoff, "seed": self.seed, "pd_suite": self.pd_suite,
                        "format": self.output_format},
            "regulars": list(self.regulars),
        }


def _get(d: dict, key: str, where: str, kind, default=None, required: bool = False):
    if key not in d:
        if required:
            raise ConfigError(where, f"missing key {key!r}")
        return default
    v = d[key]
    if kind is int and isinstance(v, bool) or not isinstance(v, kind):
        raise ConfigError(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}, got {type(v).__name__}")
    return v


def parse_field(data, where: str = "quiver.field") -> Field:
    if data is None:
        return Field(5)
    if not isinstance(data, dict):
        raise ConfigError(where, "expected an object")
    p = data.get("p", 5)
    if p is not None and (isinstance(p, bool) or not isinstance(p, int)):
        raise ConfigError(f"{where}.p", "expected an integer prime or null")
    try:
        return Field(p)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{where}.p", str(exc)) from exc


def parse_quiver(data, where: str = "quiver") -> tuple[Quiver, Field]:
    if not isinstance(data, dict):
        raise ConfigError(where, "expected an object")
    verts = _get(data, "vertices", where, list, required=True)
    arrows = _get(data, "arrows", where, list, default=[])
    edges = []
    for i, a in enumerate(arrows):
        w = f"{where}.arrows[{i}]"
        if not isinstance(a, dict):
            raise ConfigError(w, "expected an object")
        edges.append((str(_get(a, "name", w, str, required=True)), str(_get(a, "source", w, str, required=True)),
                      str(_get(a, "target", w, str, required=True))))
    try:
        q = Quiver.from_edges([str(v) for v in verts], edges)
    except QuiverError as exc:
        raise ConfigError(where, str(exc)) from exc
    return q, parse_field(data.get("field"), f"{where}.field")


def parse_module(q: Quiver, F: Field, spec, where: str) -> Representation:
    """``"P(v)"``, ``"I(v)"``, ``"S(v)"`` or ``{"dim": ..., "matrices": ...}``."""
    if isinstance(spec, str):
        m = _NAMED.match(spec)
        if not m or m.group(2) not in q.vertices:
            raise ConfigError(where, f"unknown module name {spec!r}")
        kind, v = m.groups()
        return {"P": projective_at, "I": injective_at, "S": simple_at}[kind](q, v, F)
    if isinstance(spec, dict):
        if "dim" not in spec:
            raise ConfigError(where, "missing key 'dim'")
        if not isinstance(spec["dim"], dict):
            raise ConfigError(f"{where}.dim", "expected an object keyed by vertex")
        mats = spec.get("matrices", {})
        if not isinstance(mats, dict):
            raise ConfigError(f"{where}.matrices", "expected an object keyed by arrow")
        for name, m in mats.items():
            if not _entries_ok(m, F):
                raise ConfigError(f"{where}.matrices.{name}", "expected a list of rows of integer entries")
        try:
            return Representation.from_json(q, spec, F, label=spec.get("label"))
        except (CategoryError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise ConfigError(where, str(exc)) from exc
    raise ConfigError(where, "expected a module name or a representation object")


def _entries_ok(m, F: Field) -> bool:
    if not isinstance(m, list) or not all(isinstance(row, list) for row in m):
        return False
    ok = (int, str) if F.p is None else (int,)
    return all(isinstance(x, ok) and not isinstance(x, bool) for row in m for x in row)


def parse_config(data: Any) -> JobConfig:
    if not isinstance(data, dict):
        raise ConfigError("$", "expected a JSON object")
    q, F = parse_quiver(data.get("quiver"), "quiver")
    if "field" in data:
        F = parse_field(data["field"], "field")
    Mraw = data.get("M", [])
    if isinstance(Mraw, dict) and "parts" in Mraw:
        parts = Mraw["parts"]
        if not isinstance(parts, list) or not parts:
            raise ConfigError("M.parts", "expected a non-empty list")
    elif isinstance(Mraw, (str, dict)):
        parts = [Mraw]
    else:
        raise ConfigError("M", "expected a module or {\"parts\": [...]}")
    cat = data.get("catalog", {})
    if not isinstance(cat, dict):
        raise ConfigError("catalog", "expected an object")
    opts = data.get("options", {})
    if not isinstance(opts, dict):
        raise ConfigError("options", "expected an object")
    regs = data.get("regulars", [])
    if not isinstance(regs, list):
        raise ConfigError("regulars", "expected a list")
    strategy = _get(cat, "strategy", "catalog", str, "auto")
    if strategy not in ("auto", "supplied"):
        raise ConfigError("catalog.strategy", "expected 'auto' or 'supplied'")
    bound = _get(cat, "bound", "catalog", int, 3)
    if bound < 0:
        raise ConfigError("catalog.bound", "must be non-negative")
    fmt = _get(opts, "format", "options", str, "json")
    if fmt not in ("json", "text"):
        raise ConfigError("options.format", "expected 'json' or 'text'")
    cfg = JobConfig(q, F, list(parts), strategy, bound,
                    _get(opts, "pd_cutoff", "options", int, 6), _get(opts, "seed", "options", int, 0),
                    _get(opts, "pd_suite", "options", int, 20), list(regs), fmt)
    cfg.parts()
    cfg.regular_modules()
    return cfg


def load_config(text: str) -> JobConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
    return parse_config(data)
