"""Loading and validating JSON run configurations."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .analysis import Tolerances
from .body import StationaryRotation, rotation


class ConfigError(ValueError):
    """Unreadable or schema-invalid configuration."""


def load_schema(name: str) -> dict:
    text = resources.files("ndrigid").joinpath("schemas", name).read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class RunConfig:
    raw: dict
    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = 0

    @property
    def eigenvalues(self) -> list[float]:
        return list(self.raw["eigenvalues"])

    @property
    def planes(self) -> list[tuple[int, int, float]]:
        return [(p["axes"][0], p["axes"][1], p["omega"]) for p in self.raw["planes"]]

    def section(self, name: str) -> dict:
        return dict(self.raw.get(name, {}))

    def rotation(self) -> StationaryRotation:
        return rotation(self.eigenvalues, self.planes, self.tolerances.asymmetry_tol)


def _field_path(err: jsonschema.ValidationError) -> str:
    path = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
    return path.lstrip(".") or "<root>"


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    validator = jsonschema.Draft202012Validator(load_schema("config.schema.json"))
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        lines = [f"{source}: field {_field_path(e)}: {e.message}" for e in errors]
        raise ConfigError("\n".join(lines))
    tol = Tolerances(**raw.get("tolerances", {}))
    seed = raw.get("seed", raw.get("probe", {}).get("seed", 0))
    return RunConfig(raw, tol, int(seed))


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read: {exc.strerror}") from None
    return parse_config(text, str(path))


def config_from_rotation(eigenvalues, planes, **sections: Any) -> dict:
    raw = {
        "eigenvalues": list(eigenvalues),
        "planes": [{"axes": [int(a), int(b)], "omega": float(w)} for a, b, w in planes],
    }
    raw.update(sections)
    return raw
