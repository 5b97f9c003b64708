"""Run configuration: TOML config files plus CLI flag overrides.

A config file mirrors the RunConfig fields:

    [ring]
    dim = 2
    vars = ["x", "y"]

    [sequence]
    kind = "periodic"            # explicit | periodic | example76 | example77
                                 # | cic3d | fibonacci | fibonacci3d | directional
    moves = [{pivot = "x", shifts = {y = "1"}}]   # explicit / periodic
    sigma = "sqrt(8)"                             # sigma-driven kinds

    [query]
    elements = ["y", "x^3*y^2 + y^5"]
    normalizer = "x"
    uniformizer = "y"
    horizon = 64
    window = 8
    guard = 1000000
    blocks = 3

    [output]
    format = "text"              # text | csv
    path = "stages.csv"
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import ConfigError, LabError
from .families import (
    builtin_family,
    cic3d_sequence,
    example76_block,
    example77_sequence,
)
from .polynomials import Polynomial, parse_polynomial
from .quadratics import QuadraticIrrational, parse_sigma
from .transforms import ExplicitSequence, Move, PeriodicSequence, TransformSequence

FAMILY_KINDS = ("example76", "example77", "cic3d", "fibonacci", "fibonacci3d", "directional")
LIST_KINDS = ("explicit", "periodic")

_FAMILY_DIMS = {
    "example76": 2,
    "example77": 2,
    "cic3d": 3,
    "fibonacci": 2,
    "fibonacci3d": 3,
    "directional": 2,
}


@dataclass
class RunConfig:
    dim: int = 2
    var_names: list = field(default_factory=lambda: ["x", "y"])
    kind: str = "directional"
    moves: list = field(default_factory=list)  # raw move dicts for explicit/periodic
    sigma: Optional[str] = None
    elements: list = field(default_factory=list)  # raw expressions
    normalizer: Optional[str] = None
    uniformizer: Optional[str] = None
    horizon: int = 64
    window: int = 8
    guard: int = 10**6
    blocks: int = 3
    output_format: str = "text"
    output_path: Optional[str] = None

    def validate(self) -> None:
        if self.dim < 2:
            raise ConfigError(f"ring.dim must be >= 2, got {self.dim}")
        if len(self.var_names) != self.dim:
            raise ConfigError(
                f"ring.vars lists {len(self.var_names)} names for dim {self.dim}"
            )
        if self.kind not in FAMILY_KINDS + LIST_KINDS:
            raise ConfigError(f"sequence.kind {self.kind!r} unknown")
        if self.kind in LIST_KINDS and not self.moves:
            raise ConfigError(f"sequence.kind {self.kind!r} requires sequence.moves")
        if self.kind in ("example76", "example77", "cic3d") and not self.sigma:
            raise ConfigError(f"sequence.kind {self.kind!r} requires sequence.sigma")
        if self.horizon < 2:
            raise ConfigError("query.horizon must be >= 2")
        if not 2 <= self.window <= self.horizon:
            raise ConfigError("query.window must satisfy 2 <= window <= horizon")
        if self.guard < 1:
            raise ConfigError("query.guard must be positive")
        if self.output_format not in ("text", "csv"):
            raise ConfigError(f"output.format {self.output_format!r} must be text or csv")

    # -- realized objects ---------------------------------------------------

    def sigma_value(self) -> QuadraticIrrational:
        if not self.sigma:
            raise ConfigError("sequence.sigma missing")
        try:
            return parse_sigma(self.sigma)
        except LabError as exc:
            raise ConfigError(f"sequence.sigma: {exc}") from exc

    def build_sequence(self) -> TransformSequence:
        if self.kind in LIST_KINDS:
            moves = [self._parse_move(i, raw) for i, raw in enumerate(self.moves)]
            cls = ExplicitSequence if self.kind == "explicit" else PeriodicSequence
            return cls(self.dim, moves, self.var_names)
        try:
            if self.kind == "example76":
                moves, _ = example76_block(self.sigma_value())
                return ExplicitSequence(2, moves, self.var_names)
            if self.kind == "example77":
                return example77_sequence(self.sigma_value())
            if self.kind == "cic3d":
                return cic3d_sequence(self.sigma_value())
            return builtin_family(self.kind)
        except LabError as exc:
            raise ConfigError(f"sequence: {exc}") from exc

    def _parse_move(self, index: int, raw) -> Move:
        if not isinstance(raw, dict) or "pivot" not in raw:
            raise ConfigError(f"sequence.moves[{index}] must be a table with a pivot")
        pivot_name = raw["pivot"]
        if pivot_name not in self.var_names:
            raise ConfigError(
                f"sequence.moves[{index}].pivot {pivot_name!r} is not a ring variable"
            )
        shifts = [Fraction(0)] * self.dim
        for name, value in (raw.get("shifts") or {}).items():
            if name not in self.var_names:
                raise ConfigError(
                    f"sequence.moves[{index}].shifts names unknown variable {name!r}"
                )
            try:
                shifts[self.var_names.index(name)] = Fraction(str(value))
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(
                    f"sequence.moves[{index}].shifts[{name}]: bad rational {value!r}"
                ) from exc
        try:
            return Move(self.var_names.index(pivot_name), tuple(shifts))
        except (LabError, ValueError) as exc:
            raise ConfigError(f"sequence.moves[{index}]: {exc}") from exc

    def parse_element(self, text: str) -> Polynomial:
        try:
            poly = parse_polynomial(text, self.var_names)
        except LabError as exc:
            raise ConfigError(f"element {text!r}: {exc}") from exc
        return poly

    def parsed_elements(self) -> list:
        return [self.parse_element(text) for text in self.elements]

    def parsed_normalizer(self) -> Optional[Polynomial]:
        if not self.normalizer:
            return None
        poly = self.parse_element(self.normalizer)
        if poly.is_zero():
            raise ConfigError("normalizer parses to zero")
        return poly

    def parsed_uniformizer(self) -> Optional[Polynomial]:
        if not self.uniformizer:
            return None
        return self.parse_element(self.uniformizer)


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "rb") as fp:
            data = tomllib.load(fp)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config {path}: {exc}") from exc
    return config_from_dict(data)


def config_from_dict(data: dict) -> RunConfig:
    cfg = RunConfig()
    ring = data.get("ring", {})
    sequence = data.get("sequence", {})
    query = data.get("query", {})
    output = data.get("output", {})

    if "kind" in sequence:
        cfg.kind = str(sequence["kind"])
    if "dim" in ring:
        cfg.dim = int(ring["dim"])
    elif cfg.kind in _FAMILY_DIMS:
        cfg.dim = _FAMILY_DIMS[cfg.kind]
    if "vars" in ring:
        cfg.var_names = [str(v) for v in ring["vars"]]
    else:
        cfg.var_names = ["x", "y", "z"][: cfg.dim] if cfg.dim <= 3 else [
            f"x{i}" for i in range(cfg.dim)
        ]
    cfg.moves = list(sequence.get("moves", []))
    cfg.sigma = sequence.get("sigma")
    cfg.elements = [str(e) for e in query.get("elements", [])]
    cfg.normalizer = query.get("normalizer")
    cfg.uniformizer = query.get("uniformizer")
    cfg.horizon = int(query.get("horizon", cfg.horizon))
    cfg.window = int(query.get("window", cfg.window))
    cfg.guard = int(query.get("guard", cfg.guard))
    cfg.blocks = int(query.get("blocks", cfg.blocks))
    cfg.output_format = str(output.get("format", cfg.output_format))
    cfg.output_path = output.get("path")
    return cfg


def apply_overrides(cfg: RunConfig, args) -> RunConfig:
    """Fold parsed CLI flags into the config; flags win."""
    if getattr(args, "family", None):
        cfg.kind = args.family
        if cfg.kind in _FAMILY_DIMS:
            cfg.dim = _FAMILY_DIMS[cfg.kind]
            cfg.var_names = ["x", "y", "z"][: cfg.dim]
    if getattr(args, "sigma", None):
        cfg.sigma = args.sigma
    if getattr(args, "element", None):
        cfg.elements = list(args.element)
    if getattr(args, "normalizer", None):
        cfg.normalizer = args.normalizer
    if getattr(args, "uniformizer", None):
        cfg.uniformizer = args.uniformizer
    for name in ("horizon", "window", "guard", "blocks"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if getattr(args, "format", None):
        cfg.output_format = args.format
    if getattr(args, "csv", None):
        cfg.output_path = args.csv
    return cfg
