"""Run configuration: one flat JSON object merged with command-line overrides."""
import json
from dataclasses import dataclass, field, fields, replace

from .color_saliency import ColorSaliencyConfig
from .dmd import DmdConfig
from .errors import ConfigError
from .luminance_saliency import LuminanceConfig
from .pipeline import PipelineConfig

_SECTIONS = {
    "dmd": DmdConfig,
    "color": ColorSaliencyConfig,
    "luminance": LuminanceConfig,
    "pipeline": PipelineConfig,
}


@dataclass(frozen=True)
class RunConfig:
    dmd: DmdConfig = field(default_factory=DmdConfig)
    color: ColorSaliencyConfig = field(default_factory=ColorSaliencyConfig)
    luminance: LuminanceConfig = field(default_factory=LuminanceConfig)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    beta_squared: float = 0.3

    def __post_init__(self):
        if not self.beta_squared > 0:
            raise ConfigError(f"beta_squared must be > 0, got {self.beta_squared}")

    @classmethod
    def keys(cls):
        out = {"beta_squared": None}
        for section, klass in _SECTIONS.items():
            for f in fields(klass):
                out[f.name] = section
        return out

    @classmethod
    def from_mapping(cls, values, base=None):
        """Overlay flat ``values`` on ``base`` (defaults); unknown keys are rejected."""
        base = base or cls()
        known = cls.keys()
        unknown = sorted(set(values) - set(known))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        updates = {s: {} for s in _SECTIONS}
        for key, value in values.items():
            section = known[key]
            if section is not None:
                updates[section][key] = value
        try:
            sections = {
                s: replace(getattr(base, s), **kv) if kv else getattr(base, s)
                for s, kv in updates.items()
            }
            return cls(beta_squared=values.get("beta_squared", base.beta_squared), **sections)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, path):
        try:
            with open(path) as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(values, dict):
            raise ConfigError("config file must hold a JSON object")
        return cls.from_mapping(values)

    def to_dict(self):
        out = {}
        for section in _SECTIONS:
            obj = getattr(self, section)
            for f in fields(obj):
                v = getattr(obj, f.name)
                out[f.name] = list(v) if isinstance(v, tuple) else v
        out["beta_squared"] = self.beta_squared
        return out
