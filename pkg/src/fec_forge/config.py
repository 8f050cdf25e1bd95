"""Pipeline configuration: TOML file + flag overrides + provenance hash.

Defaults reproduce the published pipeline settings (mask ratio 0.30,
top-2 evidence, beam 5, source/target budgets 512/256, t_l 0.3, t_c 0.2),
so an empty config file is a valid starting point. Command-line flags win
over file values. Unknown keys are rejected by name so typos never pass
silently.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from fec_forge.corruption import GenerationConfig
from fec_forge.errors import ConfigError
from fec_forge.masking import Granularity, MaskConfig, Strategy


@dataclass(frozen=True)
class BackendSettings:
    """One base URL serves both /generate and /classify."""

    base_url: str = ""
    timeout: float = 30.0
    max_in_flight: int = 4
    retries: int = 3
    backoff: float = 0.5
    batch_size: int = 16


@dataclass
class PipelineConfig:
    seed: int = 0
    parallelism: int = 1
    mock: bool = False
    masking: MaskConfig = field(
        default_factory=lambda: MaskConfig(strategy=Strategy.RANDOM)
    )
    generation: GenerationConfig = field(default_factory=GenerationConfig)
    t_l: float = 0.3
    t_c: float = 0.2
    backend: BackendSettings = field(default_factory=BackendSettings)

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "parallelism": self.parallelism,
            "mock": self.mock,
            "masking": {
                "strategy": self.masking.strategy.value,
                "ratio": self.masking.ratio,
                "granularity": self.masking.granularity.value,
                "merge_adjacent": self.masking.merge_adjacent,
            },
            "generation": {
                "beam_size": self.generation.beam_size,
                "max_source_length": self.generation.max_source_length,
                "max_target_length": self.generation.max_target_length,
                "top_k_evidence": self.generation.top_k_evidence,
                "separator": self.generation.separator,
                "length_unit": self.generation.length_unit,
            },
            "filtering": {"t_l": self.t_l, "t_c": self.t_c},
            "backend": {
                "base_url": self.backend.base_url,
                "timeout": self.backend.timeout,
                "max_in_flight": self.backend.max_in_flight,
                "retries": self.backend.retries,
                "backoff": self.backend.backoff,
                "batch_size": self.backend.batch_size,
            },
        }

    def provenance_dict(self) -> dict:
        """The settings that shape emitted data.

        Execution knobs (parallelism, timeouts, retry policy, batching) are
        excluded: the same corpus and seed must hash the same no matter how
        the run was scheduled.
        """
        full = self.as_dict()
        del full["parallelism"]
        full["backend"] = {"base_url": self.backend.base_url}
        return full


def config_hash(cfg: PipelineConfig) -> str:
    """Short stable digest of the data-shaping configuration, for provenance."""
    canonical = json.dumps(cfg.provenance_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


_TOP_KEYS = {"seed", "parallelism", "mock", "masking", "generation", "filtering", "backend"}
_SECTION_KEYS = {
    "masking": {"strategy", "ratio", "granularity", "merge_adjacent"},
    "generation": {
        "beam_size",
        "max_source_length",
        "max_target_length",
        "top_k_evidence",
        "separator",
        "length_unit",
    },
    "filtering": {"t_l", "t_c"},
    "backend": {f.name for f in fields(BackendSettings)},
}


def _check_keys(section_name: str, obj: dict, allowed: set[str]) -> None:
    for key in obj:
        if key not in allowed:
            where = f"{section_name}.{key}" if section_name else key
            raise ConfigError(f"unknown config key: {where}")


def load_config_file(path: str | Path) -> dict:
    """Parse the TOML config file into a validated plain dict."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    _check_keys("", data, _TOP_KEYS)
    for section, allowed in _SECTION_KEYS.items():
        if section in data:
            if not isinstance(data[section], dict):
                raise ConfigError(f"config section [{section}] must be a table")
            _check_keys(section, data[section], allowed)
    return data


def resolve_config(
    config_path: str | Path | None = None, overrides: dict | None = None
) -> PipelineConfig:
    """defaults < config file < flag overrides.

    Overrides use dotted keys matching the file layout, e.g.
    {"masking.ratio": 0.25, "seed": 7}; None values are ignored so unset
    flags never clobber file values.
    """
    data: dict = {}
    if config_path is not None:
        data = load_config_file(config_path)

    def pick(section: str | None, key: str, default):
        dotted = f"{section}.{key}" if section else key
        if overrides and overrides.get(dotted) is not None:
            return overrides[dotted]
        table = data.get(section, {}) if section else data
        return table.get(key, default)

    try:
        masking = MaskConfig(
            strategy=Strategy(pick("masking", "strategy", "random")),
            ratio=float(pick("masking", "ratio", 0.30)),
            granularity=Granularity(pick("masking", "granularity", "word")),
            merge_adjacent=bool(pick("masking", "merge_adjacent", False)),
            seed=int(pick(None, "seed", 0)),
        )
        generation = GenerationConfig(
            beam_size=int(pick("generation", "beam_size", 5)),
            max_source_length=int(pick("generation", "max_source_length", 512)),
            max_target_length=int(pick("generation", "max_target_length", 256)),
            top_k_evidence=int(pick("generation", "top_k_evidence", 2)),
            separator=str(pick("generation", "separator", "</s>")),
            length_unit=str(pick("generation", "length_unit", "words")),
        )
        backend = BackendSettings(
            base_url=str(pick("backend", "base_url", "")),
            timeout=float(pick("backend", "timeout", 30.0)),
            max_in_flight=int(pick("backend", "max_in_flight", 4)),
            retries=int(pick("backend", "retries", 3)),
            backoff=float(pick("backend", "backoff", 0.5)),
            batch_size=int(pick("backend", "batch_size", 16)),
        )
        return PipelineConfig(
            seed=int(pick(None, "seed", 0)),
            parallelism=int(pick(None, "parallelism", 1)),
            mock=bool(pick(None, "mock", False)),
            masking=masking,
            generation=generation,
            t_l=float(pick("filtering", "t_l", 0.3)),
            t_c=float(pick("filtering", "t_c", 0.2)),
            backend=backend,
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid config value: {exc}") from None
