"""Runtime configuration: key-value file loading with packaged defaults."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

from ..control import ControlConfig
from ..features import FeatureConfig
from ..temporal import TemporalConfig


class ConfigError(ValueError):
    pass


def packaged_data_path(name: str) -> Path:
    return Path(str(resources.files("accompanist").joinpath("data", name)))


@dataclass
class RuntimeConfig:
    cycle_period: float = 0.05
    bpm: float = 120.0
    beats_per_bar: int = 4
    slots_per_bar: int = 16
    register_split_note: int = 60
    window_t_seconds: float = 4.0
    no_note_sentinel_seconds: float = 3600.0
    k_slope_points: int = 8
    shift_threshold: float = 0.5
    trend_window_seconds: float = 16.0
    stop_threshold_seconds: float = 6.0
    epsilon_bar_seconds: float = 0.01
    defuzz_resolution: int = 1001
    tail_bars: float = 8.0
    trace_log_threshold: float = 0.05
    temporal_rules: Path = field(default_factory=lambda: packaged_data_path("temporal.rules"))
    control_rules: Path = field(default_factory=lambda: packaged_data_path("control.rules"))
    mapping: Path = field(default_factory=lambda: packaged_data_path("strike2.mapping"))

    def __post_init__(self):
        if self.cycle_period <= 0:
            raise ConfigError("cycle_period must be positive")
        if self.bpm <= 0 or self.beats_per_bar <= 0 or self.slots_per_bar <= 0:
            raise ConfigError("bpm, beats_per_bar and slots_per_bar must be positive")
        for path_key in ("temporal_rules", "control_rules", "mapping"):
            path = getattr(self, path_key)
            if not Path(path).is_file():
                raise ConfigError(f"{path_key}: file not found: {path}")

    @property
    def bar_period(self) -> float:
        return self.beats_per_bar * 60.0 / self.bpm

    def feature_config(self) -> FeatureConfig:
        return FeatureConfig(
            bpm=self.bpm,
            beats_per_bar=self.beats_per_bar,
            slots_per_bar=self.slots_per_bar,
            register_split_note=self.register_split_note,
            window_t_seconds=self.window_t_seconds,
            no_note_sentinel_seconds=self.no_note_sentinel_seconds,
        )

    def temporal_config(self) -> TemporalConfig:
        return TemporalConfig(
            k_slope_points=self.k_slope_points,
            shift_threshold=self.shift_threshold,
            trend_window_seconds=self.trend_window_seconds,
            resolution=self.defuzz_resolution,
            sentinel_seconds=self.no_note_sentinel_seconds,
        )

    def control_config(self) -> ControlConfig:
        return ControlConfig(
            stop_threshold_seconds=self.stop_threshold_seconds,
            epsilon_bar_seconds=self.epsilon_bar_seconds,
            bar_period_seconds=self.bar_period,
            resolution=self.defuzz_resolution,
        )


_INT_KEYS = {"beats_per_bar", "slots_per_bar", "register_split_note",
             "k_slope_points", "defuzz_resolution"}
_PATH_KEYS = {"temporal_rules", "control_rules", "mapping"}


def load_config(path: "str | Path | None") -> RuntimeConfig:
    """Parse a key-value config file; None loads the packaged defaults."""
    if path is None:
        return RuntimeConfig()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    known = {f.name for f in fields(RuntimeConfig)}
    values: dict = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if key in _PATH_KEYS:
                values[key] = (path.parent / value).resolve()
            elif key in _INT_KEYS:
                values[key] = int(value)
            else:
                values[key] = float(value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    try:
        return RuntimeConfig(**values)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
