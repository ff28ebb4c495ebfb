"""Recurrent temporal inference: smoothed averages, sudden-shift
detection and crescendo anticipation (hype).

The system feeds its own previous outputs back as inputs: the smoothed
averages enter the next cycle's difference features, and the drummer's
previous intensity/complexity feed the slope regressions.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .features import FeatureFrame
from .fuzzy import RuleBase, run_fis

VELOCITY_SPAN = 127.0  # average-update scale: new = old + change * span


def regression_slope(points: Sequence[tuple[float, float]]) -> float:
    """Ordinary least-squares slope in units per second; 0 for fewer than
    two points or coincident timestamps."""
    n = len(points)
    if n < 2:
        return 0.0
    mean_t = sum(t for t, _ in points) / n
    mean_v = sum(v for _, v in points) / n
    sxx = sum((t - mean_t) ** 2 for t, _ in points)
    if sxx == 0.0:
        return 0.0
    sxy = sum((t - mean_t) * (v - mean_v) for t, v in points)
    return sxy / sxx


@dataclass(frozen=True)
class TemporalConfig:
    k_slope_points: int = 8
    shift_threshold: float = 0.5
    trend_window_seconds: float = 16.0  # 8 bars at the default bar period
    resolution: int = 1001
    sentinel_seconds: float = 3600.0


@dataclass(frozen=True)
class TemporalState:
    avg_velocity_slow: float = 0.0
    avg_velocity_fast: float = 0.0
    avg_density_low: float = 0.0
    avg_density_high: float = 0.0
    avg_density_full: float = 0.0
    intensity_history: tuple[tuple[float, float], ...] = ()
    complexity_history: tuple[tuple[float, float], ...] = ()
    trend_history: tuple[tuple[float, float], ...] = ()
    last_shift_up: Optional[float] = None
    last_shift_down: Optional[float] = None
    last_outputs: Optional["TemporalOutputs"] = None


@dataclass(frozen=True)
class TemporalOutputs:
    change_velocity_slow: float
    change_velocity_fast: float
    change_density_low: float
    change_density_high: float
    change_density_full: float
    sudden_shift: float
    hype: float
    # derived values carried to the control stage
    avg_velocity_slow: float
    avg_velocity_fast: float
    avg_density_low: float
    avg_density_high: float
    avg_density_full: float
    time_since_shift_up: float
    time_since_shift_down: float
    velocity_trend_up: bool  # velocity rising over the trend window


_CHANGE_OUTPUTS = (
    ("change_velocity_slow", "Change Velocity Slow"),
    ("change_velocity_fast", "Change Velocity Fast"),
    ("change_density_low", "Change Density Low"),
    ("change_density_high", "Change Density High"),
    ("change_density_full", "Change Density Full"),
)


class TemporalSystem:
    """Owns the temporal rule base; state is passed in and out of step()."""

    def __init__(self, rulebase: RuleBase, config: TemporalConfig | None = None):
        self.rulebase = rulebase
        self.config = config or TemporalConfig()

    def initial_state(self) -> TemporalState:
        return TemporalState()

    def step(
        self,
        frame: FeatureFrame,
        prev: TemporalState,
        prev_intensity: float,
        prev_complexity: float,
    ) -> tuple[TemporalOutputs, TemporalState]:
        cfg = self.config
        now = frame.cycle_time
        k = cfg.k_slope_points
        intensity_history = (prev.intensity_history + ((now, prev_intensity),))[-k:]
        complexity_history = (prev.complexity_history + ((now, prev_complexity),))[-k:]

        inputs = {
            "Velocity Difference": frame.velocity_sum - prev.avg_velocity_slow,
            "Density Difference Low": frame.density_low - prev.avg_density_low,
            "Density Difference High": frame.density_high - prev.avg_density_high,
            "Density Difference Full": frame.density_full - prev.avg_density_full,
            "Newer Velocity Average": frame.newer_avg,
            "Older Velocity Average": frame.older_avg,
            "Intensity": prev_intensity,
            "Complexity": prev_complexity,
            "Intensity Slope": regression_slope(intensity_history),
            "Complexity Slope": regression_slope(complexity_history),
        }
        result = run_fis(self.rulebase, inputs, resolution=cfg.resolution)

        def held(attr: str, var: str, default: float = 0.0) -> float:
            value = result.outputs.get(var)
            if value is None:  # no rule fired: hold the previous output
                if prev.last_outputs is not None:
                    return getattr(prev.last_outputs, attr)
                return default
            return float(value)

        changes = {attr: held(attr, var) for attr, var in _CHANGE_OUTPUTS}
        sudden_shift = held("sudden_shift", "Sudden Shift")
        hype_raw = result.outputs.get("Hype")
        hype = float(hype_raw) if hype_raw is not None else 0.0

        def updated(old: float, change: float) -> float:
            return min(max(old + change * VELOCITY_SPAN, 0.0), 127.0)

        avg_velocity_slow = updated(prev.avg_velocity_slow, changes["change_velocity_slow"])
        avg_velocity_fast = updated(prev.avg_velocity_fast, changes["change_velocity_fast"])
        avg_density_low = updated(prev.avg_density_low, changes["change_density_low"])
        avg_density_high = updated(prev.avg_density_high, changes["change_density_high"])
        avg_density_full = updated(prev.avg_density_full, changes["change_density_full"])

        last_shift_up = prev.last_shift_up
        last_shift_down = prev.last_shift_down
        if sudden_shift > cfg.shift_threshold:
            last_shift_up = now
        elif sudden_shift < -cfg.shift_threshold:
            last_shift_down = now

        horizon = now - cfg.trend_window_seconds
        trend_history = tuple(
            p for p in (prev.trend_history + ((now, avg_velocity_slow),)) if p[0] >= horizon
        )

        outputs = TemporalOutputs(
            **changes,
            sudden_shift=sudden_shift,
            hype=hype,
            avg_velocity_slow=avg_velocity_slow,
            avg_velocity_fast=avg_velocity_fast,
            avg_density_low=avg_density_low,
            avg_density_high=avg_density_high,
            avg_density_full=avg_density_full,
            time_since_shift_up=(
                now - last_shift_up if last_shift_up is not None else cfg.sentinel_seconds
            ),
            time_since_shift_down=(
                now - last_shift_down if last_shift_down is not None else cfg.sentinel_seconds
            ),
            velocity_trend_up=regression_slope(trend_history) >= 0.0,
        )
        state = replace(
            prev,
            avg_velocity_slow=avg_velocity_slow,
            avg_velocity_fast=avg_velocity_fast,
            avg_density_low=avg_density_low,
            avg_density_high=avg_density_high,
            avg_density_full=avg_density_full,
            intensity_history=intensity_history,
            complexity_history=complexity_history,
            trend_history=trend_history,
            last_shift_up=last_shift_up,
            last_shift_down=last_shift_down,
            last_outputs=outputs,
        )
        return outputs, state

    def detect_sudden_shift(self, newer_avg: float, older_avg: float) -> float:
        """Crisp sudden-shift value in (-1, 1) for a pair of window
        averages (the sub-inference of step(), exposed for testing)."""
        inputs = {
            "Velocity Difference": 0.0,
            "Density Difference Low": 0.0,
            "Density Difference High": 0.0,
            "Density Difference Full": 0.0,
            "Newer Velocity Average": newer_avg,
            "Older Velocity Average": older_avg,
            "Intensity": 0.0,
            "Complexity": 0.0,
            "Intensity Slope": 0.0,
            "Complexity Slope": 0.0,
        }
        result = run_fis(self.rulebase, inputs, resolution=self.config.resolution)
        value = result.outputs.get("Sudden Shift")
        return float(value) if value is not None else 0.0
