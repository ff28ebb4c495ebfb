"""Per-cycle trace records: one flat comma-separated row per cycle with
fixed 6-decimal float formatting, so traces are diffable golden files."""

from __future__ import annotations

from typing import IO

from ..control import ControlOutputs
from ..features import FeatureFrame
from ..temporal import TemporalOutputs

TRACE_COLUMNS = (
    "cycle", "time",
    "velocity_sum", "density_low", "density_high", "density_full",
    "pedal_down", "time_since_last_note", "time_since_pedal",
    "bar_index", "bar_in_32", "time_in_bar", "newer_avg", "older_avg",
    "change_velocity_slow", "change_velocity_fast",
    "change_density_low", "change_density_high", "change_density_full",
    "sudden_shift", "hype",
    "avg_velocity_slow", "avg_velocity_fast",
    "avg_density_low", "avg_density_high", "avg_density_full",
    "time_since_shift_up", "time_since_shift_down", "velocity_trend_up",
    "intensity", "complexity", "pattern", "mute", "unmute",
    "fired",
)


def _f(x: float) -> str:
    return f"{x:.6f}"


class TraceWriter:
    def __init__(self, stream: IO[str], log_threshold: float = 0.05):
        self.stream = stream
        self.log_threshold = log_threshold
        self.stream.write(",".join(TRACE_COLUMNS) + "\n")

    def record(
        self,
        cycle: int,
        frame: FeatureFrame,
        temporal: TemporalOutputs,
        control: ControlOutputs,
        fired: list[tuple[str, float]],
    ) -> None:
        # commas stripped from labels to keep the row flat comma-separated
        labels = ";".join(
            f"{label.replace(',', ' ')}:{strength:.3f}"
            for label, strength in fired
            if strength >= self.log_threshold
        )
        row = (
            str(cycle), _f(frame.cycle_time),
            _f(frame.velocity_sum), _f(frame.density_low), _f(frame.density_high),
            _f(frame.density_full),
            str(int(frame.pedal_down)), _f(frame.time_since_last_note),
            _f(frame.time_since_pedal),
            str(frame.bar_index), str(frame.bar_in_32), _f(frame.time_in_bar),
            _f(frame.newer_avg), _f(frame.older_avg),
            _f(temporal.change_velocity_slow), _f(temporal.change_velocity_fast),
            _f(temporal.change_density_low), _f(temporal.change_density_high),
            _f(temporal.change_density_full),
            _f(temporal.sudden_shift), _f(temporal.hype),
            _f(temporal.avg_velocity_slow), _f(temporal.avg_velocity_fast),
            _f(temporal.avg_density_low), _f(temporal.avg_density_high),
            _f(temporal.avg_density_full),
            _f(temporal.time_since_shift_up), _f(temporal.time_since_shift_down),
            str(int(temporal.velocity_trend_up)),
            _f(control.intensity), _f(control.complexity),
            control.pattern, control.mute, control.unmute,
            labels,
        )
        self.stream.write(",".join(row) + "\n")
