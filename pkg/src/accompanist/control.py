"""Control inference: intensity, complexity, pattern, mute and unmute.

Inference runs in two stages per cycle: stage 1 defuzzifies Intensity
and Complexity, stage 2 feeds those crisp values straight back in and
selects Pattern, Mute and Unmute categorically.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import catalogs
from .features import FeatureFrame
from .fuzzy import (
    DefinitionError,
    LinguisticVariable,
    RuleBase,
    Singleton,
    run_fis,
)
from .temporal import TemporalOutputs

PLAY, STOP = "Play", "Stop"
NO_CHANGE = catalogs.NO_CHANGE


def infer_mode(time_since_last_note: float, stop_threshold: float = 6.0) -> str:
    """Crisp play/stop decision: Play while the last note is recent."""
    return PLAY if time_since_last_note < stop_threshold else STOP


def build_bar_terms(bar_period: float, epsilon: float):
    return catalogs.build_bar_terms(bar_period, epsilon)


@dataclass(frozen=True)
class ControlConfig:
    stop_threshold_seconds: float = 6.0
    epsilon_bar_seconds: float = 0.01
    bar_period_seconds: float = 2.0
    resolution: int = 1001


@dataclass(frozen=True)
class DrumState:
    historic_pattern: str = "None"
    historic_mute: str = "None"
    historic_mode: str = STOP
    current_mode: str = STOP
    last_intensity: float = 0.0
    last_complexity: float = 0.0


@dataclass(frozen=True)
class ControlOutputs:
    intensity: float
    complexity: float
    pattern: str
    mute: str
    unmute: str


class ControlSystem:
    """Owns the control rule base, rebuilt for the configured bar period."""

    def __init__(self, rulebase: RuleBase, config: ControlConfig | None = None):
        self.config = config or ControlConfig()
        rulebase = self._rebuild_time_variables(rulebase)
        self.rulebase = rulebase
        # intensity is defuzzified first; complexity rules may then read the
        # crisp intensity in the same cycle, and stage 2 reads both
        self.stage1_intensity = rulebase.select(["Intensity"], name=f"{rulebase.name}/intensity")
        self.stage1_complexity = rulebase.select(["Complexity"], name=f"{rulebase.name}/complexity")
        self.stage2 = rulebase.select(catalogs.STAGE2_OUTPUTS, name=f"{rulebase.name}/stage2")
        self._check_outputs()
        self._historic_values = {
            name: value for name, value in catalogs.HISTORIC_PATTERN_CATEGORIES
        }
        self._mute_values = {name: value for name, value in catalogs.MUTE_CATEGORIES}

    def _rebuild_time_variables(self, rulebase: RuleBase) -> RuleBase:
        """Recompute the bar-position terms for the configured bar period,
        replacing whatever the rule file declared (typically the defaults)."""
        t, eps = self.config.bar_period_seconds, self.config.epsilon_bar_seconds
        variables = dict(rulebase.variables)
        variables["Bar"] = LinguisticVariable(
            name="Bar", lo=0.0, hi=32 * t, terms=catalogs.build_bar_terms(t, eps)
        )
        variables["Time In Bar"] = LinguisticVariable(
            name="Time In Bar", lo=0.0, hi=t + eps,
            terms={"Last Quarter": catalogs.build_time_in_bar_term(t, eps)},
        )
        return RuleBase(
            name=rulebase.name, variables=variables,
            rules=rulebase.rules, version=rulebase.version,
        )

    def _check_outputs(self):
        for var in catalogs.STAGE1_OUTPUTS:
            if self.rulebase.variables[var].is_categorical:
                raise DefinitionError(f"output {var!r} must be continuous")
        for var in catalogs.STAGE2_OUTPUTS:
            if not self.rulebase.variables[var].is_categorical:
                raise DefinitionError(f"output {var!r} must be categorical (all singletons)")

    def initial_state(self) -> DrumState:
        return DrumState()

    def step(
        self, frame: FeatureFrame, temporal: TemporalOutputs, drum: DrumState
    ) -> tuple[ControlOutputs, DrumState, list[tuple[str, float]]]:
        cfg = self.config
        t = cfg.bar_period_seconds
        mode_now = infer_mode(frame.time_since_last_note, cfg.stop_threshold_seconds)
        bar_position = (frame.bar_in_32 * t + frame.time_in_bar)

        common = {
            "Time Since Last Note": frame.time_since_last_note,
            "Full Range Density": frame.density_full,
            "Low Range Density": frame.density_low,
            "High Range Density": frame.density_high,
            "Pedal Status": 0.0 if frame.pedal_down else 1.0,
            "Time Since Pedal": frame.time_since_pedal,
            "Average Velocity": temporal.avg_velocity_slow,
            "Intensity Shift": temporal.sudden_shift,
            "Time Since Shift Up": temporal.time_since_shift_up,
            "Time Since Shift Down": temporal.time_since_shift_down,
        }

        stage1a = run_fis(self.stage1_intensity, common, resolution=cfg.resolution)
        raw_intensity = stage1a.outputs.get("Intensity")
        intensity = float(raw_intensity) if raw_intensity is not None else drum.last_intensity
        stage1b = run_fis(
            self.stage1_complexity,
            {**common, "Intensity": intensity},
            resolution=cfg.resolution,
        )
        raw_complexity = stage1b.outputs.get("Complexity")
        complexity = (
            float(raw_complexity) if raw_complexity is not None else drum.last_complexity
        )

        stage2_inputs = {
            **common,
            "Current Mode": 1.0 if mode_now == PLAY else 0.0,
            "Historic Mode": 1.0 if drum.current_mode == PLAY else 0.0,
            "Historic Pattern": float(self._historic_values[drum.historic_pattern]),
            "Historic Mute": float(self._mute_values[drum.historic_mute]),
            "Intensity": intensity,
            "Complexity": complexity,
            "Bar": bar_position,
            "Change Velocity": 1.0 if temporal.velocity_trend_up else 0.0,
            "Hype": temporal.hype,
            "Time In Bar": frame.time_in_bar,
        }
        stage2 = run_fis(self.stage2, stage2_inputs, resolution=cfg.resolution)
        pattern = stage2.outputs.get("Pattern") or NO_CHANGE
        mute = stage2.outputs.get("Mute") or "None"
        unmute = stage2.outputs.get("Unmute") or "None"

        outputs = ControlOutputs(
            intensity=intensity,
            complexity=complexity,
            pattern=str(pattern),
            mute=str(mute),
            unmute=str(unmute),
        )
        new_state = replace(
            drum,
            historic_mode=drum.current_mode,
            current_mode=mode_now,
            historic_pattern=(
                outputs.pattern
                if outputs.pattern in self._historic_values
                else drum.historic_pattern
            ),
            historic_mute=self._next_mute(drum.historic_mute, outputs.mute, outputs.unmute),
            last_intensity=intensity,
            last_complexity=complexity,
        )
        fired = stage1a.fired + stage1b.fired + stage2.fired
        return outputs, new_state, fired

    def _next_mute(self, historic: str, mute: str, unmute: str) -> str:
        """Apply the cycle's mute then unmute to the drum-kit mute state.

        Mute names the new mute level directly; unmute lifts the named
        level one step down the None < Kick < Kick and Snare ladder
        (snare is restored before the kick)."""
        state = historic
        if mute != "None":
            state = mute
        if unmute != "None" and unmute == state:
            values = self._mute_values
            names = {v: k for k, v in values.items()}
            state = names[values[state] - 1]
        return state
