"""Streaming feature extraction from incoming MIDI events.

One :class:`FeatureExtractor` instance is owned by the runtime loop; it
ingests decoded events and produces a crisp :class:`FeatureFrame` once
per clock cycle.  The bar clock is anchored at the first note, which is
assumed to arrive on the first beat.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class NoteOn:
    note: int
    velocity: int
    timestamp: float


@dataclass(frozen=True)
class NoteOff:
    note: int
    timestamp: float


@dataclass(frozen=True)
class SustainPedal:
    down: bool
    timestamp: float


MidiEventIn = Union[NoteOn, NoteOff, SustainPedal]

REGISTERS = ("low", "high", "full")


@dataclass(frozen=True)
class FeatureConfig:
    bpm: float = 120.0
    beats_per_bar: int = 4
    slots_per_bar: int = 16
    register_split_note: int = 60
    window_t_seconds: float = 4.0
    no_note_sentinel_seconds: float = 3600.0

    @property
    def bar_period(self) -> float:
        return self.beats_per_bar * 60.0 / self.bpm


@dataclass(frozen=True)
class FeatureFrame:
    cycle_time: float
    velocity_sum: float  # per-cycle sum of NoteOn velocities, clamped to 127
    density_low: float
    density_high: float
    density_full: float
    pedal_down: bool
    time_since_last_note: float
    time_since_pedal: float  # since last pedal-down press
    bar_index: int
    bar_in_32: int
    time_in_bar: float
    newer_avg: float
    older_avg: float


class FeatureExtractor:
    """Single-writer streaming state over the incoming event sequence."""

    def __init__(self, config: FeatureConfig | None = None):
        self.config = config or FeatureConfig()
        self._notes: deque[tuple[float, int, int]] = deque()  # (t, note, velocity)
        self._velocities: deque[tuple[float, int]] = deque()  # (t, velocity)
        self._pedal_down = False
        self._last_note_time: float | None = None
        self._first_note_time: float | None = None
        self._pedal_down_time: float | None = None
        self._cycle_velocity_sum = 0
        self._last_event_time = -float("inf")
        self.dropped_events = 0

    @property
    def bar_origin(self) -> float | None:
        return self._first_note_time

    def ingest(self, event: MidiEventIn) -> None:
        """Fold one event into the state.  Out-of-order events are dropped
        and counted (live MIDI jitter tolerance)."""
        if event.timestamp < self._last_event_time:
            self.dropped_events += 1
            return
        self._last_event_time = event.timestamp
        if isinstance(event, NoteOn) and event.velocity > 0:
            t = event.timestamp
            self._notes.append((t, event.note, event.velocity))
            self._velocities.append((t, event.velocity))
            self._cycle_velocity_sum += event.velocity
            self._last_note_time = t
            if self._first_note_time is None:
                self._first_note_time = t
        elif isinstance(event, SustainPedal):
            if event.down and not self._pedal_down:
                self._pedal_down_time = event.timestamp
            self._pedal_down = event.down
        # NoteOff (and NoteOn velocity 0, by MIDI convention) carries no
        # feature information

    def _prune(self, now: float) -> None:
        horizon = now - max(self.config.bar_period, self.config.window_t_seconds)
        while self._notes and self._notes[0][0] < horizon:
            self._notes.popleft()
        vel_horizon = now - self.config.window_t_seconds
        while self._velocities and self._velocities[0][0] < vel_horizon:
            self._velocities.popleft()

    def rhythmic_density(self, register: str, now: float) -> float:
        """Fraction of bar slots, in the trailing one-bar window, holding
        at least one note in the register, scaled to 0..127."""
        if register not in REGISTERS:
            raise ValueError(f"unknown register {register!r}")
        if self._first_note_time is None:
            return 0.0
        t_bar = self.config.bar_period
        slots = self.config.slots_per_bar
        slot_len = t_bar / slots
        window_start = now - t_bar
        split = self.config.register_split_note
        occupied = set()
        for t, note, _vel in self._notes:
            if t < window_start or t > now:
                continue
            if register == "low" and note >= split:
                continue
            if register == "high" and note < split:
                continue
            occupied.add(min(int((t - window_start) / slot_len), slots - 1))
        return len(occupied) / slots * 127.0

    def velocity_averages(self, now: float) -> tuple[float, float]:
        """Mean velocity of the newer and older halves of the trailing
        window; an empty half yields 0."""
        half = now - self.config.window_t_seconds / 2.0
        start = now - self.config.window_t_seconds
        newer: list[int] = []
        older: list[int] = []
        for t, vel in self._velocities:
            if t < start or t > now:
                continue
            (newer if t > half else older).append(vel)
        newer_avg = sum(newer) / len(newer) if newer else 0.0
        older_avg = sum(older) / len(older) if older else 0.0
        return newer_avg, older_avg

    def make_frame(self, now: float) -> FeatureFrame:
        """Assemble the cycle's crisp features and reset the per-cycle
        velocity accumulator.  Call exactly once per clock cycle."""
        self._prune(now)
        cfg = self.config
        origin = self._first_note_time
        if origin is None:
            bar_index, bar_in_32, time_in_bar = 0, 0, 0.0
        else:
            elapsed = max(now - origin, 0.0)
            bar_index = int(elapsed / cfg.bar_period)
            bar_in_32 = bar_index % 32
            time_in_bar = elapsed - bar_index * cfg.bar_period
        sentinel = cfg.no_note_sentinel_seconds
        newer_avg, older_avg = self.velocity_averages(now)
        frame = FeatureFrame(
            cycle_time=now,
            velocity_sum=float(min(self._cycle_velocity_sum, 127)),
            density_low=self.rhythmic_density("low", now),
            density_high=self.rhythmic_density("high", now),
            density_full=self.rhythmic_density("full", now),
            pedal_down=self._pedal_down,
            time_since_last_note=(
                now - self._last_note_time if self._last_note_time is not None else sentinel
            ),
            time_since_pedal=(
                now - self._pedal_down_time if self._pedal_down_time is not None else sentinel
            ),
            bar_index=bar_index,
            bar_in_32=bar_in_32,
            time_in_bar=time_in_bar,
            newer_avg=newer_avg,
            older_avg=older_avg,
        )
        self._cycle_velocity_sum = 0
        return frame
