"""The clock-cycle loop: offline replay with a virtual clock and live
mode with wall-clock scheduling."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Optional

from ..control import ControlOutputs, ControlSystem, DrumState
from ..features import FeatureExtractor, FeatureFrame
from ..fuzzy import load_rulebase
from ..midi import (
    Decoder,
    MidiInPort,
    MidiOutPort,
    RawMidiMessage,
    encode,
    load_mapping,
    read_midi_file,
    write_midi_file,
)
from ..temporal import TemporalOutputs, TemporalState, TemporalSystem
from .config import RuntimeConfig
from .trace import TraceWriter


@dataclass
class CycleResult:
    cycle: int
    frame: FeatureFrame
    temporal: TemporalOutputs
    control: ControlOutputs
    messages: list[RawMidiMessage]
    fired: list[tuple[str, float]]


class Pipeline:
    """Feature extraction, both inference stages and output encoding for
    one stream.  Owns all mutable per-session state."""

    def __init__(self, config: RuntimeConfig):
        self.config = config
        self.extractor = FeatureExtractor(config.feature_config())
        self.temporal_system = TemporalSystem(
            load_rulebase(config.temporal_rules), config.temporal_config()
        )
        self.control_system = ControlSystem(
            load_rulebase(config.control_rules), config.control_config()
        )
        self.mapping = load_mapping(config.mapping)
        self.decoder = Decoder()
        self.temporal_state: TemporalState = self.temporal_system.initial_state()
        self.drum_state: DrumState = self.control_system.initial_state()
        self.prev_outputs: Optional[ControlOutputs] = None
        self.cycle = 0

    def ingest(self, messages: list[RawMidiMessage]) -> None:
        for msg in messages:
            event = self.decoder.decode(msg)
            if event is not None:
                self.extractor.ingest(event)

    def step(self, now: float) -> CycleResult:
        frame = self.extractor.make_frame(now)
        temporal, self.temporal_state = self.temporal_system.step(
            frame,
            self.temporal_state,
            self.drum_state.last_intensity,
            self.drum_state.last_complexity,
        )
        control, self.drum_state, fired = self.control_system.step(
            frame, temporal, self.drum_state
        )
        messages = encode(control, self.prev_outputs, self.mapping, timestamp=now)
        self.prev_outputs = control
        result = CycleResult(self.cycle, frame, temporal, control, messages, fired)
        self.cycle += 1
        return result


@dataclass
class ReplayResult:
    cycles: int
    messages: list[RawMidiMessage]
    cycle_seconds: list[float] = field(default_factory=list)


def run_replay(
    config: RuntimeConfig,
    midi_in: "str | Path",
    trace_stream: Optional[IO[str]] = None,
    midi_out: "str | Path | None" = None,
    measure: bool = False,
) -> ReplayResult:
    """Replay a MIDI file against a virtual clock; bit-identical outputs
    for identical inputs."""
    events = read_midi_file(midi_in)
    pipeline = Pipeline(config)
    writer = (
        TraceWriter(trace_stream, config.trace_log_threshold) if trace_stream else None
    )
    out_messages: list[RawMidiMessage] = []
    result = ReplayResult(0, out_messages)
    if events:
        period = config.cycle_period
        end = events[-1].timestamp + config.tail_bars * config.bar_period
        n_cycles = int(end / period) + 1
        pending = list(events)
        idx = 0
        for cycle in range(n_cycles):
            now = cycle * period
            due = []
            while idx < len(pending) and pending[idx].timestamp <= now:
                due.append(pending[idx])
                idx += 1
            t0 = time.perf_counter() if measure else 0.0
            pipeline.ingest(due)
            step = pipeline.step(now)
            if measure:
                result.cycle_seconds.append(time.perf_counter() - t0)
            out_messages.extend(step.messages)
            if writer:
                writer.record(step.cycle, step.frame, step.temporal, step.control, step.fired)
        result.cycles = n_cycles
    if midi_out is not None:
        write_midi_file(midi_out, out_messages)
    return result


@dataclass
class LiveStats:
    cycles: int = 0
    overruns: int = 0
    sent_messages: int = 0


def run_live(
    config: RuntimeConfig,
    in_port: MidiInPort,
    out_port: MidiOutPort,
    trace_stream: Optional[IO[str]] = None,
    max_cycles: Optional[int] = None,
    clock=time.monotonic,
    sleep=time.sleep,
) -> LiveStats:
    """Wall-clock loop at the configured period until interrupted (or
    ``max_cycles``, used by tests).  Cycle overruns are counted, never
    fatal."""
    pipeline = Pipeline(config)
    writer = (
        TraceWriter(trace_stream, config.trace_log_threshold) if trace_stream else None
    )
    stats = LiveStats()
    period = config.cycle_period
    t0 = clock()
    next_deadline = t0
    try:
        while max_cycles is None or stats.cycles < max_cycles:
            now = clock() - t0
            pipeline.ingest(in_port.poll())
            step = pipeline.step(now)
            for msg in step.messages:
                out_port.send(msg)
                stats.sent_messages += 1
            if writer:
                writer.record(step.cycle, step.frame, step.temporal, step.control, step.fired)
            stats.cycles += 1
            next_deadline += period
            remaining = next_deadline - clock()
            if remaining > 0:
                sleep(remaining)
            else:
                stats.overruns += 1
                next_deadline = clock()  # resynchronize after an overrun
    except KeyboardInterrupt:
        pass
    finally:
        if trace_stream:
            trace_stream.flush()
    return stats
