"""Encode control outputs to outgoing MIDI messages.

Message economy: identical consecutive outputs emit nothing; intensity
and complexity CCs are sent only when their rounded 0..127 value
changed.  Deterministic order: intensity, complexity, mute, unmute,
pattern.
"""

from __future__ import annotations

import math
from typing import Optional

from ..catalogs import NO_CHANGE
from ..control import ControlOutputs
from .mapping import DrummerMapping, MappingError
from .messages import CONTROL_CHANGE, RawMidiMessage


def to_midi_value(x: float) -> int:
    """Round half-up to the 0..127 MIDI range."""
    return min(max(math.floor(x + 0.5), 0), 127)


def encode(
    out: ControlOutputs,
    prev: Optional[ControlOutputs],
    mapping: DrummerMapping,
    timestamp: float = 0.0,
) -> list[RawMidiMessage]:
    if prev is not None and out == prev:
        return []
    messages: list[RawMidiMessage] = []
    cc_status = CONTROL_CHANGE | mapping.channel

    intensity = to_midi_value(out.intensity)
    if prev is None or intensity != to_midi_value(prev.intensity):
        messages.append(RawMidiMessage(cc_status, (mapping.cc_intensity, intensity), timestamp))
    complexity = to_midi_value(out.complexity)
    if prev is None or complexity != to_midi_value(prev.complexity):
        messages.append(RawMidiMessage(cc_status, (mapping.cc_complexity, complexity), timestamp))

    if out.mute != "None":
        if out.mute not in mapping.mute_messages:
            raise MappingError(f"unmapped mute category {out.mute!r}")
        messages.extend(m.replaced(timestamp) for m in mapping.mute_messages[out.mute])
    if out.unmute != "None":
        if out.unmute not in mapping.unmute_messages:
            raise MappingError(f"unmapped unmute category {out.unmute!r}")
        messages.extend(m.replaced(timestamp) for m in mapping.unmute_messages[out.unmute])
    if out.pattern != NO_CHANGE:
        if out.pattern not in mapping.pattern_triggers:
            raise MappingError(f"unmapped pattern category {out.pattern!r}")
        if prev is None or out.pattern != prev.pattern:
            messages.extend(
                m.replaced(timestamp) for m in mapping.pattern_triggers[out.pattern]
            )
    return messages
