"""Raw MIDI channel messages and the decode step to input events."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..features import MidiEventIn, NoteOff, NoteOn, SustainPedal

NOTE_OFF = 0x80
NOTE_ON = 0x90
CONTROL_CHANGE = 0xB0
PROGRAM_CHANGE = 0xC0
CC_SUSTAIN = 64


@dataclass(frozen=True)
class RawMidiMessage:
    status: int
    data: tuple[int, ...]
    timestamp: float = 0.0

    @property
    def kind(self) -> int:
        return self.status & 0xF0

    @property
    def channel(self) -> int:
        return self.status & 0x0F

    def replaced(self, timestamp: float) -> "RawMidiMessage":
        return RawMidiMessage(self.status, self.data, timestamp)


class Decoder:
    """Maps raw channel messages to input events; counts malformed ones."""

    def __init__(self):
        self.malformed = 0

    def decode(self, msg: RawMidiMessage) -> Optional[MidiEventIn]:
        kind = msg.kind
        try:
            if kind == NOTE_ON:
                note, velocity = msg.data
                if velocity == 0:  # MIDI convention: NoteOn velocity 0 is an off
                    return NoteOff(note, msg.timestamp)
                return NoteOn(note, velocity, msg.timestamp)
            if kind == NOTE_OFF:
                note, _velocity = msg.data
                return NoteOff(note, msg.timestamp)
            if kind == CONTROL_CHANGE:
                controller, value = msg.data
                if controller == CC_SUSTAIN:
                    return SustainPedal(value >= 64, msg.timestamp)
                return None
        except (TypeError, ValueError):
            self.malformed += 1
            return None
        return None


def decode(msg: RawMidiMessage) -> Optional[MidiEventIn]:
    return Decoder().decode(msg)
