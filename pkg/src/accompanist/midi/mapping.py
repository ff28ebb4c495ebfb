"""Drummer output mapping: control categories to concrete MIDI messages.

Loaded from a ``*.mapping`` key-value file:

    channel = 9
    cc_intensity = 20
    cc_complexity = 21
    pattern.Intro To Chorus 1 = note 36
    mute.Kick = cc 80 127
    unmute.Kick = cc 80 0; cc 81 0

Message specs are ``note <n>``, ``cc <controller> <value>`` or
``program <n>``; several messages may be joined with ``;``.  Every
pattern category except 'No change' must be mapped; mute/unmute 'None'
need no messages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .. import catalogs
from .messages import CONTROL_CHANGE, NOTE_ON, PROGRAM_CHANGE, RawMidiMessage


class MappingError(ValueError):
    pass


@dataclass(frozen=True)
class DrummerMapping:
    cc_intensity: int
    cc_complexity: int
    channel: int = 0
    pattern_triggers: dict[str, tuple[RawMidiMessage, ...]] = field(default_factory=dict)
    mute_messages: dict[str, tuple[RawMidiMessage, ...]] = field(default_factory=dict)
    unmute_messages: dict[str, tuple[RawMidiMessage, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for cc in (self.cc_intensity, self.cc_complexity):
            if not 0 <= cc <= 119:
                raise MappingError(f"controller number {cc} outside 0..119")
        if not 0 <= self.channel <= 15:
            raise MappingError(f"channel {self.channel} outside 0..15")
        required = {name for name, _ in catalogs.PATTERN_CATEGORIES if name != catalogs.NO_CHANGE}
        missing = required - set(self.pattern_triggers)
        if missing:
            raise MappingError(f"unmapped pattern categories: {sorted(missing)}")


def _parse_message_spec(spec: str, channel: int, key: str) -> tuple[RawMidiMessage, ...]:
    messages = []
    for part in spec.split(";"):
        fields = part.split()
        try:
            if fields[0] == "note":
                note = int(fields[1])
                velocity = int(fields[2]) if len(fields) > 2 else 100
                if not (0 <= note <= 127 and 0 <= velocity <= 127):
                    raise MappingError(f"{key}: note/velocity out of range: {part!r}")
                messages.append(RawMidiMessage(NOTE_ON | channel, (note, velocity)))
            elif fields[0] == "cc":
                controller, value = int(fields[1]), int(fields[2])
                if not (0 <= controller <= 119 and 0 <= value <= 127):
                    raise MappingError(f"{key}: cc out of range: {part!r}")
                messages.append(RawMidiMessage(CONTROL_CHANGE | channel, (controller, value)))
            elif fields[0] == "program":
                program = int(fields[1])
                if not 0 <= program <= 127:
                    raise MappingError(f"{key}: program out of range: {part!r}")
                messages.append(RawMidiMessage(PROGRAM_CHANGE | channel, (program,)))
            else:
                raise MappingError(f"{key}: unknown message kind {fields[0]!r}")
        except (IndexError, ValueError) as exc:
            raise MappingError(f"{key}: malformed message spec {part!r}") from exc
    return tuple(messages)


def parse_mapping(text: str, filename: str = "<string>") -> DrummerMapping:
    scalars: dict[str, int] = {}
    tables: dict[str, dict[str, str]] = {"pattern": {}, "mute": {}, "unmute": {}}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MappingError(f"{filename}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        prefix, _, rest = key.partition(".")
        if prefix in tables and rest:
            tables[prefix][rest] = value
        elif key in ("channel", "cc_intensity", "cc_complexity"):
            try:
                scalars[key] = int(value)
            except ValueError as exc:
                raise MappingError(f"{filename}:{lineno}: {key} must be an integer") from exc
        else:
            raise MappingError(f"{filename}:{lineno}: unknown key {key!r}")
    for key in ("cc_intensity", "cc_complexity"):
        if key not in scalars:
            raise MappingError(f"{filename}: missing required key {key!r}")
    channel = scalars.get("channel", 0)
    return DrummerMapping(
        cc_intensity=scalars["cc_intensity"],
        cc_complexity=scalars["cc_complexity"],
        channel=channel,
        pattern_triggers={
            name: _parse_message_spec(spec, channel, f"pattern.{name}")
            for name, spec in tables["pattern"].items()
        },
        mute_messages={
            name: _parse_message_spec(spec, channel, f"mute.{name}")
            for name, spec in tables["mute"].items()
        },
        unmute_messages={
            name: _parse_message_spec(spec, channel, f"unmute.{name}")
            for name, spec in tables["unmute"].items()
        },
    )


def load_mapping(path: "str | Path") -> DrummerMapping:
    path = Path(path)
    return parse_mapping(path.read_text(encoding="utf-8"), str(path))
