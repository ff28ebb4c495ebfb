"""MIDI decoding, encoding, file I/O and port abstraction."""

from .messages import (
    CC_SUSTAIN,
    CONTROL_CHANGE,
    NOTE_OFF,
    NOTE_ON,
    PROGRAM_CHANGE,
    Decoder,
    RawMidiMessage,
    decode,
)
from .encode import encode, to_midi_value
from .mapping import DrummerMapping, MappingError, load_mapping, parse_mapping
from .smf import SmfError, read_midi_file, write_midi_file
from .ports import MidiInPort, MidiOutPort, PortError, QueuePort, open_ports

__all__ = [
    "RawMidiMessage", "Decoder", "decode",
    "NOTE_ON", "NOTE_OFF", "CONTROL_CHANGE", "PROGRAM_CHANGE", "CC_SUSTAIN",
    "encode", "to_midi_value",
    "DrummerMapping", "MappingError", "parse_mapping", "load_mapping",
    "read_midi_file", "write_midi_file", "SmfError",
    "MidiInPort", "MidiOutPort", "QueuePort", "PortError", "open_ports",
]
