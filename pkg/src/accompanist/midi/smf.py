"""Standard MIDI File reading (formats 0 and 1) and writing (format 0).

The reader merges all tracks chronologically and converts ticks to
seconds using the file's tempo events and division.  Parse failures
report the byte offset.
"""

from __future__ import annotations

import struct
from pathlib import Path

from .messages import RawMidiMessage

DEFAULT_TEMPO_US = 500_000  # microseconds per quarter note (120 bpm)
DEFAULT_DIVISION = 480

META_TEMPO = 0x51
META_END_OF_TRACK = 0x2F


class SmfError(ValueError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def read(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise SmfError(f"unexpected end of file, wanted {n} bytes", self.pos)
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def read_varlen(self) -> int:
        value = 0
        for _ in range(4):
            byte = self.read(1)[0]
            value = (value << 7) | (byte & 0x7F)
            if not byte & 0x80:
                return value
        raise SmfError("variable-length quantity longer than 4 bytes", self.pos)


def read_midi_file(path: "str | Path") -> list[RawMidiMessage]:
    """Time-ordered channel messages with timestamps in seconds."""
    data = Path(path).read_bytes()
    r = _Reader(data)
    if r.read(4) != b"MThd":
        raise SmfError("missing MThd header", 0)
    header_len = struct.unpack(">I", r.read(4))[0]
    if header_len < 6:
        raise SmfError(f"bad header length {header_len}", r.pos)
    fmt, ntrks, division = struct.unpack(">HHH", r.read(6))
    r.read(header_len - 6)
    if fmt not in (0, 1):
        raise SmfError(f"unsupported SMF format {fmt}", 8)
    if division & 0x8000:
        raise SmfError("SMPTE time division is not supported", 12)
    if division == 0:
        raise SmfError("zero ticks-per-quarter division", 12)

    # (tick, track, seq, status, data) for channel events; tempo events
    # collected separately with the same ordering key
    events: list[tuple[int, int, int, int, tuple[int, ...]]] = []
    tempos: list[tuple[int, int, int, int]] = []  # (tick, track, seq, tempo_us)
    for track in range(ntrks):
        if r.read(4) != b"MTrk":
            raise SmfError(f"missing MTrk chunk for track {track}", r.pos - 4)
        track_len = struct.unpack(">I", r.read(4))[0]
        end = r.pos + track_len
        tick = 0
        seq = 0
        running_status: int | None = None
        while r.pos < end:
            tick += r.read_varlen()
            byte = r.read(1)[0]
            if byte == 0xFF:
                meta_type = r.read(1)[0]
                length = r.read_varlen()
                payload = r.read(length)
                if meta_type == META_TEMPO:
                    if length != 3:
                        raise SmfError("malformed tempo event", r.pos)
                    tempos.append((tick, track, seq, int.from_bytes(payload, "big")))
                    seq += 1
                if meta_type == META_END_OF_TRACK:
                    break
                continue
            if byte in (0xF0, 0xF7):  # sysex: length-prefixed, skipped
                r.read(r.read_varlen())
                running_status = None
                continue
            if byte & 0x80:
                status = byte
                running_status = status
                first = None
            else:
                if running_status is None:
                    raise SmfError(f"data byte {byte:#x} without running status", r.pos - 1)
                status = running_status
                first = byte
            kind = status & 0xF0
            n_data = 1 if kind in (0xC0, 0xD0) else 2
            data_bytes = [first] if first is not None else []
            while len(data_bytes) < n_data:
                data_bytes.append(r.read(1)[0])
            if any(b > 127 for b in data_bytes):
                raise SmfError(f"data byte out of range in event {status:#x}", r.pos)
            events.append((tick, track, seq, status, tuple(data_bytes)))
            seq += 1
        r.pos = end

    # walk the tempo map and channel events together, converting ticks to
    # seconds incrementally
    merged: list[tuple[int, int, int, str, object]] = []
    merged.extend((t, trk, s, "tempo", us) for t, trk, s, us in tempos)
    merged.extend((t, trk, s, "event", (st, d)) for t, trk, s, st, d in events)
    merged.sort(key=lambda e: (e[0], e[1], e[2]))

    out: list[RawMidiMessage] = []
    tempo = DEFAULT_TEMPO_US
    last_tick = 0
    seconds = 0.0
    for tick, _trk, _seq, kind, payload in merged:
        seconds += (tick - last_tick) * tempo / 1e6 / division
        last_tick = tick
        if kind == "tempo":
            tempo = payload  # type: ignore[assignment]
        else:
            status, data_bytes = payload  # type: ignore[misc]
            out.append(RawMidiMessage(status, data_bytes, seconds))
    return out


def _varlen(value: int) -> bytes:
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append((value & 0x7F) | 0x80)
        value >>= 7
    return bytes(reversed(out))


def write_midi_file(
    path: "str | Path",
    messages: list[RawMidiMessage],
    division: int = DEFAULT_DIVISION,
    tempo_us: int = DEFAULT_TEMPO_US,
) -> None:
    """Write a format-0 SMF with one fixed tempo; message timestamps are
    seconds and must be non-decreasing."""
    body = bytearray()
    body += _varlen(0) + bytes((0xFF, META_TEMPO, 3)) + tempo_us.to_bytes(3, "big")
    last_tick = 0
    for msg in messages:
        tick = round(msg.timestamp * 1e6 / tempo_us * division)
        if tick < last_tick:
            raise ValueError("messages must be time-ordered")
        body += _varlen(tick - last_tick)
        body += bytes((msg.status, *msg.data))
        last_tick = tick
    body += _varlen(0) + bytes((0xFF, META_END_OF_TRACK, 0))
    header = b"MThd" + struct.pack(">IHHH", 6, 0, 1, division)
    track = b"MTrk" + struct.pack(">I", len(body)) + bytes(body)
    Path(path).write_bytes(header + track)
