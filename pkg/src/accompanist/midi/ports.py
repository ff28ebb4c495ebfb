"""Live MIDI port abstraction: open-by-name, poll, send.

The runtime loop only relies on the small :class:`MidiInPort` /
:class:`MidiOutPort` protocols.  :class:`QueuePort` is an in-memory
implementation used by tests and as a loopback; real hardware ports are
provided through the optional ``mido`` backend.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Protocol

from .messages import RawMidiMessage


class MidiInPort(Protocol):
    def poll(self) -> list[RawMidiMessage]: ...
    def close(self) -> None: ...


class MidiOutPort(Protocol):
    def send(self, msg: RawMidiMessage) -> None: ...
    def close(self) -> None: ...


class PortError(RuntimeError):
    pass


class QueuePort:
    """Thread-safe in-memory port usable as both input and output side."""

    def __init__(self, name: str = "virtual"):
        self.name = name
        self._queue: deque[RawMidiMessage] = deque()
        self._lock = threading.Lock()
        self.closed = False

    def push(self, msg: RawMidiMessage) -> None:
        with self._lock:
            self._queue.append(msg)

    send = push

    def poll(self) -> list[RawMidiMessage]:
        with self._lock:
            if self.closed:
                raise PortError(f"port {self.name!r} is closed")
            out = list(self._queue)
            self._queue.clear()
        return out

    @property
    def sent(self) -> list[RawMidiMessage]:
        with self._lock:
            return list(self._queue)

    def close(self) -> None:
        self.closed = True


def open_ports(name: str) -> tuple[MidiInPort, MidiOutPort]:
    """Open hardware input/output ports by name via the mido backend."""
    try:
        import mido  # type: ignore[import-not-found]
    except ImportError as exc:
        raise PortError(
            "live MIDI ports require the optional 'mido' package "
            "(pip install mido python-rtmidi)"
        ) from exc

    import time

    class _MidoIn:
        def __init__(self, port):
            self.port = port
            self.t0 = time.monotonic()

        def poll(self):
            out = []
            while True:
                m = self.port.poll()
                if m is None:
                    return out
                if m.type in ("note_on", "note_off", "control_change"):
                    raw = m.bytes()
                    out.append(
                        RawMidiMessage(raw[0], tuple(raw[1:]), time.monotonic() - self.t0)
                    )

        def close(self):
            self.port.close()

    class _MidoOut:
        def __init__(self, port):
            self.port = port

        def send(self, msg):
            import mido as _m

            self.port.send(_m.Message.from_bytes([msg.status, *msg.data]))

        def close(self):
            self.port.close()

    try:
        inp = mido.open_input(name)
        outp = mido.open_output(name)
    except (OSError, ValueError) as exc:
        raise PortError(f"cannot open MIDI port {name!r}: {exc}") from exc
    return _MidoIn(inp), _MidoOut(outp)
