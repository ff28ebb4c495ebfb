"""``accompany`` command line: replay, live, validate.

Exit codes: 0 success, 1 configuration/parse error, 2 runtime I/O error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from ..fuzzy import FuzzyError
from ..midi import MappingError, PortError, SmfError, open_ports
from .config import ConfigError, load_config
from .loop import run_live, run_replay
from .validate import validate as validate_config

EXIT_CONFIG = 1
EXIT_IO = 2


def _load(config_path):
    try:
        return load_config(config_path)
    except (ConfigError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


@click.group()
def main():
    """Fuzzy-logic drum accompanist for a MIDI piano."""


@main.command()
@click.argument("midi_in", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="Runtime config file (packaged defaults when omitted).")
@click.option("--trace", "trace_path", type=click.Path(path_type=Path), required=True,
              help="Per-cycle trace CSV to write.")
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True,
              help="Output MIDI file of the emitted control messages.")
def replay(midi_in: Path, config_path, trace_path: Path, out_path: Path):
    """Replay a recorded MIDI file against a virtual clock."""
    config = _load(config_path)
    try:
        with open(trace_path, "w", encoding="utf-8", newline="\n") as trace_stream:
            result = run_replay(config, midi_in, trace_stream, out_path)
    except (FuzzyError, MappingError, SmfError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(f"replayed {result.cycles} cycles, {len(result.messages)} output messages")


@main.command()
@click.option("--port", required=True, help="MIDI port name (input and output).")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None)
@click.option("--trace", "trace_path", type=click.Path(path_type=Path), default=None)
def live(port: str, config_path, trace_path):
    """Run live against a MIDI port until interrupted."""
    config = _load(config_path)
    try:
        in_port, out_port = open_ports(port)
    except PortError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    trace_stream = open(trace_path, "w", encoding="utf-8") if trace_path else None
    try:
        stats = run_live(config, in_port, out_port, trace_stream)
    except (FuzzyError, MappingError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except PortError as exc:
        click.echo(f"port lost, shutting down: {exc}", err=True)
        sys.exit(EXIT_IO)
    finally:
        if trace_stream:
            trace_stream.close()
        in_port.close()
        out_port.close()
    click.echo(f"{stats.cycles} cycles, {stats.overruns} overruns, "
               f"{stats.sent_messages} messages sent")


@main.command()
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None)
def validate(config_path):
    """Parse and cross-check rule bases, mapping and configuration."""
    config = _load(config_path)
    report = validate_config(config)
    click.echo(str(report))
    if not report.ok:
        sys.exit(EXIT_CONFIG)
