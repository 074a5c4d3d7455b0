"""
Canonical trace files: UTF-8 text, one `<arrival_ns>,<length_bytes>` line per packet,
sorted by arrival, `#` comment lines allowed.
"""

import json
import logging
import os
from typing import Optional

from pydantic import ValidationError

from models.errors import LoadError
from models.trace import InlineSource, Packet, Trace, TraceFileSource

logger = logging.getLogger(__name__)

HEADER = "# irqsim trace: arrival_ns,length_bytes"


def format_trace(trace: Trace) -> str:
    lines = [HEADER]
    if not isinstance(trace.source, InlineSource):
        lines.append("# source: " + json.dumps(trace.source.model_dump(mode="json", by_alias=True), sort_keys=True))
    lines.extend(f"{packet.arrival_time},{packet.length}" for packet in trace.packets)
    return "\n".join(lines) + "\n"


def parse_trace_text(text: str, path: Optional[str] = None) -> Trace:
    """
    Parse canonical trace text.

    Args:
        text (str): File content.
        path (Optional[str]): Recorded as provenance and used in error messages.

    Returns:
        Trace: The packets, with a TraceFileSource when `path` is given.

    Raises:
        LoadError: On malformed, non-positive-length or unsorted lines.
    """
    where = path or "<trace>"
    packets = []
    origin = None
    previous = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# source:"):
                origin = line[len("# source:"):].strip()
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise LoadError(f"{where}:{number}: expected '<arrival_ns>,<length_bytes>', got {line!r}")
        try:
            packet = Packet(arrival_time=int(fields[0]), length=int(fields[1]))
        except (ValueError, ValidationError) as e:
            raise LoadError(f"{where}:{number}: invalid packet {line!r}") from e
        if packet.arrival_time < previous:
            raise LoadError(f"{where}:{number}: arrival {packet.arrival_time} is earlier than the line before")
        previous = packet.arrival_time
        packets.append(packet)

    source = TraceFileSource(path=path, origin=origin) if path else InlineSource()
    return Trace(packets=tuple(packets), source=source)


def read_trace_file(path: str) -> Trace:
    try:
        with open(path, "r", encoding="utf-8") as file:
            text = file.read()
    except UnicodeDecodeError as e:
        raise LoadError(f"trace file '{path}' is not UTF-8 text") from e
    except OSError as e:
        raise LoadError(f"cannot read trace file '{path}': {e.strerror or e}") from e
    trace = parse_trace_text(text, path=os.fspath(path))
    logger.info("Loaded %d packets from trace file %s", len(trace), path)
    return trace


def write_trace_file(trace: Trace, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as file:
            file.write(format_trace(trace))
    except OSError as e:
        raise LoadError(f"cannot write trace file '{path}': {e.strerror or e}") from e
    logger.info("Wrote %d packets to %s", len(trace), path)
