"""
Classic libpcap capture files as replayable loads.

Layout: 24-byte global header (magic, version major/minor, thiszone, sigfigs,
snaplen, link type) followed by records of a 16-byte header (ts_sec, ts_frac,
incl_len, orig_len) and incl_len captured bytes. pcapng is rejected.
"""

import logging
import os
import struct
from typing import Optional, Tuple

from models.capture import ByteOrder, PcapMeta, PcapSummary, TimeResolution
from models.errors import (
    LoadError,
    PcapngUnsupportedError,
    TruncatedHeaderError,
    TruncatedRecordError,
    UnknownMagicError,
)
from models.trace import CaptureSource, Packet, Trace

logger = logging.getLogger(__name__)

GLOBAL_HEADER_LEN = 24
RECORD_HEADER_LEN = 16
PCAPNG_MAGIC = b"\x0a\x0d\x0d\x0a"

MAGIC_RESOLUTION = {
    0xA1B2C3D4: TimeResolution.MICROSECOND,
    0xA1B23C4D: TimeResolution.NANOSECOND,
}
FRACTION_TO_NS = {TimeResolution.MICROSECOND: 1000, TimeResolution.NANOSECOND: 1}
STRUCT_ORDER = {ByteOrder.LITTLE: "<", ByteOrder.BIG: ">"}


def _detect_magic(data: bytes) -> Tuple[ByteOrder, TimeResolution]:
    if len(data) < 4:
        raise TruncatedHeaderError(len(data))
    if data[:4] == PCAPNG_MAGIC:
        raise PcapngUnsupportedError()
    for order in (ByteOrder.LITTLE, ByteOrder.BIG):
        (magic,) = struct.unpack(STRUCT_ORDER[order] + "I", data[:4])
        if magic in MAGIC_RESOLUTION:
            return order, MAGIC_RESOLUTION[magic]
    raise UnknownMagicError(struct.unpack(">I", data[:4])[0])


def parse_pcap(data: bytes, path: Optional[str] = None) -> Tuple[PcapMeta, Trace]:
    """
    Decode a complete classic PCAP file image into a Trace.

    Packet length is the record's orig_len (wire length). Arrival times are made
    relative to the earliest kept record, so the first packet sits at 0. Records
    with orig_len == 0 are skipped; out-of-order records are stably sorted.

    Args:
        data (bytes): The whole file.
        path (Optional[str]): File path recorded as the trace's provenance.

    Returns:
        Tuple[PcapMeta, Trace]: Header facts with parse counters, and the trace.

    Raises:
        UnknownMagicError: Unrecognised magic (PcapngUnsupportedError for pcapng).
        TruncatedHeaderError: Fewer than 24 header bytes.
        TruncatedRecordError: A record header or body runs past the end of the data.
    """
    order, resolution = _detect_magic(data)
    if len(data) < GLOBAL_HEADER_LEN:
        raise TruncatedHeaderError(len(data))

    endian = STRUCT_ORDER[order]
    _, major, minor, _, _, snaplen, link_type = struct.unpack_from(endian + "IHHiIII", data, 0)
    to_ns = FRACTION_TO_NS[resolution]
    record = struct.Struct(endian + "IIII")

    timestamps = []
    lengths = []
    skipped = 0
    offset = GLOBAL_HEADER_LEN
    index = 0
    while offset < len(data):
        if len(data) - offset < RECORD_HEADER_LEN:
            raise TruncatedRecordError(index, offset, "record header")
        ts_sec, ts_frac, incl_len, orig_len = record.unpack_from(data, offset)
        body_end = offset + RECORD_HEADER_LEN + incl_len
        if body_end > len(data):
            raise TruncatedRecordError(index, offset, "record data")
        if orig_len == 0:
            skipped += 1
        else:
            timestamps.append(ts_sec * 1_000_000_000 + ts_frac * to_ns)
            lengths.append(orig_len)
        offset = body_end
        index += 1

    reordered = sum(1 for i in range(1, len(timestamps)) if timestamps[i] < timestamps[i - 1])
    if skipped:
        logger.warning("Skipped %d capture record(s) with orig_len 0", skipped)
    if reordered:
        logger.warning("%d capture record(s) were out of timestamp order; trace re-sorted", reordered)

    order_by_time = sorted(range(len(timestamps)), key=timestamps.__getitem__)
    base = timestamps[order_by_time[0]] if timestamps else 0
    packets = tuple(Packet(arrival_time=timestamps[i] - base, length=lengths[i]) for i in order_by_time)

    meta = PcapMeta(
        endianness=order,
        time_resolution=resolution,
        link_type=link_type,
        snaplen=snaplen,
        version=(major, minor),
        skipped_zero_length=skipped,
        reordered=reordered,
    )
    return meta, Trace(packets=packets, source=CaptureSource(path=path))


def load_pcap(path: str) -> Tuple[PcapMeta, Trace]:
    try:
        with open(path, "rb") as file:
            data = file.read()
    except OSError as e:
        raise LoadError(f"cannot read capture '{path}': {e.strerror or e}") from e
    meta, trace = parse_pcap(data, path=os.fspath(path))
    logger.info("Parsed %d packets from %s (%s, %s)", len(trace), path, meta.endianness.value, meta.time_resolution.value)
    return meta, trace


def write_pcap(
    trace: Trace,
    resolution: TimeResolution = TimeResolution.MICROSECOND,
    byteorder: ByteOrder = ByteOrder.LITTLE,
    snaplen: int = 65535,
    link_type: int = 1,
) -> bytes:
    """
    Build a classic PCAP image from a Trace; captured bytes are zero-filled.

    Microsecond files truncate arrival times to whole microseconds.
    """
    endian = STRUCT_ORDER[byteorder]
    magic = next(m for m, r in MAGIC_RESOLUTION.items() if r is resolution)
    divisor = FRACTION_TO_NS[resolution]
    chunks = [struct.pack(endian + "IHHiIII", magic, 2, 4, 0, 0, snaplen, link_type)]
    for packet in trace.packets:
        seconds, remainder = divmod(packet.arrival_time, 1_000_000_000)
        captured = min(packet.length, snaplen)
        chunks.append(struct.pack(endian + "IIII", seconds, remainder // divisor, captured, packet.length))
        chunks.append(bytes(captured))
    return b"".join(chunks)


def pcap_summary(meta: PcapMeta, trace: Trace) -> PcapSummary:
    """
    Packet count, duration, mean rate and length statistics of a parsed capture.

    The rate is (count - 1) / duration and stays None for fewer than two packets or
    zero duration.
    """
    count = len(trace)
    if count == 0:
        return PcapSummary(packet_count=0, duration_ns=0)

    times = trace.arrival_times
    lengths = [packet.length for packet in trace.packets]
    duration = times[-1] - times[0]
    rate = (count - 1) / (duration / 1e9) if count >= 2 and duration > 0 else None
    return PcapSummary(
        packet_count=count,
        duration_ns=duration,
        mean_rate_pps=rate,
        length_min=min(lengths),
        length_mean=sum(lengths) / count,
        length_max=max(lengths),
    )
