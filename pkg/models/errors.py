from typing import Optional


class IrqsimError(Exception):
    """
    Base class for every error raised by irqsim.
    """


class ConfigError(IrqsimError):
    """
    Invalid experiment configuration (parse errors, schema violations, sweep axis misuse).
    """


class LoadError(IrqsimError):
    """
    A load source could not be read, parsed or written.
    """


class PcapError(LoadError):
    """
    Base class for classic PCAP decoding failures.
    """


class UnknownMagicError(PcapError):
    def __init__(self, magic: int, message: Optional[str] = None):
        self.magic = magic
        super().__init__(message or f"unknown capture magic number 0x{magic:08X}")


class PcapngUnsupportedError(UnknownMagicError):
    def __init__(self, magic: int = 0x0A0D0D0A):
        super().__init__(magic, "pcapng unsupported: convert the capture to classic pcap first")


class TruncatedHeaderError(PcapError):
    def __init__(self, available: int):
        self.available = available
        super().__init__(f"truncated global header: {available} of 24 bytes present")


class TruncatedRecordError(PcapError):
    def __init__(self, record_index: int, offset: int, reason: str = "record header"):
        self.record_index = record_index
        self.offset = offset
        super().__init__(f"truncated {reason} in record {record_index} at byte offset {offset}")


class GridPointError(ConfigError):
    """
    A single sweep grid point produced an invalid configuration.
    """

    def __init__(self, coordinates: dict, detail: str):
        self.coordinates = coordinates
        self.detail = detail
        where = ", ".join(f"{key}={value}" for key, value in coordinates.items())
        super().__init__(f"grid point ({where}): {detail}")


class InvariantViolation(IrqsimError):
    """
    An internal consistency check failed; indicates a bug rather than bad input.
    """


class SimulationOverflowError(InvariantViolation):
    """
    Virtual time left the signed 64-bit nanosecond range.
    """


class TabulationError(IrqsimError):
    """
    Sweep results do not fit the declared grid.
    """
