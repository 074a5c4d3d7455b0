from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class ByteOrder(str, Enum):
    LITTLE = "little"
    BIG = "big"


class TimeResolution(str, Enum):
    MICROSECOND = "microsecond"
    NANOSECOND = "nanosecond"


class PcapMeta(BaseModel):
    """
    Global header facts of a classic PCAP file plus parse bookkeeping.
    """

    model_config = ConfigDict(frozen=True)

    endianness: ByteOrder
    time_resolution: TimeResolution
    link_type: int
    snaplen: int = Field(ge=0)
    version: Tuple[int, int] = (2, 4)
    skipped_zero_length: int = 0
    reordered: int = 0


class PcapSummary(BaseModel):
    """
    Replay-relevant summary of a parsed capture. `mean_rate_pps` is None when undefined.
    """

    model_config = ConfigDict(frozen=True)

    packet_count: int
    duration_ns: int
    mean_rate_pps: Optional[float] = None
    length_min: Optional[int] = None
    length_mean: Optional[float] = None
    length_max: Optional[int] = None
