from typing import Annotated, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Virtual time is signed 64-bit nanoseconds, roughly 292 years.
MAX_VIRTUAL_TIME_NS = 2**63 - 1
MAX_SEED = 2**64 - 1


class Packet(BaseModel):
    """
    A received packet: arrival instant in virtual nanoseconds and wire length in bytes.
    """

    model_config = ConfigDict(frozen=True)

    arrival_time: int = Field(ge=0, le=MAX_VIRTUAL_TIME_NS)
    length: int = Field(ge=1)


class UniformLoadSpec(BaseModel):
    """
    Constant receive frequency: one packet every `period` nanoseconds.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["uniform"] = "uniform"
    period: int = Field(ge=1)
    count: int = Field(ge=0)
    length: int = Field(default=64, ge=1)
    start_offset: int = Field(default=0, ge=0)


class PoissonLoadSpec(BaseModel):
    """
    Poisson arrivals with rate `lam` packets per second, stopped either after
    `count` packets or once arrivals pass `duration` nanoseconds.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    kind: Literal["poisson"] = "poisson"
    lam: float = Field(gt=0, alias="lambda")
    count: Optional[int] = Field(default=None, ge=0)
    duration: Optional[int] = Field(default=None, ge=0, le=MAX_VIRTUAL_TIME_NS)
    length: int = Field(default=64, ge=1)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)

    @model_validator(mode="after")
    def _one_stopping_rule(self) -> "PoissonLoadSpec":
        if (self.count is None) == (self.duration is None):
            raise ValueError("poisson load needs exactly one of 'count' or 'duration'")
        return self


class CaptureSource(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["capture"] = "capture"
    path: Optional[str] = None


class TraceFileSource(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["trace_file"] = "trace_file"
    path: str
    origin: Optional[str] = None


class InlineSource(BaseModel):
    """
    Hand-built traces (tests, oracle instances).
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["inline"] = "inline"


TraceSource = Annotated[
    Union[UniformLoadSpec, PoissonLoadSpec, CaptureSource, TraceFileSource, InlineSource],
    Field(discriminator="kind"),
]


class Trace(BaseModel):
    """
    An ordered packet sequence plus where it came from. May be empty.
    """

    model_config = ConfigDict(frozen=True)

    packets: Tuple[Packet, ...] = ()
    source: TraceSource = Field(default_factory=InlineSource)

    @model_validator(mode="after")
    def _sorted(self) -> "Trace":
        previous = 0
        for index, packet in enumerate(self.packets):
            if packet.arrival_time < previous:
                raise ValueError(f"packets must be sorted by arrival_time (violation at index {index})")
            previous = packet.arrival_time
        return self

    def __len__(self) -> int:
        return len(self.packets)

    @property
    def arrival_times(self) -> list:
        return [packet.arrival_time for packet in self.packets]

    @property
    def total_bytes(self) -> int:
        return sum(packet.length for packet in self.packets)


def inline_trace(pairs) -> Trace:
    """
    Build a Trace from (arrival_time, length) pairs already in order.
    """
    return Trace(packets=tuple(Packet(arrival_time=t, length=length) for t, length in pairs))
