from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.nic import InterruptCause, InterruptEvent


class WorkloadSpec(BaseModel):
    """
    The user code under test, reduced to the uninterrupted CPU time it needs.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    required_compute: int = Field(ge=0)


def empty_cause_counts() -> Dict[InterruptCause, int]:
    return {cause: 0 for cause in InterruptCause}


class SimulationResult(BaseModel):
    """
    Outcome of one simulated experiment. All times are virtual nanoseconds.
    """

    model_config = ConfigDict(frozen=True)

    execution_time: int
    required_compute: int
    packet_count: int = 0
    interrupt_count: int = 0
    cause_counts: Dict[InterruptCause, int] = Field(default_factory=empty_cause_counts)
    stolen_isr: int = 0
    stolen_rx: int = 0
    stolen_before_completion: int = 0
    service_end: int = 0
    latencies: Tuple[int, ...] = ()
    dropped_packets: int = 0
    events: Optional[Tuple[InterruptEvent, ...]] = None

    @model_validator(mode="after")
    def _ledger(self) -> "SimulationResult":
        if sum(self.cause_counts.values()) != self.interrupt_count:
            raise ValueError("cause counts do not add up to the interrupt count")
        if self.events is not None and len(self.events) != self.interrupt_count:
            raise ValueError("event timeline length differs from the interrupt count")
        if self.execution_time - self.required_compute != self.stolen_before_completion:
            raise ValueError("execution time is not required compute plus stolen time")
        return self

    def scalars(self) -> Dict[str, int]:
        """
        Scalar metrics compared between the event engine and the tick oracle.
        """
        return {
            "execution_time": self.execution_time,
            "interrupt_count": self.interrupt_count,
            "stolen_isr": self.stolen_isr,
            "stolen_rx": self.stolen_rx,
            "stolen_before_completion": self.stolen_before_completion,
            "service_end": self.service_end,
            "dropped_packets": self.dropped_packets,
            **{f"cause_{cause.value}": count for cause, count in self.cause_counts.items()},
        }


class CauseRatio(BaseModel):
    model_config = ConfigDict(frozen=True)

    counter_fraction: float = Field(ge=0, le=1)
    timer_fraction: float = Field(ge=0, le=1)
    per_packet_fraction: float = Field(ge=0, le=1)
    flush_fraction: float = Field(ge=0, le=1)


class LatencySummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean_ns: float
    p50_ns: int
    p95_ns: int
    max_ns: int


class InterarrivalHistogram(BaseModel):
    """
    Counts of consecutive-packet gaps per half-open bin [edges[k], edges[k+1]).
    """

    model_config = ConfigDict(frozen=True)

    edges: Tuple[int, ...]
    counts: Tuple[int, ...]
    underflow: int = 0
    overflow: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts) + self.underflow + self.overflow
