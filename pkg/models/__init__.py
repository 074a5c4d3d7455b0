from .nic import (
    CombinedMode,
    CounterMode,
    DelayModel,
    EndPolicy,
    InterruptCause,
    InterruptEvent,
    NicConfig,
    SimpleMode,
    TimerMode,
)
from .results import CauseRatio, InterarrivalHistogram, LatencySummary, SimulationResult, WorkloadSpec
from .trace import Packet, PoissonLoadSpec, Trace, UniformLoadSpec

__all__ = [
    "CauseRatio",
    "CombinedMode",
    "CounterMode",
    "DelayModel",
    "EndPolicy",
    "InterarrivalHistogram",
    "InterruptCause",
    "InterruptEvent",
    "LatencySummary",
    "NicConfig",
    "Packet",
    "PoissonLoadSpec",
    "SimpleMode",
    "SimulationResult",
    "TimerMode",
    "Trace",
    "UniformLoadSpec",
    "WorkloadSpec",
]
