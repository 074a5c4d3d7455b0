from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.nic import NicConfig
from models.results import WorkloadSpec
from models.sweep import SweepAxes
from models.trace import MAX_SEED, PoissonLoadSpec, UniformLoadSpec


class LoadConfig(BaseModel):
    """
    Where the packets come from. Exactly one source may be given.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    uniform: Optional[UniformLoadSpec] = None
    poisson: Optional[PoissonLoadSpec] = None
    trace: Optional[str] = Field(default=None, description="canonical trace file path")
    pcap: Optional[str] = Field(default=None, description="classic PCAP file path")

    @model_validator(mode="after")
    def _exactly_one(self) -> "LoadConfig":
        given = [name for name in ("uniform", "poisson", "trace", "pcap") if getattr(self, name) is not None]
        if len(given) != 1:
            detail = ", ".join(given) if given else "none"
            raise ValueError(f"exactly one load source must be configured (got: {detail})")
        return self

    @property
    def kind(self) -> str:
        for name in ("uniform", "poisson", "trace", "pcap"):
            if getattr(self, name) is not None:
                return name
        raise AssertionError("unreachable: validator guarantees one load source")


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class OutputConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    path: Optional[str] = None
    format: OutputFormat = OutputFormat.CSV
    aggregate_seeds: bool = Field(default=False, description="sweep: one row per grid point, mean and std over seeds")


class SimulationOptions(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    truncate_at_completion: bool = False
    keep_events: bool = False


class ExperimentConfig(BaseModel):
    """
    A complete experiment: load, NIC, user workload, optional sweep and output.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    load: LoadConfig
    nic: NicConfig
    workload: WorkloadSpec
    sweep: Optional[SweepAxes] = None
    seeds: List[int] = Field(default_factory=lambda: [0])
    output: OutputConfig = Field(default_factory=OutputConfig)
    simulation: SimulationOptions = Field(default_factory=SimulationOptions)

    @model_validator(mode="after")
    def _axes_fit_load(self) -> "ExperimentConfig":
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if any(not 0 <= seed <= MAX_SEED for seed in self.seeds):
            raise ValueError("seeds must be unsigned 64-bit integers")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be distinct")
        if self.sweep is not None and self.sweep.lam is not None and self.load.poisson is None:
            raise ValueError("lambda axis is only valid for a poisson load")
        return self
