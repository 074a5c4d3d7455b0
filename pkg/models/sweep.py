from math import prod
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.nic import NicConfig
from models.results import SimulationResult
from models.trace import MAX_SEED


class SweepAxes(BaseModel):
    """
    Optional parameter lists; an axis left out keeps the base configuration's value.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    lam: Optional[List[float]] = Field(default=None, alias="lambda")
    counter_threshold: Optional[List[int]] = None
    timer_delay: Optional[List[int]] = None

    @field_validator("lam", "counter_threshold", "timer_delay")
    @classmethod
    def _non_empty(cls, values):
        if values is not None and len(values) == 0:
            raise ValueError("sweep axis must list at least one value")
        if values is not None and len(set(values)) != len(values):
            raise ValueError("sweep axis values must be distinct")
        return values

    def declared(self) -> Dict[str, list]:
        return {
            name: values
            for name, values in (
                ("lambda", self.lam),
                ("counter_threshold", self.counter_threshold),
                ("timer_delay", self.timer_delay),
            )
            if values is not None
        }


class SweepGrid(BaseModel):
    """
    Cartesian grid of NIC/load parameters around a base NIC configuration.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    nic: NicConfig
    axes: SweepAxes = Field(default_factory=SweepAxes)
    seeds: List[int] = Field(default_factory=lambda: [0])

    @field_validator("seeds")
    @classmethod
    def _valid_seeds(cls, seeds):
        if not seeds:
            raise ValueError("at least one seed is required")
        if len(set(seeds)) != len(seeds):
            raise ValueError("seeds must be distinct")
        for seed in seeds:
            if not 0 <= seed <= MAX_SEED:
                raise ValueError(f"seed {seed} is outside the unsigned 64-bit range")
        return seeds

    @model_validator(mode="after")
    def _axes_match_mode(self) -> "SweepGrid":
        mode = self.nic.mode
        if self.axes.counter_threshold is not None and mode.counter_threshold is None:
            raise ValueError(f"counter_threshold axis needs a counter or combined NIC, got '{mode.kind}'")
        if self.axes.timer_delay is not None and mode.timer_delay is None:
            raise ValueError(f"timer_delay axis needs a timer or combined NIC, got '{mode.kind}'")
        return self

    @property
    def size(self) -> int:
        return prod(len(values) for values in self.axes.declared().values()) * len(self.seeds)


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int
    lam: Optional[float] = None
    counter_threshold: Optional[int] = None
    timer_delay: Optional[int] = None
    seed: Optional[int] = 0

    def coordinates(self) -> Dict[str, object]:
        return {
            "lambda": self.lam,
            "counter_threshold": self.counter_threshold,
            "timer_delay": self.timer_delay,
            "seed": self.seed,
        }


class SweepRun(BaseModel):
    model_config = ConfigDict(frozen=True)

    point: SweepPoint
    result: SimulationResult


class SweepCell(BaseModel):
    """
    Scalar metrics of one grid point. In seed-aggregated tables `metrics` holds means
    and `spread` the sample standard deviations.
    """

    model_config = ConfigDict(frozen=True)

    coordinates: Dict[str, Any]
    seeds: Tuple[int, ...]
    metrics: Dict[str, Union[int, float, None]]
    spread: Optional[Dict[str, Optional[float]]] = None


class SweepTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    axes: Dict[str, Tuple]
    cells: Tuple[SweepCell, ...]
    aggregated: bool = False

    @model_validator(mode="after")
    def _cell_count(self) -> "SweepTable":
        expected = prod(len(values) for values in self.axes.values())
        if len(self.cells) != expected:
            raise ValueError(f"table has {len(self.cells)} cells, axes describe {expected}")
        return self

    def cell(self, **coordinates) -> SweepCell:
        for cell in self.cells:
            if all(cell.coordinates.get(key) == value for key, value in coordinates.items()):
                return cell
        raise KeyError(coordinates)
