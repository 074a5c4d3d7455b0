from enum import Enum
from typing import Annotated, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.trace import Packet


class DelayModel(BaseModel):
    """
    Cost coefficients of interrupt service, d(l) = d_l * l + d_c, kept once for the
    ISR and once for the receiver task that runs right after it.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    isr_per_byte: int = Field(default=0, ge=0)
    isr_constant: int = Field(default=0, ge=0)
    rx_per_byte: int = Field(default=0, ge=0)
    rx_constant: int = Field(default=0, ge=0)
    allow_zero_cost: bool = False

    @model_validator(mode="after")
    def _reject_zero_cost(self) -> "DelayModel":
        coefficients = (self.isr_per_byte, self.isr_constant, self.rx_per_byte, self.rx_constant)
        if not any(coefficients) and not self.allow_zero_cost:
            raise ValueError(
                "all four delay coefficients are zero; set allow_zero_cost to run a zero-cost NIC"
            )
        return self


class SimpleMode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["simple"] = "simple"

    @property
    def counter_threshold(self) -> Optional[int]:
        return None

    @property
    def timer_delay(self) -> Optional[int]:
        return None


class CounterMode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["counter"] = "counter"
    threshold: int = Field(ge=1)

    @property
    def counter_threshold(self) -> Optional[int]:
        return self.threshold

    @property
    def timer_delay(self) -> Optional[int]:
        return None


class TimerMode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["timer"] = "timer"
    delay: int = Field(ge=1)

    @property
    def counter_threshold(self) -> Optional[int]:
        return None

    @property
    def timer_delay(self) -> Optional[int]:
        return self.delay


class CombinedMode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["combined"] = "combined"
    threshold: int = Field(ge=1)
    delay: int = Field(ge=1)

    @property
    def counter_threshold(self) -> Optional[int]:
        return self.threshold

    @property
    def timer_delay(self) -> Optional[int]:
        return self.delay


ModerationMode = Annotated[
    Union[SimpleMode, CounterMode, TimerMode, CombinedMode],
    Field(discriminator="kind"),
]


class InterruptCause(str, Enum):
    PER_PACKET = "per_packet"
    COUNTER_THRESHOLD = "counter_threshold"
    TIMER_EXPIRY = "timer_expiry"
    END_FLUSH = "end_flush"


class EndPolicy(str, Enum):
    FLUSH = "flush"
    DROP = "drop"


class InterruptEvent(BaseModel):
    """
    One interrupt raised by the NIC, delivering a non-empty batch of packets.
    """

    model_config = ConfigDict(frozen=True)

    fire_time: int = Field(ge=0)
    cause: InterruptCause
    batch: Tuple[Packet, ...]

    @model_validator(mode="after")
    def _check_batch(self) -> "InterruptEvent":
        if not self.batch:
            raise ValueError("interrupt batch must not be empty")
        if self.fire_time < max(packet.arrival_time for packet in self.batch):
            raise ValueError("interrupt fires before a packet of its batch arrived")
        if self.cause is InterruptCause.PER_PACKET and len(self.batch) != 1:
            raise ValueError("per-packet interrupts carry exactly one packet")
        return self


class NicConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: ModerationMode = Field(default_factory=SimpleMode)
    delays: DelayModel
    end_policy: EndPolicy = EndPolicy.FLUSH


def mode_with(mode, threshold: Optional[int] = None, delay: Optional[int] = None):
    """
    Return a copy of `mode` with its counter threshold and/or timer delay replaced.

    Args:
        mode: A ModerationMode instance.
        threshold: New counter threshold, or None to keep the current one.
        delay: New timer delay in nanoseconds, or None to keep the current one.

    Returns:
        A validated ModerationMode of the same kind.

    Raises:
        ValueError: If the mode has no such field or the new value is invalid.
    """
    data = mode.model_dump()
    if threshold is not None:
        if mode.counter_threshold is None:
            raise ValueError(f"'{mode.kind}' mode has no counter threshold")
        data["threshold"] = threshold
    if delay is not None:
        if mode.timer_delay is None:
            raise ValueError(f"'{mode.kind}' mode has no timer delay")
        data["delay"] = delay
    return type(mode).model_validate(data)
