from typing import Sequence, Tuple

from models.nic import DelayModel
from models.trace import Packet


def _linear_cost(per_byte: int, constant: int, batch: Sequence[Packet]) -> int:
    if not batch:
        raise ValueError("interrupt cost needs a non-empty batch")
    return constant + per_byte * sum(packet.length for packet in batch)


def isr_duration(delays: DelayModel, batch: Sequence[Packet]) -> int:
    """
    ISR time for one interrupt: d_c once plus d_l for every byte of every packet.
    """
    return _linear_cost(delays.isr_per_byte, delays.isr_constant, batch)


def rx_duration(delays: DelayModel, batch: Sequence[Packet]) -> int:
    """
    Receiver-task time for one interrupt, same shape as `isr_duration`.
    """
    return _linear_cost(delays.rx_per_byte, delays.rx_constant, batch)


def service_durations(delays: DelayModel, batch: Sequence[Packet]) -> Tuple[int, int]:
    return isr_duration(delays, batch), rx_duration(delays, batch)
