"""
Interrupt moderation as an explicit state machine.

Simple raises one interrupt per packet. Counter buffers packets until `threshold`
of them are waiting. Timer (re)arms a single timer to arrival + delay on every
arrival and raises when it runs out. Combined runs both rules, and whichever fires
first resets both.

At equal instants an arrival is handled before a timer expiry, so a packet landing
exactly on the deadline re-arms the timer, or completes the counter batch.
"""

import logging
from typing import List, Optional

from models.errors import SimulationOverflowError
from models.nic import EndPolicy, InterruptCause, InterruptEvent
from models.trace import MAX_VIRTUAL_TIME_NS, Packet, Trace

logger = logging.getLogger(__name__)


class ModerationStateMachine:
    """
    Consumes packet arrivals in time order and emits InterruptEvents.

    Args:
        mode: A ModerationMode (simple, counter, timer or combined).
        end_policy (EndPolicy): What happens to packets still buffered at `finish()`.
    """

    def __init__(self, mode, end_policy: EndPolicy = EndPolicy.FLUSH):
        self.mode = mode
        self.end_policy = end_policy
        self.dropped = 0
        self._per_packet = mode.kind == "simple"
        self._threshold: Optional[int] = mode.counter_threshold
        self._delay: Optional[int] = mode.timer_delay
        self._buffer: List[Packet] = []
        self._deadline: Optional[int] = None
        self._last_arrival: Optional[int] = None
        self._finished = False

    @property
    def buffered(self) -> int:
        return len(self._buffer)

    def feed(self, packet: Packet) -> List[InterruptEvent]:
        """
        Advance the machine to `packet.arrival_time` and take the packet in.

        Returns:
            List[InterruptEvent]: Interrupts raised up to and including this arrival,
            in firing order (a pending timer expiry first, then a counter trigger).
        """
        if self._finished:
            raise RuntimeError("moderation already finished")
        now = packet.arrival_time
        if self._last_arrival is not None and now < self._last_arrival:
            raise ValueError(f"arrivals must be time-ordered ({now} after {self._last_arrival})")
        self._last_arrival = now

        events = []
        if self._deadline is not None and self._deadline < now:
            events.append(self._emit(self._deadline, InterruptCause.TIMER_EXPIRY))

        if self._per_packet:
            events.append(InterruptEvent(fire_time=now, cause=InterruptCause.PER_PACKET, batch=(packet,)))
            return events

        self._buffer.append(packet)
        if self._threshold is not None and len(self._buffer) >= self._threshold:
            events.append(self._emit(now, InterruptCause.COUNTER_THRESHOLD))
        elif self._delay is not None:
            if now + self._delay > MAX_VIRTUAL_TIME_NS:
                raise SimulationOverflowError("timer deadline exceeds the 64-bit virtual time range")
            self._deadline = now + self._delay
        return events

    def finish(self) -> List[InterruptEvent]:
        """
        Close the trace. Under FLUSH a pending timer still expires normally and a
        counter-only buffer is flushed at the last arrival; under DROP the buffer is
        discarded and counted in `dropped`.
        """
        self._finished = True
        if not self.buffered:
            return []
        if self.end_policy is EndPolicy.DROP:
            self.dropped += self.buffered
            logger.debug("Dropped %d packet(s) still buffered at end of trace", self.buffered)
            self._buffer = []
            self._deadline = None
            return []
        if self._deadline is not None:
            return [self._emit(self._deadline, InterruptCause.TIMER_EXPIRY)]
        return [self._emit(self._last_arrival, InterruptCause.END_FLUSH)]

    def _emit(self, when: int, cause: InterruptCause) -> InterruptEvent:
        event = InterruptEvent(fire_time=when, cause=cause, batch=tuple(self._buffer))
        self._buffer = []
        self._deadline = None
        return event


def moderate(mode, trace: Trace, end_policy: EndPolicy = EndPolicy.FLUSH) -> List[InterruptEvent]:
    """
    Run a whole trace through a fresh ModerationStateMachine.

    Args:
        mode: The ModerationMode to apply.
        trace (Trace): Sorted packet arrivals.
        end_policy (EndPolicy): FLUSH keeps every packet, DROP discards the tail.

    Returns:
        List[InterruptEvent]: Events in non-decreasing fire_time order.
    """
    machine = ModerationStateMachine(mode, end_policy)
    events = []
    for packet in trace.packets:
        events.extend(machine.feed(packet))
    events.extend(machine.finish())
    return events
