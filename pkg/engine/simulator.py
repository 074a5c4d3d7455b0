"""
Event-driven executor for one virtual CPU shared by the user workload and
interrupt service.

Each interrupt preempts the workload for its ISR time followed directly by its
receiver-task time. Overlapping interrupts queue FIFO and never nest. The workload
completes once it has accumulated `required_compute` nanoseconds of CPU.
"""

import logging

from models.errors import SimulationOverflowError
from models.nic import NicConfig
from models.results import SimulationResult, WorkloadSpec, empty_cause_counts
from models.trace import MAX_VIRTUAL_TIME_NS, Trace
from nic.cost import service_durations
from nic.moderation import ModerationStateMachine

logger = logging.getLogger(__name__)


def simulate(
    trace: Trace,
    nic: NicConfig,
    workload: WorkloadSpec,
    *,
    truncate_at_completion: bool = False,
    keep_events: bool = False,
) -> SimulationResult:
    """
    Simulate the workload under the interrupt load produced by `nic` on `trace`.

    Interrupts firing after the workload completed are still serviced and counted,
    but add nothing to `execution_time`. With `truncate_at_completion` they are not
    serviced at all and their packets are reported as dropped.

    Args:
        trace (Trace): Packet arrivals.
        nic (NicConfig): Moderation mode, cost coefficients and end-of-trace policy.
        workload (WorkloadSpec): CPU time the user code needs.
        truncate_at_completion (bool): Stop servicing interrupts once the workload is done.
        keep_events (bool): Attach the serviced InterruptEvent timeline to the result.

    Returns:
        SimulationResult: Execution time, interrupt counts, stolen time and latencies.
    """
    machine = ModerationStateMachine(nic.mode, nic.end_policy)
    events = []
    for packet in trace.packets:
        events.extend(machine.feed(packet))
    events.extend(machine.finish())

    remaining = workload.required_compute
    completion = 0 if remaining == 0 else None
    busy_until = 0
    stolen_isr = 0
    stolen_rx = 0
    stolen_before = 0
    dropped = machine.dropped
    causes = empty_cause_counts()
    latencies = []
    serviced = []

    for event in events:
        start = max(event.fire_time, busy_until)
        if completion is None:
            runnable = start - busy_until
            if remaining <= runnable:
                completion = busy_until + remaining
                remaining = 0
            else:
                remaining -= runnable
        if truncate_at_completion and completion is not None and start >= completion:
            dropped += len(event.batch)
            continue

        isr, rx = service_durations(nic.delays, event.batch)
        end = start + isr + rx
        if end > MAX_VIRTUAL_TIME_NS:
            raise SimulationOverflowError(f"interrupt service ends past the 64-bit range (t={end})")
        if completion is None:
            stolen_before += isr + rx
        stolen_isr += isr
        stolen_rx += rx
        busy_until = end
        causes[event.cause] += 1
        latencies.extend(end - packet.arrival_time for packet in event.batch)
        if keep_events:
            serviced.append(event)

    if completion is None:
        completion = busy_until + remaining
    if completion > MAX_VIRTUAL_TIME_NS:
        raise SimulationOverflowError(f"workload completes past the 64-bit range (t={completion})")

    interrupt_count = sum(causes.values())
    logger.debug(
        "Simulated %d packets: %d interrupts, execution time %d ns", len(trace), interrupt_count, completion
    )
    return SimulationResult(
        execution_time=completion,
        required_compute=workload.required_compute,
        packet_count=len(trace),
        interrupt_count=interrupt_count,
        cause_counts=causes,
        stolen_isr=stolen_isr,
        stolen_rx=stolen_rx,
        stolen_before_completion=stolen_before,
        service_end=busy_until,
        latencies=tuple(latencies),
        dropped_packets=dropped,
        events=tuple(serviced) if keep_events else None,
    )
