"""
Brute-force reference simulator: advances virtual time one nanosecond per step.

Shares no code with the moderation state machine or the event engine; the two
are checked against each other on small instances.
"""

from collections import deque

from models.nic import EndPolicy, InterruptCause, NicConfig
from models.results import SimulationResult, WorkloadSpec, empty_cause_counts
from models.trace import Trace


class _Pending:
    __slots__ = ("isr_left", "rx_left", "batch")

    def __init__(self, isr_left, rx_left, batch):
        self.isr_left = isr_left
        self.rx_left = rx_left
        self.batch = batch


def simulate_ticks(trace: Trace, nic: NicConfig, workload: WorkloadSpec) -> SimulationResult:
    """
    Tick-stepped equivalent of `engine.simulator.simulate` (without truncation).

    Within one tick: arrivals are taken in (raising per-packet or counter interrupts),
    then a due timer expires, then the end of the trace is handled, and finally the
    CPU spends the tick on the head of the interrupt queue, or on the workload when
    the queue is empty.
    """
    delays = nic.delays
    kind = nic.mode.kind
    threshold = nic.mode.counter_threshold
    delay = nic.mode.timer_delay
    packets = trace.packets

    causes = empty_cause_counts()
    queue = deque()
    latencies = []
    buffer = []
    deadline = None
    dropped = 0
    closed = not packets
    index = 0

    user_left = workload.required_compute
    completion = 0 if user_left == 0 else None
    isr_ticks = 0
    rx_ticks = 0
    stolen_before = 0
    service_end = 0

    def fire(batch, cause):
        causes[cause] += 1
        isr = delays.isr_constant + sum(delays.isr_per_byte * p.length for p in batch)
        rx = delays.rx_constant + sum(delays.rx_per_byte * p.length for p in batch)
        queue.append(_Pending(isr, rx, list(batch)))

    def deliver(job, when):
        latencies.extend(when - p.arrival_time for p in job.batch)

    t = 0
    while True:
        while index < len(packets) and packets[index].arrival_time == t:
            packet = packets[index]
            index += 1
            if kind == "simple":
                fire([packet], InterruptCause.PER_PACKET)
                continue
            buffer.append(packet)
            if threshold is not None and len(buffer) == threshold:
                fire(buffer, InterruptCause.COUNTER_THRESHOLD)
                buffer = []
                deadline = None
            elif delay is not None:
                deadline = t + delay

        if deadline == t and buffer:
            fire(buffer, InterruptCause.TIMER_EXPIRY)
            buffer = []
            deadline = None

        if not closed and index == len(packets):
            closed = True
            if buffer and nic.end_policy is EndPolicy.DROP:
                dropped += len(buffer)
                buffer = []
                deadline = None
            elif buffer and deadline is None:
                fire(buffer, InterruptCause.END_FLUSH)
                buffer = []

        while queue and queue[0].isr_left == 0 and queue[0].rx_left == 0:
            deliver(queue.popleft(), t)
            service_end = t

        if queue:
            job = queue[0]
            if job.isr_left:
                job.isr_left -= 1
                isr_ticks += 1
            else:
                job.rx_left -= 1
                rx_ticks += 1
            if completion is None:
                stolen_before += 1
            if job.isr_left == 0 and job.rx_left == 0:
                deliver(queue.popleft(), t + 1)
                service_end = t + 1
        elif user_left:
            user_left -= 1
            if user_left == 0:
                completion = t + 1

        if closed and not buffer and not queue and completion is not None:
            break
        t += 1

    return SimulationResult(
        execution_time=completion,
        required_compute=workload.required_compute,
        packet_count=len(packets),
        interrupt_count=sum(causes.values()),
        cause_counts=causes,
        stolen_isr=isr_ticks,
        stolen_rx=rx_ticks,
        stolen_before_completion=stolen_before,
        service_end=service_end,
        latencies=tuple(latencies),
        dropped_packets=dropped,
    )
