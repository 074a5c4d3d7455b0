from .cost import isr_duration, rx_duration, service_durations
from .moderation import ModerationStateMachine, moderate

__all__ = [
    "ModerationStateMachine",
    "isr_duration",
    "moderate",
    "rx_duration",
    "service_durations",
]
