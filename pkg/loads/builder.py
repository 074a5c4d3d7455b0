import logging
from typing import Optional

from loads.generators import generate_poisson, generate_uniform
from loads.pcap import load_pcap
from loads.trace_io import read_trace_file
from models.experiment import LoadConfig
from models.trace import Trace

logger = logging.getLogger(__name__)


def build_trace(load: LoadConfig, lam: Optional[float] = None, seed: Optional[int] = None) -> Trace:
    """
    Materialise the configured load source into a Trace.

    Args:
        load (LoadConfig): The experiment's load section.
        lam (Optional[float]): Overrides the poisson rate (lambda sweep axis).
        seed (Optional[int]): Overrides the poisson seed; ignored by deterministic sources.

    Returns:
        Trace: The packets driving one simulation.
    """
    if load.uniform is not None:
        return generate_uniform(load.uniform)
    if load.poisson is not None:
        changes = {}
        if lam is not None:
            changes["lam"] = lam
        if seed is not None:
            changes["seed"] = seed
        spec = load.poisson.model_validate({**load.poisson.model_dump(), **changes}) if changes else load.poisson
        return generate_poisson(spec)
    if load.trace is not None:
        return read_trace_file(load.trace)
    _, trace = load_pcap(load.pcap)
    return trace
