from .builder import build_trace
from .generators import generate_poisson, generate_uniform, interarrival_histogram
from .pcap import load_pcap, parse_pcap, pcap_summary, write_pcap
from .trace_io import read_trace_file, write_trace_file

__all__ = [
    "build_trace",
    "generate_poisson",
    "generate_uniform",
    "interarrival_histogram",
    "load_pcap",
    "parse_pcap",
    "pcap_summary",
    "read_trace_file",
    "write_pcap",
    "write_trace_file",
]
