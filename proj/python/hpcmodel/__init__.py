"""Analytical modeling of HPC cluster capacity and performance.

Thin Python surface over the C++ core: cluster descriptions are loaded from
JSON, validated, and fed to pure analysis functions (theoretical peaks,
memory-bandwidth derivations, fat-tree audits, storage capacity, PUE).
"""

from ._core import (
    BenchMetric,
    BenchReport,
    HbmBandwidth,
    Cluster,
    ParseError,
    PeakRow,
    ValidationError,
    __version__,
    bisection_bandwidth,
    blocking_factor,
    ddr_bandwidth,
    format_bench,
    hbm_peak_bandwidth,
    load,
    load_bench,
    parse,
    parse_bench,
    peak,
    peak_memory_bandwidth,
    pue,
    report_json,
    save,
    serialize,
    storage_summary,
    validate,
)

__all__ = [
    "BenchMetric",
    "BenchReport",
    "HbmBandwidth",
    "Cluster",
    "ParseError",
    "PeakRow",
    "ValidationError",
    "__version__",
    "bisection_bandwidth",
    "blocking_factor",
    "ddr_bandwidth",
    "format_bench",
    "hbm_peak_bandwidth",
    "load",
    "load_bench",
    "parse",
    "parse_bench",
    "peak",
    "peak_memory_bandwidth",
    "pue",
    "report_json",
    "save",
    "serialize",
    "storage_summary",
    "validate",
]
