"""YAML-driven benchmark workflow behind the ``qbench`` command."""
from .angles import AngleRange, DivisionByZero, ParseError, angle_grid, parse_angle_expr
from .config import BackendConfig, ExperimentConfig, IoError, QubitPair, SchemaError, load_backend, load_experiment
from .jobs import JobsPending, JobStore, JobStoreError, UnknownJob
from .report import CSV_HEADER, MalformedCsv, TabulatedRow, plot, tabulate
from .workflow import MalformedResults, job_status, resolve, run_benchmark

__all__ = [
    "AngleRange", "DivisionByZero", "ParseError", "angle_grid", "parse_angle_expr",
    "BackendConfig", "ExperimentConfig", "IoError", "QubitPair", "SchemaError", "load_backend", "load_experiment",
    "JobsPending", "JobStore", "JobStoreError", "UnknownJob",
    "CSV_HEADER", "MalformedCsv", "TabulatedRow", "plot", "tabulate",
    "MalformedResults", "job_status", "resolve", "run_benchmark",
]
