"""Experiment and backend YAML configuration."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

import yaml

from ..circuits import GATESETS
from ..schemes import METHODS, MitigationInfo
from .angles import AngleRange, DivisionByZero, ParseError

EXPERIMENT_TYPE = "certification-fourier"
LOCAL_SIMULATOR = "local_simulator"
BACKEND_KINDS = (LOCAL_SIMULATOR,)
DEFAULT_JOB_STORE = ".qbench_jobs"


class SchemaError(ValueError):
    def __init__(self, field: str, reason: str = "invalid"):
        super().__init__(f"{field}: {reason}")
        self.field = field


class IoError(OSError):
    pass


def read_yaml(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(str(path), f"not valid YAML ({exc.__class__.__name__})") from exc


def write_yaml(doc, path=None) -> str:
    text = yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return text


def _mapping(doc, where: str) -> Mapping:
    if not isinstance(doc, Mapping):
        raise SchemaError(where, "expected a mapping")
    return doc


def _check_fields(doc: Mapping, required, optional=(), where=""):
    prefix = f"{where}." if where else ""
    for name in doc:
        if name not in required and name not in optional:
            raise SchemaError(f"{prefix}{name}", "unknown field")
    for name in required:
        if name not in doc:
            raise SchemaError(f"{prefix}{name}", "missing required field")


def _int(value, name: str, lo: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(name, "expected an integer")
    if lo is not None and value < lo:
        raise SchemaError(name, f"must be >= {lo}")
    return value


def _probability(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(name, "expected a number")
    if not 0.0 <= value <= 1.0:
        raise SchemaError(name, "must lie in [0, 1]")
    return float(value)


@dataclass(frozen=True)
class QubitPair:
    target: int
    ancilla: int


@dataclass(frozen=True)
class ExperimentConfig:
    qubits: tuple[QubitPair, ...]
    angles: AngleRange
    delta: float
    gateset: str
    method: str
    num_shots: int
    type: str = EXPERIMENT_TYPE

    @classmethod
    def from_dict(cls, doc) -> "ExperimentConfig":
        doc = _mapping(doc, "experiment")
        _check_fields(doc, ("type", "qubits", "angles", "delta", "gateset", "method", "num_shots"))
        if doc["type"] != EXPERIMENT_TYPE:
            raise SchemaError("type", f"expected {EXPERIMENT_TYPE!r}")
        if not isinstance(doc["qubits"], list) or not doc["qubits"]:
            raise SchemaError("qubits", "expected a nonempty list")
        pairs = []
        for k, item in enumerate(doc["qubits"]):
            where = f"qubits[{k}]"
            item = _mapping(item, where)
            _check_fields(item, ("target", "ancilla"), where=where)
            pair = QubitPair(_int(item["target"], f"{where}.target", 0), _int(item["ancilla"], f"{where}.ancilla", 0))
            if pair.target == pair.ancilla:
                raise SchemaError(where, "target and ancilla must differ")
            pairs.append(pair)
        angles = _mapping(doc["angles"], "angles")
        _check_fields(angles, ("start", "stop", "num_steps"), where="angles")
        try:
            rng = AngleRange(angles["start"], angles["stop"], _int(angles["num_steps"], "angles.num_steps", 2))
        except (ParseError, DivisionByZero):
            raise
        except ValueError as exc:
            raise SchemaError("angles", str(exc)) from exc
        if doc["gateset"] not in GATESETS:
            raise SchemaError("gateset", f"expected one of {list(GATESETS)}")
        if doc["method"] not in METHODS:
            raise SchemaError("method", f"expected one of {list(METHODS)}")
        return cls(
            qubits=tuple(pairs),
            angles=rng,
            delta=_probability(doc["delta"], "delta"),
            gateset=doc["gateset"],
            method=doc["method"],
            num_shots=_int(doc["num_shots"], "num_shots", 1),
        )

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "qubits": [{"target": q.target, "ancilla": q.ancilla} for q in self.qubits],
            "angles": {"start": self.angles.start, "stop": self.angles.stop, "num_steps": self.angles.num_steps},
            "delta": self.delta,
            "gateset": self.gateset,
            "method": self.method,
            "num_shots": self.num_shots,
        }


@dataclass(frozen=True)
class BackendConfig:
    """Local simulator description.

    ``noise`` maps physical qubit indices to readout error rates. ``provider``
    is carried through untouched for files written against hardware backends.
    """

    name: str
    asynchronous: bool = False
    kind: str = LOCAL_SIMULATOR
    seed: int | None = None
    noise: tuple[tuple[int, MitigationInfo], ...] | None = None
    provider: Mapping | None = None
    job_store: str = DEFAULT_JOB_STORE

    def readout(self, qubit: int) -> MitigationInfo:
        """Rates for one physical qubit; qubits not listed read out perfectly."""
        return dict(self.noise or ()).get(qubit, MitigationInfo())

    @classmethod
    def from_dict(cls, doc) -> "BackendConfig":
        doc = _mapping(doc, "backend")
        _check_fields(doc, ("name",), ("asynchronous", "kind", "seed", "noise", "provider", "job_store"))
        if not isinstance(doc["name"], str) or not doc["name"]:
            raise SchemaError("name", "expected a nonempty string")
        asynchronous = doc.get("asynchronous", False)
        if not isinstance(asynchronous, bool):
            raise SchemaError("asynchronous", "expected true or false")
        kind = doc.get("kind", LOCAL_SIMULATOR)
        if kind not in BACKEND_KINDS:
            raise SchemaError("kind", f"expected one of {list(BACKEND_KINDS)}")
        seed = doc.get("seed")
        if seed is not None:
            seed = _int(seed, "seed", 0)
        noise = None
        if doc.get("noise") is not None:
            entries = []
            for qubit, rates in _mapping(doc["noise"], "noise").items():
                where = f"noise.{qubit}"
                rates = _mapping(rates, where)
                _check_fields(rates, ("prob_meas0_prep1", "prob_meas1_prep0"), where=where)
                entries.append((
                    _int(qubit, where, 0),
                    MitigationInfo(
                        _probability(rates["prob_meas0_prep1"], f"{where}.prob_meas0_prep1"),
                        _probability(rates["prob_meas1_prep0"], f"{where}.prob_meas1_prep0"),
                    ),
                ))
            noise = tuple(sorted(entries, key=lambda e: e[0]))
        provider = doc.get("provider")
        if provider is not None:
            provider = dict(_mapping(provider, "provider"))
        job_store = doc.get("job_store", DEFAULT_JOB_STORE)
        if not isinstance(job_store, str) or not job_store:
            raise SchemaError("job_store", "expected a nonempty path")
        return cls(doc["name"], asynchronous, kind, seed, noise, provider, job_store)

    def to_dict(self) -> dict:
        out: dict = {"name": self.name, "asynchronous": self.asynchronous, "kind": self.kind}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.noise is not None:
            out["noise"] = {q: info.to_dict() for q, info in self.noise}
        if self.provider is not None:
            out["provider"] = dict(self.provider)
        out["job_store"] = self.job_store
        return out


def load_experiment(path) -> ExperimentConfig:
    return ExperimentConfig.from_dict(read_yaml(path))


def load_backend(path) -> BackendConfig:
    return BackendConfig.from_dict(read_yaml(path))
