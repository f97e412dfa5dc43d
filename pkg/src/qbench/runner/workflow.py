"""Benchmark execution: synchronous runs, asynchronous submission, status and resolution."""
from __future__ import annotations

import hashlib
import json
import secrets
from collections import Counter
from collections.abc import Mapping

from ..schemes import MitigationInfo, certification_circuits, mitigate_histogram
from ..simulator import KEYS, NoiseModel, ReadoutError, run, substream
from .angles import angle_grid
from .config import BackendConfig, ExperimentConfig, SchemaError
from .jobs import DONE, JobStore, JobStoreError, JobsPending

RESULT_FIELDS = ("target", "ancilla", "phi", "delta", "results_per_circuit")


class MalformedResults(ValueError):
    pass


def _noise(backend: BackendConfig, target: int, ancilla: int) -> NoiseModel | None:
    if backend.noise is None:
        return None
    t, a = backend.readout(target), backend.readout(ancilla)
    return NoiseModel(
        target=ReadoutError.from_probabilities(t.prob_meas0_prep1, t.prob_meas1_prep0),
        ancilla=ReadoutError.from_probabilities(a.prob_meas0_prep1, a.prob_meas1_prep0),
    )


def _circuit_key(target, ancilla, name, phi, delta) -> str:
    return f"{target}/{ancilla}/{name}/{phi!r}/{delta!r}"


def _metadata(exp: ExperimentConfig, backend: BackendConfig) -> dict:
    return {"experiments": exp.to_dict(), "backend_description": backend.to_dict()}


def _execute(exp: ExperimentConfig, backend: BackendConfig, seed: int, target: int, ancilla: int):
    """Yield ((target, ancilla, name, phi, delta), histogram) in grid order."""
    noise = _noise(backend, target, ancilla)
    for phi in angle_grid(exp.angles):
        circuits = certification_circuits(phi, exp.delta, exp.method, exp.gateset)
        for name in sorted(circuits):
            key = (target, ancilla, name, phi, exp.delta)
            counts = run(circuits[name], exp.num_shots, seed, noise, key=_circuit_key(*key))
            yield key, {k: counts[k] for k in sorted(counts)}


def _circuit_result(name: str, histogram: Mapping, backend: BackendConfig, target: int, ancilla: int) -> dict:
    entry = {"name": name, "histogram": dict(histogram)}
    if backend.noise is not None:
        t, a = backend.readout(target), backend.readout(ancilla)
        entry["mitigation_info"] = {"target": t.to_dict(), "ancilla": a.to_dict()}
        entry["mitigated_histogram"] = mitigate_histogram(histogram, t, a)
    return entry


def _records(results, backend: BackendConfig) -> list[dict]:
    """Group (key, histogram) pairs into one record per (pair, phi, delta)."""
    records: dict[tuple, dict] = {}
    for (target, ancilla, name, phi, delta), histogram in results:
        rec = records.setdefault((target, ancilla, phi, delta), {
            "target": target, "ancilla": ancilla, "phi": phi, "delta": delta, "results_per_circuit": [],
        })
        rec["results_per_circuit"].append(_circuit_result(name, histogram, backend, target, ancilla))
    return list(records.values())


def _job_id(seed: int, exp: ExperimentConfig, target: int, ancilla: int) -> str:
    digest = hashlib.sha256(json.dumps(exp.to_dict(), sort_keys=True).encode()).hexdigest()
    return substream(seed, f"job/{digest}/{target}/{ancilla}").bytes(8).hex()


def run_benchmark(exp: ExperimentConfig, backend: BackendConfig) -> dict:
    """Run every (qubit pair, phi) of the experiment.

    Synchronous backends return the resolved result document. Asynchronous
    ones execute eagerly, park one job per qubit pair in the job store and
    return the intermediate document listing job ids and key tuples.
    """
    seed = backend.seed if backend.seed is not None else secrets.randbits(63)
    doc = {"metadata": _metadata(exp, backend), "data": []}
    if not backend.asynchronous:
        results = [item for q in exp.qubits for item in _execute(exp, backend, seed, q.target, q.ancilla)]
        doc["data"] = _records(results, backend)
        return doc
    store = JobStore(backend.job_store)
    for q in exp.qubits:
        keys, histograms = zip(*_execute(exp, backend, seed, q.target, q.ancilla))
        job_id = _job_id(seed, exp, q.target, q.ancilla)
        store.put(job_id, keys, list(histograms), DONE)
        doc["data"].append({"job_id": job_id, "keys": [list(k) for k in keys]})
    return doc


def _async_parts(async_doc) -> tuple[BackendConfig, list]:
    if not isinstance(async_doc, Mapping) or not isinstance(async_doc.get("metadata"), Mapping):
        raise MalformedResults("missing metadata")
    try:
        backend = BackendConfig.from_dict(async_doc["metadata"].get("backend_description"))
    except SchemaError as exc:
        raise MalformedResults(f"backend_description: {exc}") from exc
    data = async_doc.get("data")
    if not isinstance(data, list):
        raise MalformedResults("data must be a list")
    seen = set()
    for entry in data:
        if not isinstance(entry, Mapping) or "job_id" not in entry or not isinstance(entry.get("keys"), list):
            raise MalformedResults("each data entry needs job_id and keys")
        if entry["job_id"] in seen:
            raise MalformedResults(f"duplicate job id {entry['job_id']}")
        seen.add(entry["job_id"])
        if any(not isinstance(k, list) or len(k) != 5 for k in entry["keys"]):
            raise MalformedResults("each key must be [target, ancilla, name, phi, delta]")
    return backend, data


def job_status(async_doc) -> dict[str, int]:
    backend, data = _async_parts(async_doc)
    if not data:
        return {}
    store = JobStore(backend.job_store)
    return dict(Counter(store.status(entry["job_id"]) for entry in data))


def resolve(async_doc) -> dict:
    """Replace job references with the histograms they produced."""
    backend, data = _async_parts(async_doc)
    meta = dict(async_doc["metadata"])
    if not data:
        return {"metadata": meta, "data": []}
    store = JobStore(backend.job_store)
    jobs = [store.get(entry["job_id"]) for entry in data]
    pending = [job["job_id"] for job in jobs if job["status"] != DONE]
    if pending:
        raise JobsPending(pending)
    results = []
    for entry, job in zip(data, jobs):
        if [list(k) for k in entry["keys"]] != job["keys"]:
            raise JobStoreError(f"job {entry['job_id']} holds different keys than the result file")
        results.extend((tuple(k), h) for k, h in zip(job["keys"], job["histograms"]))
    return {"metadata": meta, "data": _records(results, backend)}


def validate_resolved(doc) -> list[dict]:
    """Check a resolved result document and return its data records."""
    if not isinstance(doc, Mapping) or not isinstance(doc.get("data"), list):
        raise MalformedResults("expected a mapping with a 'data' list")
    for n, rec in enumerate(doc["data"]):
        if not isinstance(rec, Mapping) or any(f not in rec for f in RESULT_FIELDS):
            raise MalformedResults(f"data[{n}] lacks one of {list(RESULT_FIELDS)}")
        circuits = rec["results_per_circuit"]
        if not isinstance(circuits, list) or not circuits:
            raise MalformedResults(f"data[{n}].results_per_circuit must be a nonempty list")
        for c in circuits:
            h = c.get("histogram") if isinstance(c, Mapping) else None
            if not isinstance(h, Mapping) or any(k not in KEYS for k in h):
                raise MalformedResults(f"data[{n}] has a malformed histogram")
            if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in h.values()):
                raise MalformedResults(f"data[{n}] histogram counts must be non-negative integers")
            m = c.get("mitigated_histogram")
            if m is not None and abs(sum(m.values()) - 1) > 1e-6:
                raise MalformedResults(f"data[{n}] mitigated histogram does not sum to 1")
            info = c.get("mitigation_info")
            if info is not None:
                try:
                    for role in ("target", "ancilla"):
                        MitigationInfo(**info[role])
                except (KeyError, TypeError, ValueError) as exc:
                    raise MalformedResults(f"data[{n}] malformed mitigation_info") from exc
    return list(doc["data"])
