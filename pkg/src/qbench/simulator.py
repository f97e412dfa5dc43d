"""Seedable two-qubit statevector execution with terminal readout noise.

Readout noise is pushed through the exact outcome distribution before
sampling, so :func:`exact_distribution` doubles as the analytic oracle for
everything :func:`run` samples.

Random streams come from numpy's Philox4x64-10 counter-based generator.
Each circuit gets its own stream, keyed by SHA-256 of (seed, circuit key),
so batch results do not depend on execution order.
"""
from __future__ import annotations

import hashlib
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from .circuits import ANCILLA, TARGET, Circuit, circuit_unitary
from .linalg import KET00

KEYS = ("00", "01", "10", "11")
RNG_ALGORITHM = "Philox4x64-10"


class DuplicateKey(ValueError):
    pass


@dataclass(frozen=True)
class ReadoutError:
    """Column-stochastic confusion matrix, ``matrix[r][t] = P(read r | true t)``."""

    matrix: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (2, 2):
            raise ValueError("readout error must be 2x2")
        if np.any(m < 0) or np.any(m > 1):
            raise ValueError("readout probabilities must lie in [0, 1]")
        if np.any(np.abs(m.sum(axis=0) - 1) > 1e-12):
            raise ValueError("each column of a readout error must sum to 1")
        object.__setattr__(self, "matrix", tuple(tuple(float(v) for v in row) for row in m))

    @classmethod
    def from_rows(cls, rows) -> "ReadoutError":
        """Build from per-true-state rows ``[[P(0|0), P(1|0)], [P(0|1), P(1|1)]]``."""
        return cls(tuple(zip(*rows)))

    @classmethod
    def from_probabilities(cls, prob_meas0_prep1: float, prob_meas1_prep0: float) -> "ReadoutError":
        p01, p10 = prob_meas0_prep1, prob_meas1_prep0
        return cls(((1 - p10, p01), (p10, 1 - p01)))

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=float)


@dataclass(frozen=True)
class NoiseModel:
    target: ReadoutError | None = None
    ancilla: ReadoutError | None = None

    def confusion(self) -> np.ndarray:
        eye = np.eye(2)
        anc = self.ancilla.array() if self.ancilla else eye
        tgt = self.target.array() if self.target else eye
        return np.kron(anc, tgt)

    @classmethod
    def uniform(cls, error: ReadoutError) -> "NoiseModel":
        return cls(target=error, ancilla=error)


def _ideal_probabilities(c: Circuit) -> np.ndarray:
    amps = circuit_unitary(c) @ KET00
    return np.abs(amps) ** 2


def exact_distribution(c: Circuit, noise: NoiseModel | None = None) -> dict[str, float]:
    probs = _ideal_probabilities(c)
    if noise is not None and (noise.target is not None or noise.ancilla is not None):
        probs = noise.confusion() @ probs
    return dict(zip(KEYS, (float(v) for v in probs)))


def substream(seed: int, key: str = "") -> np.random.Generator:
    digest = hashlib.sha256(f"{int(seed)}\x00{key}".encode()).digest()
    words = np.frombuffer(digest, dtype=np.uint32)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(words.tolist())))


def _sample(probs: Mapping[str, float], shots: int, rng: np.random.Generator) -> dict[str, int]:
    p = np.clip(np.array([probs[k] for k in KEYS]), 0.0, None)
    p = p / p.sum()
    counts = rng.multinomial(shots, p)
    return {k: int(n) for k, n in zip(KEYS, counts) if n}


def run(c: Circuit, shots: int, seed: int, noise: NoiseModel | None = None, key: str = "") -> dict[str, int]:
    """Sample ``shots`` terminal measurements of both qubits.

    Keys are "<ancilla bit><target bit>"; outcomes with zero counts are omitted.
    """
    if shots < 1:
        raise ValueError("shots must be a positive integer")
    return _sample(exact_distribution(c, noise), shots, substream(seed, key))


def run_batch(circuits, shots: int, seed: int, noise: NoiseModel | None = None) -> dict[str, dict[str, int]]:
    """Run keyed circuits; accepts a mapping or an iterable of (key, circuit) pairs."""
    items: Iterable = circuits.items() if isinstance(circuits, Mapping) else circuits
    keyed: dict[str, Circuit] = {}
    for k, c in items:
        if k in keyed:
            raise DuplicateKey(k)
        keyed[k] = c
    return {k: run(c, shots, seed, noise, key=k) for k, c in sorted(keyed.items())}


def role_bit(key: str, role: str) -> int:
    if role == ANCILLA:
        return int(key[0])
    if role == TARGET:
        return int(key[1])
    raise ValueError(f"unknown role {role!r}")
