"""Certification circuits, type-II error estimators and readout mitigation.

Outcome keys are "<j><i>": the left character is the ancilla bit j (accept
H0 when j = 0) and the right character is the target bit i.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from . import linalg
from .circuits import (
    ANCILLA, GENERIC, TARGET, Circuit, bell_prep, direct_sum_block, fourier_u_dag, on_role,
    single_qubit_fragment,
)
from .simulator import KEYS
from .theory import certification_strategy

POSTSELECTION = "postselection"
DIRECT_SUM = "direct_sum"
METHODS = (POSTSELECTION, DIRECT_SUM)


class MalformedFragment(ValueError):
    pass


class NoValidShots(ValueError):
    pass


class SingularConfusion(ValueError):
    pass


@dataclass(frozen=True)
class MitigationInfo:
    prob_meas0_prep1: float = 0.0
    prob_meas1_prep0: float = 0.0

    def __post_init__(self):
        for name in ("prob_meas0_prep1", "prob_meas1_prep0"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    def confusion(self) -> np.ndarray:
        p01, p10 = self.prob_meas0_prep1, self.prob_meas1_prep0
        return np.array([[1 - p10, p01], [p10, 1 - p01]])

    def to_dict(self) -> dict:
        return {"prob_meas0_prep1": self.prob_meas0_prep1, "prob_meas1_prep0": self.prob_meas1_prep0}


def _single(fragment: Circuit, name: str) -> Circuit:
    if not isinstance(fragment, Circuit) or not fragment.is_single_qubit():
        raise MalformedFragment(f"{name} must be a single-qubit fragment")
    return fragment


def _prep(fragment: Circuit) -> Circuit:
    if not isinstance(fragment, Circuit):
        raise MalformedFragment("state_prep must be a Circuit")
    return fragment


def assemble_postselection(state_prep: Circuit, u_dag: Circuit, v0_dag: Circuit, v1_dag: Circuit) -> dict[str, Circuit]:
    base = _prep(state_prep) + on_role(_single(u_dag, "u_dag"), TARGET)
    return {
        "u_v0": base + on_role(_single(v0_dag, "v0_dag"), ANCILLA),
        "u_v1": base + on_role(_single(v1_dag, "v1_dag"), ANCILLA),
    }


def assemble_direct_sum(state_prep: Circuit, u_dag: Circuit, v0_v1_block: Circuit) -> Circuit:
    if not isinstance(v0_v1_block, Circuit):
        raise MalformedFragment("v0_v1_block must be a Circuit")
    return _prep(state_prep) + on_role(_single(u_dag, "u_dag"), TARGET) + v0_v1_block


def certification_circuits(phi: float, delta: float, method: str, gateset: str = GENERIC) -> dict[str, Circuit]:
    """Named circuits certifying U_phi at significance delta: {"u"} or {"u_v0", "u_v1"}."""
    strategy = certification_strategy(phi, delta)
    prep, u_dag = bell_prep(gateset), fourier_u_dag(phi, gateset)
    if method == DIRECT_SUM:
        return {"u": assemble_direct_sum(prep, u_dag, direct_sum_block(strategy.v0, strategy.v1, gateset))}
    if method == POSTSELECTION:
        v0_dag = single_qubit_fragment(linalg.dagger(strategy.v0), gateset)
        v1_dag = single_qubit_fragment(linalg.dagger(strategy.v1), gateset)
        return assemble_postselection(prep, u_dag, v0_dag, v1_dag)
    raise ValueError(f"unknown method {method!r}")


def _get(h: Mapping[str, float], key: str) -> float:
    return h.get(key, 0)


def compute_p2_postselection(u_v0_counts: Mapping[str, float], u_v1_counts: Mapping[str, float]) -> float:
    """N0 / N_total over shots whose target bit matches the circuit label."""
    valid = _get(u_v0_counts, "00") + _get(u_v0_counts, "10") + _get(u_v1_counts, "01") + _get(u_v1_counts, "11")
    accepted = _get(u_v0_counts, "00") + _get(u_v1_counts, "01")
    if valid <= 0:
        raise NoValidShots("no shot survived postselection")
    return float(min(max(accepted / valid, 0.0), 1.0))


def compute_p2_direct_sum(counts: Mapping[str, float]) -> float:
    total = sum(_get(counts, k) for k in KEYS)
    if total <= 0:
        raise NoValidShots("empty histogram")
    return float(min(max((_get(counts, "00") + _get(counts, "01")) / total, 0.0), 1.0))


def mitigate_histogram(h: Mapping[str, float], target_info: MitigationInfo, ancilla_info: MitigationInfo) -> dict[str, float]:
    """Invert the tensor-product confusion matrix, clip negatives, renormalize."""
    counts = np.array([float(_get(h, k)) for k in KEYS])
    total = counts.sum()
    if total <= 0:
        raise NoValidShots("empty histogram")
    m_anc, m_tgt = ancilla_info.confusion(), target_info.confusion()
    for m in (m_anc, m_tgt):
        if abs(np.linalg.det(m)) < 1e-12:
            raise SingularConfusion("readout confusion matrix is singular")
    quasi = np.linalg.solve(np.kron(m_anc, m_tgt), counts / total)
    quasi = np.clip(quasi, 0.0, None)
    quasi = quasi / quasi.sum()
    return {k: float(v) for k, v in zip(KEYS, quasi)}


def compute_mitigated_p2(method: str, mitigated) -> float:
    """Type-II estimate from quasi-probabilities.

    ``mitigated`` is one histogram for direct_sum, or a pair / {"u_v0", "u_v1"}
    mapping for postselection.
    """
    if method == DIRECT_SUM:
        return compute_p2_direct_sum(mitigated)
    if method == POSTSELECTION:
        if isinstance(mitigated, Mapping):
            return compute_p2_postselection(mitigated["u_v0"], mitigated["u_v1"])
        u_v0, u_v1 = mitigated
        return compute_p2_postselection(u_v0, u_v1)
    raise ValueError(f"unknown method {method!r}")
