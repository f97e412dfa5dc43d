"""Gate-level circuits over the (target, ancilla) qubit pair.

Gates address qubits by role. Single-qubit fragments (``u_dag``, ``v0_dag``
and friends) are built on the target role and re-addressed with
:func:`on_role` when they are assembled into a scheme circuit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from . import linalg

TARGET = "target"
ANCILLA = "ancilla"
ROLES = (TARGET, ANCILLA)

IBMQ = "ibmq"
GENERIC = "generic"
GATESETS = (IBMQ, GENERIC)

IBMQ_KINDS = frozenset({"rz", "sx", "x", "cx"})
ONE_QUBIT_KINDS = frozenset({"h", "x", "sx", "ry", "rz", "p", "raw1"})

_ANGLE_EPS = 1e-12


class NonUnitaryInput(ValueError):
    pass


class GatesetError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[str, ...]
    param: float | None = None
    matrix: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if any(q not in ROLES for q in self.qubits):
            raise ValueError(f"unknown qubit role in {self.qubits}")
        if self.param is not None and not np.isfinite(self.param):
            raise ValueError(f"non-finite angle for {self.kind}")
        if self.kind in ("raw1", "raw2") and not linalg.is_unitary(self.matrix):
            raise NonUnitaryInput(f"{self.kind} gate carries a non-unitary matrix")
        if self.kind == "cx" and len(set(self.qubits)) != 2:
            raise ValueError("cx needs distinct control and target")

    @property
    def is_single_qubit(self) -> bool:
        return self.kind in ONE_QUBIT_KINDS

    def unitary(self) -> np.ndarray:
        """Matrix of the gate on its own qubits (2x2, or 4x4 for cx/raw2)."""
        k = self.kind
        if k == "h":
            return linalg.H
        if k == "x":
            return linalg.X
        if k == "sx":
            return linalg.SX
        if k == "ry":
            return linalg.ry(self.param)
        if k == "rz":
            return linalg.rz(self.param)
        if k == "p":
            return linalg.phase(self.param)
        if k == "raw1" or k == "raw2":
            return self.matrix
        if k == "cx":
            return linalg.controlled_x(*self.qubits)
        raise ValueError(f"unknown gate kind {k!r}")

    def embedded(self) -> np.ndarray:
        if self.is_single_qubit:
            return linalg.embed(self.unitary(), self.qubits[0])
        return self.unitary()


def h(on=TARGET):
    return Gate("h", (on,))


def x(on=TARGET):
    return Gate("x", (on,))


def sx(on=TARGET):
    return Gate("sx", (on,))


def ry(theta, on=TARGET):
    return Gate("ry", (on,), float(theta))


def rz(theta, on=TARGET):
    return Gate("rz", (on,), float(theta))


def p(lam, on=TARGET):
    return Gate("p", (on,), float(lam))


def cx(control=TARGET, target=ANCILLA):
    return Gate("cx", (control, target))


def raw1(u, on=TARGET):
    return Gate("raw1", (on,), matrix=linalg._frozen(u))


def raw2(u):
    return Gate("raw2", (TARGET, ANCILLA), matrix=linalg._frozen(u))


@dataclass(frozen=True)
class Circuit:
    gates: tuple[Gate, ...] = ()
    gateset: str = GENERIC
    measure_all: bool = True

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.gateset not in GATESETS:
            raise ValueError(f"unknown gateset {self.gateset!r}")
        if self.gateset == IBMQ:
            bad = sorted({g.kind for g in self.gates} - IBMQ_KINDS)
            if bad:
                raise GatesetError(f"gates {bad} are not native to the ibmq gateset")

    def __add__(self, other: "Circuit") -> "Circuit":
        gateset = IBMQ if self.gateset == other.gateset == IBMQ else GENERIC
        return Circuit(self.gates + other.gates, gateset)

    def __len__(self):
        return len(self.gates)

    @property
    def roles(self) -> frozenset[str]:
        return frozenset(q for g in self.gates for q in g.qubits)

    def is_single_qubit(self) -> bool:
        return all(g.is_single_qubit for g in self.gates) and len(self.roles) <= 1


def on_role(fragment: Circuit, role: str) -> Circuit:
    """Re-address a single-qubit fragment onto ``role``."""
    if not fragment.is_single_qubit():
        raise ValueError("only single-qubit fragments can be re-addressed")
    moved = [Gate(g.kind, (role,), g.param, g.matrix) for g in fragment.gates]
    return Circuit(moved, fragment.gateset)


def circuit_unitary(c: Circuit) -> np.ndarray:
    u = np.eye(4, dtype=complex)
    for g in c.gates:
        u = g.embedded() @ u
    return linalg._frozen(u)


def fragment_unitary(c: Circuit) -> np.ndarray:
    """2x2 matrix of a single-qubit fragment, whichever role it sits on."""
    if not c.is_single_qubit():
        raise ValueError("not a single-qubit fragment")
    u = np.eye(2, dtype=complex)
    for g in c.gates:
        u = g.unitary() @ u
    return linalg._frozen(u)


# --- single-qubit synthesis -------------------------------------------------

def zyz_angles(u: np.ndarray) -> tuple[float, float, float, float]:
    """Return (phase, phi, theta, lam) with u = e^{i phase} RZ(phi) RY(theta) RZ(lam)."""
    u = np.asarray(u, dtype=complex)
    det = np.linalg.det(u)
    gphase = np.angle(det) / 2
    v = u * np.exp(-1j * gphase)
    # v = [[cos(t/2) e^{-i(f+l)/2}, -sin(t/2) e^{-i(f-l)/2}],
    #      [sin(t/2) e^{ i(f-l)/2},  cos(t/2) e^{ i(f+l)/2}]]
    theta = 2 * np.arctan2(abs(v[1, 0]), abs(v[0, 0]))
    plus = 2 * np.angle(v[1, 1]) if abs(v[1, 1]) > _ANGLE_EPS else 0.0
    minus = 2 * np.angle(v[1, 0]) if abs(v[1, 0]) > _ANGLE_EPS else 0.0
    return float(gphase), float((plus + minus) / 2), float(theta), float((plus - minus) / 2)


def _wrap(a: float) -> float:
    return float((a + pi) % (2 * pi) - pi)


def _rz_or_nothing(theta, on):
    return [] if abs(_wrap(theta)) < _ANGLE_EPS else [rz(_wrap(theta), on)]


def decompose_1q_ibmq(u: np.ndarray, on: str = TARGET) -> list[Gate]:
    """ZYZ Euler route into {RZ, SX, X}, exact up to global phase."""
    if not linalg.is_unitary(u):
        raise NonUnitaryInput("cannot decompose a non-unitary matrix")
    _, phi, theta, lam = zyz_angles(u)
    if theta < _ANGLE_EPS:
        return _rz_or_nothing(phi + lam, on)
    if abs(theta - pi) < _ANGLE_EPS:
        return _rz_or_nothing(lam + pi, on) + [x(on)] + _rz_or_nothing(phi, on)
    return (
        _rz_or_nothing(lam, on)
        + [sx(on)]
        + _rz_or_nothing(theta + pi, on)
        + [sx(on)]
        + _rz_or_nothing(phi + pi, on)
    )


def lower_to_ibmq(c: Circuit) -> Circuit:
    """Rewrite every gate into the ibmq vocabulary."""
    out: list[Gate] = []
    for g in c.gates:
        if g.kind in IBMQ_KINDS:
            out.append(g)
        elif g.kind == "p":
            out.extend(_rz_or_nothing(g.param, g.qubits[0]))
        elif g.is_single_qubit:
            out.extend(decompose_1q_ibmq(g.unitary(), g.qubits[0]))
        else:
            raise GatesetError(f"no ibmq lowering for {g.kind!r}; use direct_sum_block(gateset='ibmq')")
    return Circuit(out, IBMQ)


def _finish(c: Circuit, gateset: str) -> Circuit:
    if gateset not in GATESETS:
        raise ValueError(f"unknown gateset {gateset!r}")
    return lower_to_ibmq(c) if gateset == IBMQ else c


def single_qubit_fragment(u: np.ndarray, gateset: str = GENERIC, on: str = TARGET) -> Circuit:
    if not linalg.is_unitary(u):
        raise NonUnitaryInput("fragment matrix is not unitary")
    if gateset == IBMQ:
        return Circuit(decompose_1q_ibmq(u, on), IBMQ)
    return Circuit([raw1(u, on)], GENERIC)


# --- builders ---------------------------------------------------------------

def bell_prep(gateset: str = GENERIC) -> Circuit:
    """H on the target then CX(target -> ancilla): |00> -> (|00> + |11>)/sqrt(2)."""
    return _finish(Circuit([h(TARGET), cx(TARGET, ANCILLA)]), gateset)


def fourier_u_dag(phi: float, gateset: str = GENERIC) -> Circuit:
    """U_phi^dag = H P(-phi) H on the target qubit."""
    return _finish(Circuit([h(TARGET), p(-phi, TARGET), h(TARGET)]), gateset)


def hadamard_example_components(delta: float, gateset: str = GENERIC) -> dict[str, Circuit]:
    """Circuit fragments of the Hadamard-basis worked example, gate for gate."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must lie in [0, 1]")
    angle = 2 * np.arcsin(np.sqrt(delta))
    parts = {
        "state_prep": Circuit([h(TARGET), cx(TARGET, ANCILLA)]),
        "u_dag": Circuit([h(TARGET)]),
        "v0_dag": Circuit([ry(angle, TARGET)]),
        "v1_dag": Circuit([ry(angle, TARGET), x(TARGET)]),
        # Not the direct-sum operator itself: it rotates the target and copies it
        # onto the ancilla. Output statistics on the scheme state agree.
        "v0_v1_direct_sum_dag": Circuit([p(-pi, TARGET), ry(-angle, TARGET), cx(TARGET, ANCILLA)]),
    }
    return {k: _finish(v, gateset) for k, v in parts.items()}


def abc_factors(w: np.ndarray):
    """Split w = e^{ia} A X B X C with A B C = I.

    Returns (A, B, C, a). Sandwiching B between two CX gates yields the
    controlled-w up to the phase a, which goes on the control as an RZ.
    """
    gphase, phi, theta, lam = zyz_angles(w)
    a = linalg.rz(phi) @ linalg.ry(theta / 2)
    b = linalg.ry(-theta / 2) @ linalg.rz(-(lam + phi) / 2)
    c = linalg.rz((lam - phi) / 2)
    return a, b, c, gphase


def direct_sum_block(v0: np.ndarray, v1: np.ndarray, gateset: str = GENERIC) -> Circuit:
    """Fragment implementing V0^dag (+) V1^dag with the target as control."""
    if not (linalg.is_unitary(v0) and linalg.is_unitary(v1)):
        raise NonUnitaryInput("direct-sum blocks must be unitary")
    if gateset == GENERIC:
        return Circuit([raw2(linalg.direct_sum_operator(v0, v1))], GENERIC)
    if gateset != IBMQ:
        raise ValueError(f"unknown gateset {gateset!r}")
    # V0^dag on the ancilla, then controlled (V1^dag V0) on it.
    w = linalg.dagger(v1) @ v0
    a, b, c, gphase = abc_factors(w)
    gates = (
        decompose_1q_ibmq(c @ linalg.dagger(v0), ANCILLA)
        + [cx(TARGET, ANCILLA)]
        + decompose_1q_ibmq(b, ANCILLA)
        + [cx(TARGET, ANCILLA)]
        + decompose_1q_ibmq(a, ANCILLA)
        + _rz_or_nothing(gphase, TARGET)
    )
    return Circuit(gates, IBMQ)
