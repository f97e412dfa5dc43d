"""Dense complex linear algebra on one- and two-qubit spaces.

Two-qubit vectors and matrices use the basis order |00>, |01>, |10>, |11>
where the LEFT bit is the ancilla and the RIGHT bit is the target, so a
product operator is written ``tensor(ancilla_factor, target_factor)``.
"""
from __future__ import annotations

import numpy as np

STRUCTURE_TOL = 1e-9
NORM_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
SX = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2
S = np.array([[1, 0], [0, 1j]], dtype=complex)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
KET00 = np.array([1, 0, 0, 0], dtype=complex)
BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


for _m in (I2, I4, X, Z, H, SX, S, KET0, KET1, KET00, BELL):
    _m.setflags(write=False)


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return _frozen([[c, -s], [s, c]])


def rz(theta: float) -> np.ndarray:
    return _frozen([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]])


def phase(lam: float) -> np.ndarray:
    return _frozen([[1, 0], [0, np.exp(1j * lam)]])


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with ``a`` on the ancilla (left bit) and ``b`` on the target."""
    return _frozen(np.kron(a, b))


def dagger(m: np.ndarray) -> np.ndarray:
    return _frozen(np.conj(m).T)


def apply(m: np.ndarray, state: np.ndarray) -> np.ndarray:
    return _frozen(m @ state)


def is_unitary(m: np.ndarray, tol: float = STRUCTURE_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.all(np.isfinite(m)):
        return False
    dev = m @ np.conj(m).T - np.eye(m.shape[0])
    return bool(np.max(np.abs(dev)) <= tol)


def is_normalized(state: np.ndarray, tol: float = NORM_TOL) -> bool:
    return bool(abs(np.vdot(state, state).real - 1.0) <= tol)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-8) -> bool:
    """True when ``a == exp(i*g) * b`` elementwise within ``tol`` for some real g."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    k = int(np.argmax(np.abs(b)))
    ref = b.flat[k]
    if abs(ref) < tol:
        return bool(np.max(np.abs(a)) <= tol)
    ratio = a.flat[k] / ref
    if abs(ratio) == 0:
        return False
    ph = ratio / abs(ratio)
    return bool(np.max(np.abs(a - ph * b)) <= tol)


def embed(u: np.ndarray, on: str) -> np.ndarray:
    """Lift a single-qubit matrix onto the two-qubit space acting on ``on``."""
    if on == "target":
        return tensor(I2, u)
    if on == "ancilla":
        return tensor(u, I2)
    raise ValueError(f"unknown qubit role {on!r}")


def controlled_x(control: str, target: str) -> np.ndarray:
    if {control, target} != {"target", "ancilla"}:
        raise ValueError("CX needs distinct roles 'target' and 'ancilla'")
    m = np.zeros((4, 4), dtype=complex)
    for a in (0, 1):
        for t in (0, 1):
            if control == "target":
                m[2 * (a ^ t) + t, 2 * a + t] = 1
            else:
                m[2 * a + (t ^ a), 2 * a + t] = 1
    return _frozen(m)


def direct_sum_operator(v0: np.ndarray, v1: np.ndarray) -> np.ndarray:
    """|0><0| (x) v0^dag + |1><1| (x) v1^dag, controlled on the target bit."""
    p0 = np.diag([1, 0]).astype(complex)
    p1 = np.diag([0, 1]).astype(complex)
    return _frozen(np.kron(dagger(v0), p0) + np.kron(dagger(v1), p1))


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return _frozen(q * (d / np.abs(d)))


def random_state(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return _frozen(v / np.linalg.norm(v))
