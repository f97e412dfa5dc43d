"""Certification theory for the Fourier family of qubit measurements.

Closed forms for the optimal strategy and minimized type-II error, plus a
numerical route through the q-numerical range that serves as an
independent cross-check of the closed form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from . import linalg

TWO_PI = 2 * pi


class BadQ(ValueError):
    pass


def canonical_phi(phi: float) -> float:
    phi = float(phi)
    if not np.isfinite(phi):
        raise ValueError("phi must be finite")
    return phi % TWO_PI


def canonical_delta(delta: float) -> float:
    return min(max(float(delta), 0.0), 1.0)


def fourier_unitary(phi: float) -> np.ndarray:
    """U_phi = H diag(1, e^{i phi}) H^dag."""
    return linalg._frozen(linalg.H @ linalg.phase(phi) @ linalg.dagger(linalg.H))


def regime_of(phi: float, delta: float) -> int:
    phi, delta = canonical_phi(phi), canonical_delta(delta)
    if np.sqrt(1 + np.cos(phi)) < np.sqrt(2 * delta):
        return 2
    return 1 if phi < pi else 3


def real_regime_unitaries(phi: float, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """V0, V1 exactly as tabulated for the three regimes (real matrices).

    The regime-2 entry sin(phi) / (2 |cos(phi/2)|) is evaluated in its removable
    form sign(cos(phi/2)) sin(phi/2), with sign(0) = +1.

    These are optimal only for the real-rotated conditional states; see
    :func:`optimal_final_unitaries` for the ones to feed a circuit.
    """
    phi, delta = canonical_phi(phi), canonical_delta(delta)
    regime = regime_of(phi, delta)
    s, c = np.sqrt(delta), np.sqrt(1 - delta)
    if regime == 1:
        v0 = [[c, s], [-s, c]]
        v1 = [[s, c], [c, -s]]
    elif regime == 3:
        v0 = [[c, -s], [s, c]]
        v1 = [[-s, c], [c, s]]
    else:
        half_sin, half_cos = np.sin(phi / 2), np.cos(phi / 2)
        ratio = (1.0 if half_cos >= 0 else -1.0) * half_sin
        v0 = [[half_sin, abs(half_cos)], [-half_cos, ratio]]
        v1 = [[abs(half_cos), half_sin], [ratio, -half_cos]]
    return linalg._frozen(v0), linalg._frozen(v1)


def optimal_final_unitaries(phi: float, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Final-measurement unitaries V0, V1 that attain :func:`ideal_p2`.

    After U_phi^dag and a target outcome i, the ancilla holds
    cos(phi/2)|i> + i sin(phi/2)|1-i> up to phase; its two components are a
    quarter turn apart. The tabulated real matrices are optimal for the
    rotated real state, so each is composed with S = diag(1, i) to measure
    in the matching complex basis.
    """
    v0, v1 = real_regime_unitaries(phi, delta)
    return linalg._frozen(linalg.S @ v0), linalg._frozen(linalg.S @ v1)


@dataclass(frozen=True)
class CertStrategy:
    phi: float
    delta: float
    v0: np.ndarray = field(repr=False, compare=False)
    v1: np.ndarray = field(repr=False, compare=False)
    regime: int
    input_state: np.ndarray = field(default=linalg.BELL, repr=False, compare=False)


def certification_strategy(phi: float, delta: float) -> CertStrategy:
    v0, v1 = optimal_final_unitaries(phi, delta)
    return CertStrategy(float(phi), float(delta), v0, v1, regime_of(phi, delta))


def ideal_p2(phi: float, delta: float) -> float:
    """Minimized type-II error probability for U_phi at significance delta."""
    phi, delta = canonical_phi(phi), canonical_delta(delta)
    # |1 + e^{i phi}| / 2 = |cos(phi/2)|; the sine is taken directly rather
    # than as sqrt(1 - c^2), which rounds it to zero near phi = 0 and 2 pi
    c, s = abs(np.cos(phi / 2)), abs(np.sin(phi / 2))
    if not c > np.sqrt(delta):
        return 0.0
    # expanded square: exact 1 - delta at phi = 0
    value = c * c * (1 - delta) + s * s * delta - 2 * c * s * np.sqrt(delta * (1 - delta))
    return float(min(max(value, 0.0), 1.0))


def hadamard_ideal_p2(delta: float) -> float:
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must lie in [0, 1]")
    return 0.5 * (np.sqrt(1 - delta) - np.sqrt(delta)) ** 2


# --- q-numerical range route ------------------------------------------------

@dataclass(frozen=True)
class QGridConfig:
    coarse_points_per_axis: int = 64
    refinement_iterations: int = 40
    tolerance: float = 1e-4
    starts: int = 4

    def __post_init__(self):
        if min(self.coarse_points_per_axis, self.refinement_iterations, self.starts) < 1 or self.tolerance <= 0:
            raise ValueError("QGridConfig fields must be positive")


def _nu_objective(a, q: float, theta, s, t):
    """min over u of |<phi|a E|psi>| with E = diag(1, e^{i theta}), |phi> = (cos s, e^{it} sin s).

    With psi = q phi + sqrt(1-q^2) e^{iu} phi_perp the inner product is
    A + B e^{iu}, whose modulus is minimized over u at ||A| - |B||.
    """
    cs, sn, e = np.cos(s), np.sin(s), np.exp(1j * t)
    ec, w = np.conj(e), np.exp(1j * theta)
    a00, a01, a10, a11 = a[0, 0], a[0, 1] * w, a[1, 0], a[1, 1] * w

    def bra_phi_a(x0, x1):
        return cs * (a00 * x0 + a01 * x1) + ec * sn * (a10 * x0 + a11 * x1)

    # phi = (cs, e sn); phi_perp = (-sn, e cs)
    big_a = q * bra_phi_a(cs, e * sn)
    big_b = np.sqrt(max(0.0, 1 - q * q)) * bra_phi_a(-sn, e * cs)
    return np.abs(np.abs(big_a) - np.abs(big_b))


def _shrink_search(f, x0: np.ndarray, step: np.ndarray, iterations: int, lo, hi, maximize=False, min_step=0.0):
    """Coordinate-shrink pattern search run from many starts at once.

    ``x0`` has shape (dims, starts); coordinates with zero step stay fixed.
    A start only moves to a strictly better point, so results never get
    worse than the starting values. Stops after ``iterations`` halvings or
    once every moving step is below ``min_step``. Returns per-start
    (points, values).
    """
    sign = -1.0 if maximize else 1.0
    step = np.array(step, dtype=float)
    best_x = np.array(x0, dtype=float).reshape(len(step), -1)
    dims, starts = best_x.shape
    best = sign * f(*best_x)
    active = [[-1, 0, 1] if st > 0 else [0] for st in step]
    offsets = np.array(np.meshgrid(*active, indexing="ij")).reshape(dims, 1, -1)
    lo, hi = np.reshape(lo, (dims, 1, 1)), np.reshape(hi, (dims, 1, 1))
    rows = np.arange(starts)
    for _ in range(iterations):
        if step.max() < min_step:
            break
        cand = np.clip(best_x[:, :, None] + offsets * step[:, None, None], lo, hi)
        vals = (sign * f(*cand.reshape(dims, -1))).reshape(starts, -1)
        k = np.argmin(vals, axis=1)
        improved = vals[rows, k] < best
        best = np.where(improved, vals[rows, k], best)
        best_x = np.where(improved, cand[:, rows, k], best_x)
        step = step / 2
    return best_x, sign * best


def _nu_batch(a: np.ndarray, q: float, thetas, cfg: QGridConfig) -> np.ndarray:
    """nu_q(a diag(1, e^{i theta})) for every theta, by coarse grid plus refinement."""
    a = np.asarray(a, dtype=complex)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    n = cfg.coarse_points_per_axis
    s_axis = np.linspace(0, pi / 2, n)
    t_axis = np.linspace(0, TWO_PI, n, endpoint=False)
    th, ss, tt = np.meshgrid(thetas, s_axis, t_axis, indexing="ij")
    grid = _nu_objective(a, q, th, ss, tt).reshape(len(thetas), -1)
    coarse = grid.min(axis=1)

    k = min(cfg.starts, grid.shape[1])
    order = np.argpartition(grid, k - 1, axis=1)[:, :k]
    flat_s, flat_t = ss[0].ravel(), tt[0].ravel()
    x0 = np.stack([np.repeat(thetas, k), flat_s[order].ravel(), flat_t[order].ravel()])
    step = np.array([0.0, (pi / 2) / max(n - 1, 1), TWO_PI / n])
    lo = np.array([-np.inf, 0.0, -TWO_PI])
    hi = np.array([np.inf, pi / 2, 2 * TWO_PI])
    _, refined = _shrink_search(
        lambda th_, s_, t_: _nu_objective(a, q, th_, s_, t_), x0, step, cfg.refinement_iterations, lo, hi
    )
    return np.minimum(coarse, refined.reshape(len(thetas), k).min(axis=1))


def nu_q(a: np.ndarray, q: float, cfg: QGridConfig = QGridConfig()) -> float:
    """Distance from zero of the q-numerical range of a 2x2 matrix.

    Searches pairs |phi>, |psi> with <phi|psi> = q; the free relative phase of
    the orthogonal part of |psi> is minimized in closed form.
    """
    if not 0.0 <= q <= 1.0:
        raise BadQ(f"q must lie in [0, 1], got {q}")
    return float(_nu_batch(a, q, [0.0], cfg)[0])


def p2_via_qrange(u: np.ndarray, delta: float, cfg: QGridConfig = QGridConfig()) -> float:
    """max over E = diag(1, e^{i theta}) of nu_q(U E)^2 with q = sqrt(1 - delta).

    Diagonal unitaries only matter up to global phase, which nu_q ignores.
    Ties on the coarse theta grid go to the smallest theta. The theta search
    stops once its step drops below ``cfg.tolerance``; near a smooth maximum
    that costs about tolerance^2 in value.
    """
    delta = canonical_delta(delta)
    q = np.sqrt(1 - delta)
    n = cfg.coarse_points_per_axis
    thetas = np.linspace(0, TWO_PI, n, endpoint=False)
    vals = _nu_batch(u, q, thetas, cfg) ** 2
    k = int(np.argmax(vals))
    _, refined = _shrink_search(
        lambda th: _nu_batch(u, q, th, cfg) ** 2,
        np.array([[thetas[k]]]), np.array([TWO_PI / n]), cfg.refinement_iterations,
        np.array([-np.inf]), np.array([np.inf]), maximize=True, min_step=cfg.tolerance,
    )
    return float(min(max(vals[k], refined[0]), 1.0))
