import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbench import linalg
from qbench.linalg import BELL, H, I2, KET00, S, SX, X, Z


def test_named_gates_are_unitary_and_frozen():
    for m in (I2, X, Z, H, SX, S, linalg.ry(0.3), linalg.rz(-1.2), linalg.phase(2.0)):
        assert linalg.is_unitary(m)
        assert not m.flags.writeable


def test_sx_squares_to_x():
    assert np.allclose(SX @ SX, X)


def test_tensor_puts_ancilla_on_the_left_bit():
    # X on the ancilla sends |00> to |10>, index 2
    out = linalg.tensor(X, I2) @ KET00
    assert np.allclose(out, [0, 0, 1, 0])
    assert np.allclose(linalg.embed(X, "ancilla"), linalg.tensor(X, I2))
    assert np.allclose(linalg.embed(X, "target") @ KET00, [0, 1, 0, 0])


def test_embed_rejects_unknown_role():
    with pytest.raises(ValueError):
        linalg.embed(X, "control")


def test_controlled_x_both_directions():
    cx_t = linalg.controlled_x("target", "ancilla")
    cx_a = linalg.controlled_x("ancilla", "target")
    ket01 = np.array([0, 1, 0, 0])  # target = 1
    ket10 = np.array([0, 0, 1, 0])  # ancilla = 1
    assert np.allclose(cx_t @ ket01, [0, 0, 0, 1])
    assert np.allclose(cx_t @ ket10, ket10)
    assert np.allclose(cx_a @ ket10, [0, 0, 0, 1])
    assert np.allclose(cx_a @ ket01, ket01)
    with pytest.raises(ValueError):
        linalg.controlled_x("target", "target")


def test_bell_from_h_and_cx():
    state = linalg.controlled_x("target", "ancilla") @ linalg.embed(H, "target") @ KET00
    assert np.allclose(state, BELL)
    assert linalg.is_normalized(state)


def test_is_unitary_edge_cases():
    assert not linalg.is_unitary(np.ones((2, 3)))
    assert not linalg.is_unitary(np.array([[np.nan, 0], [0, 1]]))
    assert not linalg.is_unitary(2 * I2)
    assert linalg.is_unitary(I2 + 1e-11)
    assert not linalg.is_unitary(I2 + 1e-3, tol=1e-9)
    with pytest.raises(ValueError):
        linalg.is_unitary(I2, tol=0)


def test_equal_up_to_phase():
    u = linalg.ry(0.7) @ linalg.rz(0.2)
    assert linalg.equal_up_to_phase(np.exp(0.9j) * u, u)
    assert not linalg.equal_up_to_phase(u, linalg.dagger(u))
    assert not linalg.equal_up_to_phase(I2, np.eye(4))


def test_direct_sum_operator_conditions_on_target_bit():
    rng = np.random.default_rng(5)
    v0, v1 = linalg.random_unitary(rng), linalg.random_unitary(rng)
    ds = linalg.direct_sum_operator(v0, v1)
    assert linalg.is_unitary(ds)
    for i, v in ((0, v0), (1, v1)):
        for j in (0, 1):
            ket = np.zeros(4)
            ket[2 * j + i] = 1
            expected = np.kron(linalg.dagger(v) @ np.eye(2)[j], np.eye(2)[i])
            assert np.allclose(ds @ ket, expected)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4]))
def test_random_unitary_is_unitary(seed, dim):
    u = linalg.random_unitary(np.random.default_rng(seed), dim)
    assert linalg.is_unitary(u, 1e-10)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_unitaries_preserve_norm(seed):
    rng = np.random.default_rng(seed)
    state = linalg.random_state(rng, 4)
    assert linalg.is_normalized(linalg.apply(linalg.random_unitary(rng, 4), state))
