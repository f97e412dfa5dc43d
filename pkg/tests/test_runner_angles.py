from math import pi

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qbench.runner.angles import AngleRange, DivisionByZero, ParseError, angle_grid, parse_angle_expr

HW_PHIS = [
    0.0, 0.8975979010256552, 1.7951958020513104, 2.6927937030769655,
    3.5903916041026207, 4.487989505128276, 5.385587406153931, 6.283185307179586,
]


@pytest.mark.parametrize("text,value", [
    ("2 * pi", 6.283185307179586),
    ("0", 0.0),
    ("pi/4 + pi/4", 1.5707963267948966),
    ("  pi ", pi),
    ("-pi", -pi),
    ("--1", 1.0),
    ("2*(1+3)/4", 2.0),
    ("1 - 2 - 3", -4.0),
    ("8 / 2 / 2", 2.0),
    ("1.5e1", 15.0),
    (".5", 0.5),
    ("3", 3.0),
])
def test_parse_values(text, value):
    assert parse_angle_expr(text) == value


def test_numbers_pass_through():
    assert parse_angle_expr(0) == 0.0
    assert parse_angle_expr(6.283185307179586) == 6.283185307179586


@pytest.mark.parametrize("text,offset", [
    ("1 +", 3), ("2 ** 3", 3), ("pie", 0), ("(1", 2), ("1 2", 2), ("", 0), ("   ", 0), ("tau", 0), ("1 + $", 4),
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_angle_expr(text)
    assert info.value.offset == offset


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        parse_angle_expr("1/0")
    with pytest.raises(DivisionByZero):
        parse_angle_expr("pi / (pi - pi)")


def test_grid_matches_hardware_angles():
    assert angle_grid(AngleRange("0", "2 * pi", 8)) == HW_PHIS


def test_grid_degenerate_cases():
    assert angle_grid(AngleRange("0", "1", 2)) == [0.0, 1.0]
    assert angle_grid(AngleRange("pi", "pi", 4)) == [pi] * 4


def test_range_validation():
    with pytest.raises(ValueError):
        AngleRange("1", "0", 3)
    with pytest.raises(ValueError):
        AngleRange("0", "1", 1)
    with pytest.raises(ValueError):
        AngleRange("0", "1", True)


def test_range_equality_uses_values():
    assert AngleRange("0", "2 * pi", 8) == AngleRange(0.0, 6.283185307179586, 8)


@given(st.floats(-10, 10), st.floats(0, 10), st.integers(2, 50))
def test_grid_endpoints_are_bitwise(start, width, n):
    r = AngleRange(start, start + width, n)
    grid = angle_grid(r)
    assert len(grid) == n
    assert grid[0] == r.start and grid[-1] == r.stop
    assert grid == sorted(grid)
