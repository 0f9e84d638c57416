import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from expmoment.core import (
    NonFiniteError,
    OverflowRangeError,
    dominated_coefficients,
    validate_instance,
)
from expmoment.evaluate import (
    eval_batch,
    eval_power,
    eval_sum,
    power_on_array,
    validate_grid,
)

small_instances = st.builds(
    lambda amps, phis: validate_instance(amps[:min(len(amps), len(phis))],
                                         phis[:min(len(amps), len(phis))]),
    st.lists(st.floats(0.0, 10.0), min_size=1, max_size=8),
    st.lists(st.floats(-20.0, 20.0), min_size=1, max_size=8),
)


def test_eval_sum_constant_term():
    inst = validate_instance([1.0], [0.0])
    for t in (-3.0, 0.0, 17.5):
        assert eval_sum(inst, t) == 1.0 + 0.0j


def test_eval_sum_cancellation():
    inst = validate_instance([1.0, 1.0], [0.0, 1.0])
    assert abs(eval_sum(inst, math.pi)) < 1e-15


def test_eval_sum_quarter_period():
    inst = validate_instance([1.0, 1.0], [0.0, 1.0])
    assert eval_sum(inst, math.pi / 2) == pytest.approx(1.0 + 1.0j, abs=1e-15)


def test_eval_power_trivials():
    inst = validate_instance([1.0, 1.0], [0.0, 1.0])
    assert eval_power(inst, 0.0, 2) == pytest.approx(16.0, rel=1e-14)
    assert eval_power(inst, math.pi, 3) == pytest.approx(0.0, abs=1e-40)


def test_eval_power_against_mpmath():
    # |2 + e^{3.5 i}|^2 via a 50-digit independent evaluation
    inst = validate_instance([2.0, 1.0], [0.0, 5.0])
    with mpmath.workdps(50):
        expected = float(abs(2 + mpmath.e ** (3.5j)) ** 2)
    assert eval_power(inst, 0.7, 1) == pytest.approx(expected, rel=1e-14)


def test_eval_power_overflow_guard():
    inst = validate_instance([1e200, 1e200], [0.0, 1.0])
    with pytest.raises(OverflowRangeError):
        eval_power(inst, 0.0, 2)


def test_eval_batch_matches_pointwise():
    inst = validate_instance([1.0, 2.0, 0.5], [0.3, -1.7, 4.0])
    grid = [-2.0, -0.5, 0.0, 1.0, 9.0]
    assert eval_batch(inst, grid, 2) == [eval_power(inst, t, 2) for t in grid]


def test_eval_batch_empty_and_singleton():
    inst = validate_instance([1.0, 1.0, 1.0], [0.0, 1.0, 2.0])
    assert eval_batch(inst, [], 1) == []
    assert eval_batch(inst, [0.0], 1) == pytest.approx([9.0])


def test_validate_grid_rejects_unsorted():
    with pytest.raises(NonFiniteError):
        validate_grid([0.0, 0.0])
    with pytest.raises(NonFiniteError):
        validate_grid([1.0, 0.0])
    with pytest.raises(NonFiniteError):
        validate_grid([0.0, math.nan])


@settings(max_examples=50)
@given(small_instances, st.floats(-50.0, 50.0))
def test_triangle_inequality(inst, t):
    assert abs(eval_sum(inst, t)) <= inst.amplitude_sum() * (1 + 1e-12) + 1e-12


@settings(max_examples=50)
@given(small_instances, st.floats(-50.0, 50.0))
def test_conjugate_symmetry(inst, t):
    s_plus = eval_sum(inst, t)
    s_minus = eval_sum(inst, -t)
    assert s_minus == pytest.approx(s_plus.conjugate(), abs=1e-12 * (1 + abs(s_plus)))


@settings(max_examples=50)
@given(small_instances, st.floats(-20.0, 20.0), st.floats(-5.0, 5.0),
       st.integers(1, 3))
def test_frequency_shift_invariance(inst, t, delta, q):
    shifted = validate_instance(inst.amplitudes,
                                [p + delta for p in inst.frequencies])
    base = eval_power(inst, t, q)
    assert eval_power(shifted, t, q) == pytest.approx(base, rel=1e-10, abs=1e-12)


def test_power_on_array_matches_scalar():
    inst = validate_instance([0.5, 1.5], [2.0, -3.0])
    cc = dominated_coefficients([0.5j, -1.0], inst)
    ts = np.linspace(-4, 4, 37)
    for source in (inst, cc):
        vec = power_on_array(source, ts, 2)
        for t, v in zip(ts, vec):
            assert v == pytest.approx(eval_power(source, float(t), 2), rel=1e-12)
