"""Pointwise and batch evaluation of S(t) = sum_n c_n e^{it phi_n} and |S(t)|^{2q}."""
from __future__ import annotations

import math

import numpy as np

from .core import (
    ComplexCoefficients,
    Instance,
    NonFiniteError,
    OverflowRangeError,
    coefficient_values,
    source_frequencies,
    validate_order,
)


def validate_grid(points) -> tuple[float, ...]:
    """Evaluation grid: finite, strictly increasing reals. Empty is allowed."""
    pts = tuple(float(t) for t in points)
    for t in pts:
        if not math.isfinite(t):
            raise NonFiniteError(f"non-finite grid point {t!r}")
    for lo, hi in zip(pts, pts[1:]):
        if not lo < hi:
            raise NonFiniteError("grid points must be strictly increasing")
    return pts


def eval_sum(source: Instance | ComplexCoefficients, t: float) -> complex:
    """S(t) with compensated per-component accumulation."""
    if not math.isfinite(t):
        raise NonFiniteError(f"non-finite t {t!r}")
    coeffs = coefficient_values(source)
    phis = source_frequencies(source)
    re_parts = []
    im_parts = []
    for c, phi in zip(coeffs, phis):
        co = math.cos(t * phi)
        si = math.sin(t * phi)
        re_parts.append(c.real * co - c.imag * si)
        im_parts.append(c.real * si + c.imag * co)
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def _check_overflow(source, q: int) -> None:
    # (sum |c_n|)^{2q} is the pointwise maximum of |S|^{2q}; reject if it
    # leaves the double range (callers may rescale: everything is homogeneous).
    if source.amplitude_sum() > 10.0 ** (300.0 / (2 * q)):
        raise OverflowRangeError(
            "amplitude sum too large for order q; rescale the amplitudes")


def eval_power(source: Instance | ComplexCoefficients, t: float, q: int) -> float:
    """|S(t)|^{2q}, computed as (re^2 + im^2)^q."""
    validate_order(q)
    _check_overflow(source, q)
    s = eval_sum(source, t)
    return (s.real * s.real + s.imag * s.imag) ** q


def eval_batch(source: Instance | ComplexCoefficients, grid, q: int) -> list[float]:
    """Pointwise eval_power over a validated grid, order preserved."""
    pts = validate_grid(grid)
    return [eval_power(source, t, q) for t in pts]


# --------------------------------------------------------------------------
# Vectorized kernels for the integration engines (numpy, internal).
# --------------------------------------------------------------------------

def sum_on_array(source, ts: np.ndarray) -> np.ndarray:
    """S(t) on an array of points."""
    coeffs = np.asarray(coefficient_values(source), dtype=np.complex128)
    phis = np.asarray(source_frequencies(source), dtype=np.float64)
    return np.exp(1j * np.multiply.outer(ts, phis)) @ coeffs


def power_on_array(source, ts: np.ndarray, q: int) -> np.ndarray:
    """|S(t)|^{2q} on an array of points."""
    s = sum_on_array(source, ts)
    return (s.real * s.real + s.imag * s.imag) ** q


def abs_on_array(source, ts: np.ndarray) -> np.ndarray:
    """|S(t)| on an array of points (for the L1 inequalities)."""
    return np.abs(sum_on_array(source, ts))
