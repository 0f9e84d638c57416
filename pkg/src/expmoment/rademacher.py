"""Moments of sign-randomized sums E|sum_n eps_n z_n|^{2q} for Rademacher
signs eps_n: exact combinatorial values, exhaustive enumeration over all
sign vectors, reproducible Monte Carlo, and empirical Khintchine ratios.

The exact route uses the multi-index expansion: a monomial
prod eps_n^{k_n + h_n} has expectation 1 iff every exponent is even, i.e.
iff k and h have equal parity vectors.  Grouping the one-sided terms
A_k = (q!/prod k_n!) prod z_n^{k_n} by parity therefore gives
E|sum eps z|^{2q} = sum_classes |sum_{k in class} A_k|^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox

from .core import (
    NonFiniteError,
    TermBudgetExceededError,
    TooManySignsError,
    validate_order,
)
from .spectral import DEFAULT_TERM_BUDGET, _compositions, composition_count

_MAX_EXHAUSTIVE = 24
_SIGN_CHUNK = 1 << 16


@dataclass(frozen=True)
class RademacherMoment:
    value: float
    method: str  # "exact_combinatorial" | "exhaustive" | "monte_carlo"
    samples: int | None = None
    std_error: float | None = None

    def __post_init__(self):
        if self.value < 0:
            raise NonFiniteError("moment must be >= 0")


def _as_complex(values) -> np.ndarray:
    z = np.asarray([complex(v) for v in values], dtype=np.complex128)
    if z.size == 0:
        raise NonFiniteError("need at least one coefficient")
    if not np.all(np.isfinite(z)):
        raise NonFiniteError("non-finite coefficient")
    return z


def exact_even_moment(values, q: int,
                      term_budget: int = DEFAULT_TERM_BUDGET) -> float:
    """E|sum_n eps_n z_n|^{2q} exactly, via parity classes of compositions."""
    validate_order(q)
    z = _as_complex(values)
    n = z.size
    n_comps = composition_count(n, q)
    if n_comps * n_comps > term_budget:
        raise TermBudgetExceededError(
            f"{n_comps}^2 composition pairs exceed budget {term_budget}")
    comps = np.asarray(_compositions(q, n), dtype=np.int64)
    fact_q = math.factorial(q)
    multinoms = np.array(
        [fact_q // math.prod(math.factorial(int(k)) for k in row)
         for row in comps], dtype=np.float64)
    amps = multinoms * np.prod(z[None, :] ** comps, axis=1)
    classes: dict[tuple, complex] = {}
    for key, a in zip(map(tuple, (comps & 1).tolist()), amps.tolist()):
        classes[key] = classes.get(key, 0j) + a
    return math.fsum(abs(s) ** 2 for s in classes.values())


def exhaustive_moment(values, q: int) -> float:
    """Average of |sum eps_n z_n|^{2q} over all 2^N sign vectors."""
    validate_order(q)
    z = _as_complex(values)
    n = z.size
    if n > _MAX_EXHAUSTIVE:
        raise TooManySignsError(f"2^{n} sign vectors is too many (max N={_MAX_EXHAUSTIVE})")
    total = 1 << n
    bit = np.arange(n, dtype=np.uint32)
    partials = []
    for start in range(0, total, _SIGN_CHUNK):
        idx = np.arange(start, min(start + _SIGN_CHUNK, total), dtype=np.uint32)
        signs = 1.0 - 2.0 * ((idx[:, None] >> bit[None, :]) & 1)
        s = signs @ z
        partials.append(float(np.sum((s.real * s.real + s.imag * s.imag) ** q)))
    return math.fsum(partials) / total


def monte_carlo_moment(values, q: int, samples: int, seed: int) -> RademacherMoment:
    """Unbiased sample mean of |sum eps z|^{2q}, reproducible from the seed.

    Signs come from a counter-based Philox stream keyed by the seed, so the
    realization depends only on (seed, sample index).
    """
    validate_order(q)
    if samples < 1:
        raise NonFiniteError("samples must be >= 1")
    z = _as_complex(values)
    rng = Generator(Philox(key=seed))
    sums = []
    sq_sums = []
    done = 0
    while done < samples:
        m = min(_SIGN_CHUNK, samples - done)
        signs = rng.integers(0, 2, size=(m, z.size)).astype(np.float64) * 2.0 - 1.0
        s = signs @ z
        vals = (s.real * s.real + s.imag * s.imag) ** q
        sums.append(float(np.sum(vals)))
        sq_sums.append(float(np.sum(vals * vals)))
        done += m
    mean = math.fsum(sums) / samples
    if samples > 1:
        var = max(0.0, (math.fsum(sq_sums) - samples * mean * mean) / (samples - 1))
        std_error = math.sqrt(var / samples)
    else:
        std_error = None
    return RademacherMoment(max(0.0, mean), "monte_carlo", samples, std_error)


def khintchine_ratio_scan(q: int, trials: int, dimension_range: tuple[int, int],
                          seed: int) -> dict:
    """Empirical range of E|sum eps z|^{2q} / (sum |z_n|^2)^q over random z.

    The minimum is provably >= 1 (Jensen on the exact second moment
    E|sum eps z|^2 = sum |z|^2); the maximum is observational metadata.
    """
    validate_order(q)
    if trials < 1:
        raise NonFiniteError("trials must be >= 1")
    lo, hi = dimension_range
    if lo < 1 or hi < lo:
        raise NonFiniteError("bad dimension range")
    rng = Generator(Philox(key=seed))
    min_ratio = math.inf
    max_ratio = -math.inf
    for _ in range(trials):
        n = int(rng.integers(lo, hi + 1))
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        denom = float(np.sum(z.real ** 2 + z.imag ** 2)) ** q
        ratio = exact_even_moment(z, q) / denom
        min_ratio = min(min_ratio, ratio)
        max_ratio = max(max_ratio, ratio)
    return {"min_ratio": min_ratio, "max_ratio": max_ratio,
            "trials": trials, "q": q}
