"""Exact spectral engine: |S(t)|^{2q} expanded into a finite combination
sum_j w_j e^{i omega_j t} via the multinomial identity.

Writing (sum c_n e^{it phi_n})^q = sum_k (q!/prod k_n!) prod c_n^{k_n}
e^{it k.phi} over compositions k of q, the squared modulus is the double
sum over composition pairs (k, h) with frequency omega = (k - h).phi and
coefficient A_k * conj(A_h), A_k = (q!/prod k_n!) prod c_n^{k_n}.
Windowed integrals, Fejer-weighted integrals, and the long-window limit
then have closed forms.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import (
    ComplexCoefficients,
    Instance,
    ImaginaryResidueError,
    NotIntegerError,
    TermBudgetExceededError,
    Window,
    coefficient_values,
    source_frequencies,
    validate_order,
)
from .fejer import KernelParams

DEFAULT_TERM_BUDGET = 10 ** 8

# Rows of composition pairs processed per numpy block.
_ROW_CHUNK = 4_000_000


@dataclass(frozen=True)
class SpectralExpansion:
    """Merged term list (omega_j, w_j) with sum_j w_j e^{i omega_j t} = |S(t)|^{2q}."""

    omegas: np.ndarray
    coeffs: np.ndarray
    q: int
    source: Instance | ComplexCoefficients
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def term_count(self) -> int:
        return int(self.omegas.size)

    def coeff_scale(self) -> float:
        return float(np.abs(self.coeffs).sum())

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["omega", "coeff_re", "coeff_im"])
            for w, c in zip(self.omegas, self.coeffs):
                writer.writerow([repr(float(w)), repr(float(c.real)),
                                 repr(float(c.imag))])


@lru_cache(maxsize=64)
def _compositions(q: int, n: int) -> tuple[tuple[int, ...], ...]:
    """All n-tuples of non-negative integers summing to q, lexicographic."""
    if n == 1:
        return ((q,),)
    out = []
    for first in range(q, -1, -1):
        for rest in _compositions(q - first, n - 1):
            out.append((first,) + rest)
    return tuple(out)


def composition_count(n: int, q: int) -> int:
    return math.comb(n + q - 1, q)


def default_merge_tol(source, q: int) -> float:
    """Separates genuinely distinct float omegas from arithmetic noise."""
    return 1e-9 * max(1.0, q * max(abs(p) for p in source.frequencies))


def _amplitude_rows(source, q: int):
    """Per-composition data: multinomial weights A_k (complex) and k.phi."""
    coeffs = np.asarray(coefficient_values(source), dtype=np.complex128)
    phis = np.asarray(source_frequencies(source), dtype=np.float64)
    comps = np.asarray(_compositions(q, coeffs.size), dtype=np.int64)
    fact_q = math.factorial(q)
    multinoms = np.array(
        [fact_q // math.prod(math.factorial(int(k)) for k in row)
         for row in comps], dtype=np.float64)
    # 0^0 = 1 under numpy power, so zero coefficients are handled exactly.
    prods = np.prod(coeffs[None, :] ** comps, axis=1)
    return comps, multinoms * prods, comps @ phis


def _merge(omegas: np.ndarray, coeffs: np.ndarray,
           tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Cluster omegas closer than tol (on the sorted sequence) and sum coeffs."""
    order = np.argsort(omegas, kind="stable")
    om = omegas[order]
    co = coeffs[order]
    if om.size == 0:
        return om, co
    breaks = np.flatnonzero(np.diff(om) > tol) + 1
    starts = np.concatenate(([0], breaks))
    merged_co = np.add.reduceat(co, starts)
    counts = np.diff(np.concatenate((starts, [om.size])))
    merged_om = np.add.reduceat(om, starts) / counts
    return merged_om, merged_co


def expand(source: Instance | ComplexCoefficients, q: int,
           merge_tol: float | None = None,
           term_budget: int = DEFAULT_TERM_BUDGET) -> SpectralExpansion:
    """Full multi-index-pair expansion of |S(t)|^{2q}, merged by omega."""
    validate_order(q)
    n_comps = composition_count(source.size, q)
    if n_comps * n_comps > term_budget:
        raise TermBudgetExceededError(
            f"{n_comps}^2 composition pairs exceed budget {term_budget}")
    if merge_tol is None:
        merge_tol = default_merge_tol(source, q)
    _, amps, freqs = _amplitude_rows(source, q)

    rows_per_chunk = max(1, _ROW_CHUNK // n_comps)
    parts_om, parts_co = [], []
    for start in range(0, n_comps, rows_per_chunk):
        stop = min(start + rows_per_chunk, n_comps)
        om = (freqs[start:stop, None] - freqs[None, :]).ravel()
        co = (amps[start:stop, None] * np.conj(amps)[None, :]).ravel()
        mo, mc = _merge(om, co, merge_tol)
        parts_om.append(mo)
        parts_co.append(mc)
    omegas, coeffs = _merge(np.concatenate(parts_om),
                            np.concatenate(parts_co), merge_tol)

    s0_direct = float(np.abs(np.sum(np.asarray(coefficient_values(source),
                                               dtype=np.complex128))) ** (2 * q))
    total = complex(np.sum(coeffs))
    parseval = abs(total - s0_direct) / max(s0_direct, 1e-300)
    return SpectralExpansion(
        omegas, coeffs, q, source,
        {"merge_tol": merge_tol, "raw_pairs": n_comps * n_comps,
         "parseval_rel_err": parseval, "exact_omegas": False})


def rational_mode_expand(source: Instance | ComplexCoefficients, q: int,
                         term_budget: int = DEFAULT_TERM_BUDGET) -> SpectralExpansion:
    """Expansion with integer frequencies: omegas and merging are exact."""
    validate_order(q)
    phis = source_frequencies(source)
    int_phis = []
    for p in phis:
        if p != int(p):
            raise NotIntegerError(f"frequency {p!r} is not an integer")
        int_phis.append(int(p))
    n_comps = composition_count(source.size, q)
    if n_comps * n_comps > term_budget:
        raise TermBudgetExceededError(
            f"{n_comps}^2 composition pairs exceed budget {term_budget}")
    comps, amps, _ = _amplitude_rows(source, q)
    kdot = comps @ np.asarray(int_phis, dtype=np.int64)

    merged: dict[int, complex] = {}
    for i in range(n_comps):
        oms = kdot[i] - kdot
        cos = amps[i] * np.conj(amps)
        for om, co in zip(oms.tolist(), cos.tolist()):
            merged[om] = merged.get(om, 0j) + co
    omegas = np.array(sorted(merged), dtype=np.float64)
    coeffs = np.array([merged[int(o)] for o in omegas], dtype=np.complex128)

    s0_direct = float(np.abs(np.sum(np.asarray(coefficient_values(source),
                                               dtype=np.complex128))) ** (2 * q))
    total = complex(np.sum(coeffs))
    parseval = abs(total - s0_direct) / max(s0_direct, 1e-300)
    return SpectralExpansion(
        omegas, coeffs, q, source,
        {"merge_tol": 0.0, "raw_pairs": n_comps * n_comps,
         "parseval_rel_err": parseval, "exact_omegas": True})


def _real_part(total: complex, scale: float, what: str) -> float:
    if abs(total.imag) > 1e-9 * max(scale, abs(total.real)):
        raise ImaginaryResidueError(
            f"{what}: imaginary residue {total.imag!r} vs scale {scale!r}")
    return total.real


def integral_exact(expansion: SpectralExpansion, window: Window) -> float:
    """Closed-form integral of |S|^{2q} over |t - center| <= T (not normalized).

    Each term integrates to coeff * e^{i omega center} * 2 sin(omega T)/omega,
    with 2T at omega = 0.
    """
    T, center = window.half_width, window.center
    weights = 2.0 * T * np.sinc(expansion.omegas * (T / math.pi))
    phases = np.exp(1j * expansion.omegas * center)
    total = complex(np.sum(expansion.coeffs * phases * weights))
    scale = expansion.coeff_scale() * 2.0 * T
    return _real_part(total, scale, "integral_exact")


def limit_moment(expansion: SpectralExpansion,
                 resonance_tol: float | None = None) -> float:
    """The T -> infinity windowed average: sum of coefficients at |omega| <= tol.

    For linearly independent frequencies this is the diagonal sum
    sum_k (q!/prod k_n!)^2 prod a_n^{2 k_n}.
    """
    if resonance_tol is None:
        resonance_tol = expansion.metadata.get("merge_tol", 0.0)
    mask = np.abs(expansion.omegas) <= resonance_tol
    total = complex(np.sum(expansion.coeffs[mask]))
    return _real_part(total, expansion.coeff_scale(), "limit_moment")


def resonance_gap(expansion: SpectralExpansion,
                  resonance_tol: float | None = None) -> float:
    """Smallest |omega| above the resonance tolerance (inf if none).

    Quantifies how large T must be before the finite-window average
    approaches limit_moment: the off-resonant error decays like 1/(T gap).
    """
    if resonance_tol is None:
        resonance_tol = expansion.metadata.get("merge_tol", 0.0)
    above = np.abs(expansion.omegas)[np.abs(expansion.omegas) > resonance_tol]
    return float(above.min()) if above.size else math.inf


def fejer_weighted_exact(expansion: SpectralExpansion,
                         params: KernelParams) -> float:
    """Exact value of integral K_T(t - H)|S(t)|^{2q} dt.

    Each term contributes coeff * e^{i omega H} * Khat_T(omega), with
    Khat_T(omega) = 4 sin^2(omega T/2)/(T omega^2) = T sinc^2(omega T/(2 pi)).
    """
    T, H = params.T, params.H
    weights = T * np.sinc(expansion.omegas * (T / (2 * math.pi))) ** 2
    phases = np.exp(1j * expansion.omegas * H)
    total = complex(np.sum(expansion.coeffs * phases * weights))
    scale = expansion.coeff_scale() * T
    return _real_part(total, scale, "fejer_weighted_exact")
