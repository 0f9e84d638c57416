"""Application to partial sums of zeta on the critical line: coefficients
b_m of the nu-th power of sum_{n<=N} n^{-1/2-it}, divisor functions d_nu,
the divisor-square sum, and the moment lower bound c log^{nu^2} N.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .core import BudgetExceededError, Instance, validate_order
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .verify import (
    THEOREM_CONSTANT,
    VerificationReport,
    _raw_window_integral,
    inequality_holds,
)
from .core import Window

DEFAULT_ENTRY_BUDGET = 10 ** 8


@dataclass(frozen=True)
class CoefficientTable:
    """b_m = number of nu-tuples with entries <= N and product m, for m <= limit."""

    nu: int
    N: int
    limit: int
    b: np.ndarray  # int64, index m in 0..limit; b[0] unused

    def total(self) -> int:
        return int(self.b.sum())

    def to_csv(self, path) -> None:
        _table_to_csv(path, "b", self.b)


@dataclass(frozen=True)
class DivisorTable:
    """d_nu(m) for m <= x: ordered factorizations of m into nu factors."""

    nu: int
    x: int
    d: np.ndarray  # int64, index m in 0..x; d[0] unused

    def to_csv(self, path) -> None:
        _table_to_csv(path, "d", self.d)


def _table_to_csv(path, name: str, arr: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", name])
        for m in range(1, arr.size):
            writer.writerow([m, int(arr[m])])


def power_coefficients(N: int, nu: int, limit: int | None = None,
                       budget: int = DEFAULT_ENTRY_BUDGET) -> CoefficientTable:
    """nu-fold Dirichlet convolution of the indicator of [1, N], exact integers.

    A table truncated at limit < N^nu is exact for every m <= limit (all
    factors of a product <= limit are themselves <= limit).
    """
    validate_order(nu)
    if N < 1:
        raise BudgetExceededError("N must be >= 1")
    full = N ** nu
    if limit is None:
        limit = full
    limit = min(limit, full)
    if limit > budget:
        raise BudgetExceededError(f"table of {limit} entries exceeds budget {budget}")
    cur = np.zeros(limit + 1, dtype=np.int64)
    cur[1:min(N, limit) + 1] = 1
    for _ in range(nu - 1):
        new = np.zeros(limit + 1, dtype=np.int64)
        for d in range(1, min(N, limit) + 1):
            cnt = limit // d
            new[d::d] += cur[1:cnt + 1]
        cur = new
    return CoefficientTable(nu, N, limit, cur)


def divisor_table(x: int, nu: int,
                  budget: int = DEFAULT_ENTRY_BUDGET) -> DivisorTable:
    """Sieve d_nu(m) for m <= x, exact integers."""
    validate_order(nu)
    if x < 1:
        raise BudgetExceededError("x must be >= 1")
    if x > budget:
        raise BudgetExceededError(f"table of {x} entries exceeds budget {budget}")
    if nu == 1:
        d = np.ones(x + 1, dtype=np.int64)
        d[0] = 0
        return DivisorTable(nu, x, d)
    if nu == 2:
        # Pair divisors (e, m/e) with e <= sqrt(m): loop only to sqrt(x).
        d = np.zeros(x + 1, dtype=np.int64)
        for e in range(1, math.isqrt(x) + 1):
            d[e * e] += 1
            d[e * e + e::e] += 2
        return DivisorTable(nu, x, d)
    cur = np.ones(x + 1, dtype=np.int64)
    cur[0] = 0
    for _ in range(nu - 1):
        new = np.zeros(x + 1, dtype=np.int64)
        for e in range(1, x + 1):
            new[e::e] += cur[1:x // e + 1]
        cur = new
    return DivisorTable(nu, x, cur)


def _weighted_square_sum(arr: np.ndarray, upto: int) -> float:
    """sum_{1<=m<=upto} arr[m]^2 / m with chunked compensated accumulation."""
    chunk = 1 << 16
    partials = []
    for start in range(1, upto + 1, chunk):
        stop = min(start + chunk, upto + 1)
        m = np.arange(start, stop, dtype=np.float64)
        v = arr[start:stop].astype(np.float64)
        partials.append(float(np.sum(v * v / m)))
    return math.fsum(partials)


def divisor_sum(x: int, nu: int, table: DivisorTable | None = None) -> float:
    """sum_{m<=x} d_nu(m)^2 / m, which grows like C_nu log^{nu^2} x."""
    if table is None:
        table = divisor_table(x, nu)
    if table.nu != nu or table.x < x:
        raise BudgetExceededError("divisor table does not cover the request")
    return _weighted_square_sum(table.d, x)


def coefficient_square_sum(table: CoefficientTable,
                           upto: int | None = None) -> float:
    """sum_{m<=upto} b_m^2 / m over the coefficient table."""
    if upto is None:
        upto = table.limit
    if upto > table.limit:
        raise BudgetExceededError("coefficient table does not cover the request")
    return _weighted_square_sum(table.b, upto)


def growth_fit(nu: int = 2, xs=None) -> dict:
    """Regress log(divisor_sum(x)) on log log x; slope targets nu^2.

    Convergence of the o(1) term is slow, so the slope lands near nu^2
    only loosely at desk scale.
    """
    if xs is None:
        xs = np.unique(np.geomspace(1e3, 1e7, 15).astype(np.int64))
    xs = [int(x) for x in xs]
    table = divisor_table(max(xs), nu)
    sums = [divisor_sum(x, nu, table) for x in xs]
    lx = np.log(np.log(np.asarray(xs, dtype=np.float64)))
    ly = np.log(np.asarray(sums))
    slope, intercept = np.polyfit(lx, ly, 1)
    return {"nu": nu, "xs": xs, "sums": sums,
            "slope": float(slope), "intercept": float(intercept),
            "target": nu * nu}


def zeta_instance(N: int) -> Instance:
    """Amplitudes n^{-1/2} and frequencies log n for n = 1..N."""
    if N < 1:
        raise BudgetExceededError("N must be >= 1")
    amps = tuple(1.0 / math.sqrt(n) for n in range(1, N + 1))
    phis = tuple(math.log(n) for n in range(1, N + 1))
    return Instance(amps, phis)


def corollary_lower_bound(N: int, nu: int, half_width: float,
                          config: QuadratureConfig = DEFAULT_CONFIG,
                          engine: str = "auto") -> VerificationReport:
    """(1/3) sum_{m<=N^nu} b_m^2/m <= (1/2T) integral |sum n^{-1/2-it}|^{2 nu} dt.

    The moment lower bound is applied at order q = nu to the nu-th power of
    the partial sum, whose squared-coefficient sum is exactly
    sum b_m^2/m.  The report also carries sum_{m<=N} d_nu(m)^2/m, the
    intermediate quantity that grows like log^{nu^2} N.
    """
    validate_order(nu)
    table = power_coefficients(N, nu)
    coeff_sum = coefficient_square_sum(table)
    lhs = THEOREM_CONSTANT * coeff_sum
    instance = zeta_instance(N)
    raw, meta = _raw_window_integral(instance, nu, Window(0.0, half_width),
                                     config, engine)
    rhs = raw / (2 * half_width)
    intermediate = divisor_sum(N, nu)
    meta.update({"N": N, "nu": nu, "T": half_width,
                 "coefficient_square_sum": coeff_sum,
                 "divisor_square_sum_upto_N": intermediate,
                 "log_power_target": math.log(N) ** (nu * nu) if N > 1 else 0.0,
                 "order_note": "moment bound applied at q = nu"})
    passed = inequality_holds(lhs, rhs) and meta.get("engines_agree", True)
    return VerificationReport("corollary", {"N": N, "nu": nu}, lhs, rhs,
                              rhs - lhs, passed, meta)
