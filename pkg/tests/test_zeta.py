import math

import numpy as np
import pytest

from expmoment.core import BudgetExceededError
from expmoment.zeta import (
    coefficient_square_sum,
    corollary_lower_bound,
    divisor_sum,
    divisor_table,
    growth_fit,
    power_coefficients,
    zeta_instance,
)


def test_power_coefficients_hand_cases():
    table = power_coefficients(3, 2)
    assert table.b[4] == 1  # only 2*2 (1*4 and 4*1 need a factor > 3)
    assert table.b[6] == 2  # 2*3 and 3*2
    assert table.b[1] == 1


def test_power_coefficients_nu_one():
    table = power_coefficients(7, 1)
    assert table.b[1:8].tolist() == [1] * 7


def test_tuple_count_total():
    for n, nu in ((3, 2), (5, 2), (4, 3), (10, 2)):
        assert power_coefficients(n, nu).total() == n ** nu


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError):
        power_coefficients(10 ** 3, 3, budget=10 ** 6)
    with pytest.raises(BudgetExceededError):
        divisor_table(10 ** 7, 2, budget=10 ** 6)


def test_divisor_table_hand_cases():
    t2 = divisor_table(30, 2)
    assert t2.d[6] == 4
    assert t2.d[1] == 1
    for p in (2, 3, 5, 7, 11, 13):
        assert t2.d[p] == 2
    t3 = divisor_table(10, 3)
    assert t3.d[1] == 1
    assert t3.d[2] == 3  # (2,1,1) in 3 orders


def test_divisor_table_matches_brute_force():
    def d_nu_brute(m, nu):
        if nu == 1:
            return 1
        return sum(d_nu_brute(m // e, nu - 1) for e in range(1, m + 1)
                   if m % e == 0)

    for nu in (1, 2, 3):
        table = divisor_table(40, nu)
        for m in range(1, 41):
            assert int(table.d[m]) == d_nu_brute(m, nu)


def test_divisor_multiplicative_spot_checks():
    table = divisor_table(1000, 2)
    for a, b in ((3, 8), (5, 9), (7, 11), (4, 25)):
        assert int(table.d[a * b]) == int(table.d[a]) * int(table.d[b])


def test_truncated_coefficients_match_divisors():
    # b_m = d_nu(m) for m <= N
    for n, nu in ((20, 2), (15, 3), (30, 1)):
        table = power_coefficients(n, nu, limit=n)
        dt = divisor_table(n, nu)
        assert table.b[1:n + 1].tolist() == dt.d[1:n + 1].tolist()


def test_divisor_sum_hand_value():
    assert divisor_sum(1, 2) == pytest.approx(1.0)
    expected = 1 + 4 / 2 + 4 / 3 + 9 / 4 + 4 / 5 + 16 / 6
    assert divisor_sum(6, 2) == pytest.approx(expected, rel=1e-14)


def test_divisor_sum_nondecreasing():
    table = divisor_table(500, 2)
    vals = [divisor_sum(x, 2, table) for x in range(1, 501, 25)]
    assert all(lo <= hi for lo, hi in zip(vals, vals[1:]))


def test_coefficient_chain_inequality():
    # sum over m <= N^nu >= sum over m <= N, and the latter equals the
    # divisor-square sum
    for n, nu in ((10, 2), (6, 3)):
        table = power_coefficients(n, nu)
        full = coefficient_square_sum(table)
        trunc = coefficient_square_sum(table, upto=n)
        assert full >= trunc
        assert trunc == pytest.approx(divisor_sum(n, nu), rel=1e-12)


def test_zeta_instance():
    inst = zeta_instance(4)
    assert inst.amplitudes[0] == 1.0
    assert inst.amplitudes[3] == pytest.approx(0.5)
    assert inst.frequencies[1] == pytest.approx(math.log(2))


def test_corollary_single_term():
    rep = corollary_lower_bound(1, 1, 10.0)
    assert rep.lhs == pytest.approx(1 / 3)
    assert rep.rhs == pytest.approx(1.0, rel=1e-9)
    assert rep.passed


def test_corollary_harmonic_number():
    rep = corollary_lower_bound(10, 1, 1e3)
    h10 = sum(1 / n for n in range(1, 11))
    assert rep.rhs == pytest.approx(h10, rel=0.01)
    assert rep.lhs == pytest.approx(h10 / 3, rel=1e-9)
    assert rep.passed


def test_corollary_n50_nu2():
    rep = corollary_lower_bound(50, 2, 1e4)
    assert rep.passed
    assert rep.margin > 0
    assert rep.method["divisor_square_sum_upto_N"] > 0


def test_growth_fit_structure():
    fit = growth_fit(2, xs=[10 ** 3, 10 ** 4, 10 ** 5])
    assert fit["target"] == 4
    assert len(fit["sums"]) == 3
    assert fit["slope"] > 0
