import json
import math

import numpy as np
import pytest

from expmoment.core import (
    BadGapError,
    DegenerateCosineError,
    dominated_coefficients,
    validate_instance,
)
from expmoment.verify import (
    check_bohr_bound,
    check_eq45,
    check_ingham_mordell,
    check_lemma,
    check_sup_chain,
    check_theorem1,
    random_dominated,
    random_instance,
)


def test_theorem1_single_term():
    rep = check_theorem1(validate_instance([1.0], [0.0]), 1, 5.0)
    assert rep.lhs == pytest.approx(1 / 3)
    assert rep.rhs == pytest.approx(1.0)
    assert rep.passed


def test_theorem1_two_tone():
    rep = check_theorem1(validate_instance([1.0, 1.0], [0.0, 1.0]), 1, math.pi)
    assert rep.lhs == pytest.approx(2 / 3)
    assert rep.rhs == pytest.approx(2.0, rel=1e-9)
    assert rep.passed


def test_theorem1_all_zero_trivial():
    rep = check_theorem1(validate_instance([0.0, 0.0], [0.0, 1.0]), 2, 1.0)
    assert rep.passed
    assert rep.method.get("trivial")


def test_theorem1_scale_invariant_verdict():
    inst = validate_instance([0.3, 0.8, 0.1], [0.0, 2.2, -4.0])
    base = check_theorem1(inst, 2, 3.0, engine="spectral")
    lam = 7.0
    scaled = validate_instance([lam * a for a in inst.amplitudes],
                               inst.frequencies)
    rep = check_theorem1(scaled, 2, 3.0, engine="spectral")
    assert rep.passed == base.passed
    assert rep.lhs == pytest.approx(lam ** 4 * base.lhs, rel=1e-12)
    assert rep.rhs == pytest.approx(lam ** 4 * base.rhs, rel=1e-12)


def test_theorem1_both_engines_report_disagreement():
    inst = validate_instance([1.0, 0.5], [0.0, 2.0])
    rep = check_theorem1(inst, 1, 2.0, engine="both")
    assert "disagreement" in rep.method
    assert rep.method["disagreement"] <= 1e-6
    assert rep.passed


def test_lemma_equal_coefficients_zero_shift():
    inst = validate_instance([1.0, 0.7], [0.0, 1.3])
    cc = dominated_coefficients([complex(a) for a in inst.amplitudes], inst)
    rep = check_lemma(cc, 1, 4.0, 0.0)
    assert rep.passed
    assert rep.lhs == pytest.approx(rep.rhs / 3, rel=1e-9)


def test_lemma_random_signs_and_large_shift():
    rng = np.random.default_rng(31)
    inst = random_instance(rng, max_n=5)
    signs = rng.choice([-1.0, 1.0], inst.size)
    cc = dominated_coefficients(
        [s * a for s, a in zip(signs, inst.amplitudes)], inst)
    rep = check_lemma(cc, 2, 0.5, 1e3)
    assert rep.passed


def test_lemma_complex_stress_case():
    inst = validate_instance([0.6, 0.9], [1.0, -2.5])
    cc = dominated_coefficients([0.6j, -0.9], inst)
    rep = check_lemma(cc, 3, 0.2, 1e3)
    assert rep.passed


def test_eq45_equality_at_zero_shift():
    inst = validate_instance([1.0, 1.0], [0.0, 1.0])
    cc = dominated_coefficients([complex(a) for a in inst.amplitudes], inst)
    rep = check_eq45(cc, 1, 3.0, 0.0)
    assert rep.passed
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-10)


def test_eq45_random_phases():
    rng = np.random.default_rng(41)
    for _ in range(10):
        inst = random_instance(rng, max_n=4)
        cc = random_dominated(rng, inst)
        rep = check_eq45(cc, int(rng.integers(1, 3)),
                         float(rng.uniform(0.5, 20)),
                         float(rng.uniform(-100, 100)))
        assert rep.passed


def test_eq45_rational_mode():
    rng = np.random.default_rng(43)
    inst = validate_instance([0.5, 0.25, 0.9, 0.4],
                             [-3.0, 0.0, 2.0, 7.0])
    cc = random_dominated(rng, inst)
    rep = check_eq45(cc, 3, 5.0, 17.0, rational=True)
    assert rep.passed
    assert rep.method["rational_mode"]


def test_sup_chain_single_term_equality():
    inst = validate_instance([1.0], [2.0])
    rep = check_sup_chain(inst, [10.0])
    assert rep.passed
    assert rep.lhs == pytest.approx(1.0)
    assert rep.method["averages"][-1] == pytest.approx(1.0, rel=1e-9)


def test_sup_chain_two_tone_middle_value():
    inst = validate_instance([1.0, 1.0], [0.0, 1.0])
    rep = check_sup_chain(inst, [10.0, 100.0, 1000.0])
    assert rep.passed
    assert rep.method["averages"][-1] == pytest.approx(4 / math.pi, abs=1e-3)
    assert 1.0 <= rep.method["averages"][-1] <= 2.0


def test_sup_chain_rejects_repeated_frequencies():
    with pytest.raises(BadGapError):
        check_sup_chain(validate_instance([1.0, 1.0], [2.0, 2.0]), [10.0])


def test_ingham_hand_case():
    inst = validate_instance([1.0, 1.0], [0.0, 1.0])
    rep = check_ingham_mordell(inst, 1.0)
    assert rep.rhs == pytest.approx(8 / math.pi, rel=1e-8)
    assert rep.passed


def test_ingham_arithmetic_progression():
    rng = np.random.default_rng(53)
    gamma = 0.8
    n = 5
    inst = validate_instance([float(a) for a in rng.uniform(0, 1, n)],
                             [gamma * k for k in range(n)])
    rep = check_ingham_mordell(inst, gamma)
    assert rep.passed


def test_ingham_bad_gap():
    inst = validate_instance([1.0, 1.0], [0.0, 0.5])
    with pytest.raises(BadGapError):
        check_ingham_mordell(inst, 1.0)


def test_bohr_single_term_equality():
    rep = check_bohr_bound(validate_instance([1.0], [2.0]), 1)
    assert rep.passed
    assert rep.rhs == pytest.approx(1.0, rel=1e-6)


def test_bohr_two_tone():
    rep = check_bohr_bound(validate_instance([1.0, 1.0], [1.0, 2.0]), 2)
    assert rep.passed
    assert rep.method["cos_product"] == pytest.approx(math.cos(math.pi / 4))


def test_bohr_lacunary_random():
    rng = np.random.default_rng(61)
    for _ in range(5):
        n = int(rng.integers(2, 5))
        phis = np.cumprod(rng.uniform(2.0, 3.0, n))
        inst = validate_instance([float(a) for a in rng.uniform(0.1, 1, n)],
                                 [float(p) for p in phis])
        idx = int(rng.integers(1, n + 1))
        assert check_bohr_bound(inst, idx).passed


def test_bohr_rejects_nonpositive_frequencies():
    with pytest.raises(BadGapError):
        check_bohr_bound(validate_instance([1.0, 1.0], [0.0, 1.0]), 1)


def test_report_json_line_schema():
    rep = check_theorem1(validate_instance([1.0], [0.0]), 1, 1.0)
    rec = json.loads(rep.to_json_line())
    for key in ("check", "lhs", "rhs", "margin", "passed", "engine", "seed"):
        assert key in rec
    assert rec["check"] == "theorem1"
    assert rec["passed"] is True
