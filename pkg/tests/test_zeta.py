import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from selberg import Precision
from selberg.errors import DivergentTail, OutsideConvergence, PreconditionError
from selberg.fuchsian import LengthSpectrum
from selberg.zeta import (GeneralLocalFactorInput, SigmaParam, central_difference,
                          local_factor_general, local_factor_sl2, log_derivative, log_zeta,
                          pgt_tail_estimate, sl2_general_input, zeta)

P = Precision()
HALF = mpmath.mpf(1) / 2


def test_local_factor_small_example():
    exact = Fraction(15, 16) * Fraction(63, 64) * Fraction(255, 256)
    f = local_factor_sl2(4, 1, "trivial", 1.5, 2, tail_check=False)
    with P.context():
        assert abs(f.value - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-45
    assert f.tail_bound == pytest.approx(2 * 4.0 ** -5 / 0.75)


def test_local_factor_tail_check():
    with pytest.raises(DivergentTail):
        local_factor_sl2(4, 1, "trivial", 1.5, 2)
    assert local_factor_sl2(4, 1, "trivial", 1.5, 8).tail_bound < 1e-3


def test_local_factor_large_t_tends_to_one():
    f = local_factor_sl2(mpmath.mpf(10) ** 30, 1, "trivial", 1, 5)
    with P.context():
        assert abs(f.value - 1) < 1e-40


@pytest.mark.parametrize("m_sign,sigma,eps", [(1, "trivial", 1), (-1, "trivial", 1),
                                              (1, "theta", 1), (-1, "theta", -1)])
def test_local_factor_sign(m_sign, sigma, eps):
    t, lam = mpmath.mpf(5), mpmath.mpf("1.25")
    f = local_factor_sl2(t, m_sign, sigma, lam, 3, tail_check=False)
    with P.context():
        direct = mpmath.fprod(1 - eps * t ** (-lam - k - HALF) for k in range(4))
        assert abs(f.value - direct) < 1e-45


def test_local_factor_preconditions():
    with pytest.raises(PreconditionError):
        local_factor_sl2(1, 1, "trivial", 1, 2)
    with pytest.raises(PreconditionError):
        local_factor_sl2(3, 1, "trivial", 1, -1)
    with pytest.raises(PreconditionError):
        GeneralLocalFactorInput([[1]], 1.0, [0.5])
    with pytest.raises(PreconditionError):
        GeneralLocalFactorInput([[1]], 2.0, [1.0])


def test_general_k0_single_factor():
    data = GeneralLocalFactorInput([[1]], 3.0, [0.2])
    f = local_factor_general(data, "0.7", 0.5, 0, tail_check=False)
    with P.context():
        assert abs(f.value - (1 - mpmath.mpf(3) ** (-mpmath.mpf("0.7") / HALF - 1))) < 1e-45


def test_general_identity_block_squares():
    one = GeneralLocalFactorInput([[1]], 2.5, [0.3, 0.1j])
    two = GeneralLocalFactorInput([[1, 0], [0, 1]], 2.5, [0.3, 0.1j])
    a = local_factor_general(one, 1 + 0.5j, 0.5, 6, tail_check=False).value
    b = local_factor_general(two, 1 + 0.5j, 0.5, 6, tail_check=False).value
    with P.context():
        assert abs(b - a ** 2) < 1e-40


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 10), st.floats(-2, 4), st.floats(-5, 5), st.integers(0, 50),
       st.sampled_from([1, -1]), st.sampled_from(list(SigmaParam)))
def test_general_matches_sl2(log_t, re, im, K, sign, sigma):
    with P.context():
        t = mpmath.exp(log_t)
        lam = mpmath.mpc(re, im)
        a = local_factor_sl2(t, sign, sigma, lam, K, tail_check=False).value
        b = local_factor_general(sl2_general_input(t, sign, sigma), lam, HALF, K,
                                 tail_check=False).value
        assert abs(a - b) <= 1e-25 * abs(a)


def test_empty_spectrum_is_one():
    empty = LengthSpectrum((), mpmath.mpf(1), "empty", P)
    assert zeta(empty, "trivial", 2).value == 1
    assert log_derivative(empty, "trivial", 2).value == 0


@pytest.mark.parametrize("lam", [0.5, 0.3, 0.5 + 3j])
def test_outside_convergence(bolza_spec8, lam):
    with pytest.raises(OutsideConvergence):
        zeta(bolza_spec8, "trivial", lam)
    with pytest.raises(OutsideConvergence):
        log_derivative(bolza_spec8, "trivial", lam)


def test_schwarz_reflection(bolza_spec8):
    a = zeta(bolza_spec8, "trivial", 1.3 + 0.7j).value
    b = zeta(bolza_spec8, "trivial", 1.3 - 0.7j).value
    with P.context():
        assert abs(a - mpmath.conj(b)) < 1e-40


@pytest.mark.parametrize("sigma", list(SigmaParam))
def test_log_derivative_real_on_real_axis(bolza_spec8, sigma):
    v = log_derivative(bolza_spec8, sigma, 1.7).value
    assert mpmath.im(v) == 0


def test_log_derivative_decays(bolza_spec8):
    assert abs(log_derivative(bolza_spec8, "trivial", 30).value) < 1e-30


def test_log_derivative_vs_central_difference(bolza_spec10):
    lam = mpmath.mpf("1.2")

    def logz(x):
        return log_zeta(bolza_spec10, "trivial", x).value

    with P.context():
        fd = central_difference(logz, lam, h=mpmath.mpf("1e-5"))
        ld = log_derivative(bolza_spec10, "trivial", lam).value
        assert abs(ld - fd) < 1e-6


def test_exp_log_matches_product(bolza_spec10):
    rng = random.Random(1)
    for _ in range(100):
        lam = mpmath.mpc(rng.uniform(0.6, 4), rng.uniform(-10, 10))
        K = rng.randint(1, 30)
        sigma = rng.choice(list(SigmaParam))
        with P.context():
            direct = zeta(bolza_spec10, sigma, lam, K).value
            via_log = mpmath.exp(log_zeta(bolza_spec10, sigma, lam, K).value)
            assert abs(direct - via_log) <= 1e-20 * abs(direct)


def test_truncation_in_k_within_tail_bounds(bolza_spec8):
    lam = mpmath.mpf("1.5")
    bound = sum(g.multiplicity * local_factor_sl2(mpmath.exp(g.length), g.m_sign, "trivial",
                                                  lam, 5).tail_bound
                for g in bolza_spec8.geodesics)
    with P.context():
        diff = abs(log_zeta(bolza_spec8, "trivial", lam, K=40).value
                   - log_zeta(bolza_spec8, "trivial", lam, K=5).value)
    assert diff <= bound


def test_truncation_in_length_tracks_estimate(bolza_spec8, bolza_spec10):
    # the estimate is heuristic: check it has the right order of magnitude
    for lam in (1, 1.5, 2):
        with P.context():
            diff = abs(log_zeta(bolza_spec10, "trivial", lam).value
                       - log_zeta(bolza_spec8, "trivial", lam).value)
        est = pgt_tail_estimate(lam, 8)
        assert 0.1 < float(diff) / est < 10


def test_nonvanishing_on_grid(bolza_spec8):
    for re in (0.6, 0.8, 1.2, 2.0):
        for im in (-20, -3, 0, 1, 7):
            assert abs(zeta(bolza_spec8, "trivial", mpmath.mpc(re, im)).value) > 0


def test_thread_count_does_not_change_bits(bolza_spec10):
    a = log_zeta(bolza_spec10, "theta", 0.9 + 2j, threads=1).value
    b = log_zeta(bolza_spec10, "theta", 0.9 + 2j, threads=4).value
    assert a == b
    c = log_derivative(bolza_spec10, "trivial", 1.1, threads=1).value
    d = log_derivative(bolza_spec10, "trivial", 1.1, threads=3).value
    assert c == d


def test_pgt_tail_estimate_value():
    assert pgt_tail_estimate(1, 10) == pytest.approx(float(mpmath.e1(5)))
