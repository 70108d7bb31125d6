import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from mvhyper.errors import DomainError, PoleError
from mvhyper.partitions import Partition, enumerate_partitions
from mvhyper.specialfun import LogValue, gen_pochhammer, mv_beta_ln, mv_gamma_ln, mv_gamma_partition_ln, pochhammer


def test_mv_gamma_examples():
    assert mv_gamma_ln(1, 3.0) == LogValue(pytest.approx(math.log(2.0), rel=1e-15), 1)
    assert mv_gamma_ln(2, 2.0).log_magnitude == pytest.approx(math.log(math.pi / 2), rel=1e-14)
    # frozen from a 30-digit product of scalar gammas
    assert mv_gamma_ln(3, 2.7).log_magnitude == pytest.approx(2.153055151812777933846560766, rel=1e-14)


def test_mv_gamma_bound():
    with pytest.raises(DomainError, match="a > 1"):
        mv_gamma_ln(3, 1.0)


def test_mv_gamma_partition_examples():
    assert mv_gamma_partition_ln(2, 3.0, Partition(())) == mv_gamma_ln(2, 3.0)
    assert mv_gamma_partition_ln(2, 3.0, Partition(()), negate=True).log_magnitude == pytest.approx(
        mv_gamma_ln(2, 3.0).log_magnitude)
    assert mv_gamma_partition_ln(1, 3.0, Partition((2,))).value == pytest.approx(24.0, rel=1e-14)
    neg = mv_gamma_partition_ln(1, 4.0, Partition((2,)), negate=True)
    assert neg.value == pytest.approx(1.0, rel=1e-14)
    # (-1)^k Gamma(a) / (-a + 1)_k with a = 4, k = 2: 6 / ((-3)(-2)) = 1
    assert neg.value == pytest.approx(6.0 / pochhammer(-3.0, 2), rel=1e-14)


def test_negated_bound():
    with pytest.raises(DomainError):
        mv_gamma_partition_ln(1, 2.0, Partition((2,)), negate=True)


def test_gen_pochhammer_examples():
    assert gen_pochhammer(2, 2.5, Partition(())) == 1
    assert gen_pochhammer(1, 2.5, Partition((1,))) == 2.5
    assert gen_pochhammer(2, 3.0, Partition((2, 1))) == 30.0
    # signed factors are fine
    assert gen_pochhammer(1, -1.5, Partition((2,))) == pytest.approx(-1.5 * -0.5)
    assert gen_pochhammer(1, -1.0, Partition((2,))) == 0


def test_mv_beta_examples():
    assert mv_beta_ln(1, 2, 3).log_magnitude == pytest.approx(math.log(1 / 12), rel=1e-14)
    assert mv_beta_ln(2, 2, 2.7) == mv_beta_ln(2, 2.7, 2)
    expected = 2 * mv_gamma_ln(2, 1.5).log_magnitude - mv_gamma_ln(2, 3.0).log_magnitude
    assert mv_beta_ln(2, 1.5, 1.5).log_magnitude == pytest.approx(expected, rel=1e-14)
    with pytest.raises(DomainError):
        mv_beta_ln(2, 0.5, 2)


def test_logvalue_arithmetic():
    a, b = LogValue.from_float(-3.0), LogValue.from_float(0.5)
    assert (a * b).value == pytest.approx(-1.5)
    assert (a / b).value == pytest.approx(-6.0)
    assert LogValue.from_float(0.0).sign == 0


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_partition_gamma_is_pochhammer_times_gamma(m):
    for a in (m / 2 + 0.3, float(m), 2.0 * m):
        base = mv_gamma_ln(m, a)
        for k in range(9):
            for kappa in enumerate_partitions(k, m):
                lhs = mv_gamma_partition_ln(m, a, kappa)
                poch = gen_pochhammer(m, a, kappa)
                assert lhs.sign == 1
                assert math.exp(lhs.log_magnitude - base.log_magnitude) == pytest.approx(poch, rel=1e-12)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_negated_product_form_matches_pochhammer_form(m):
    for k in range(7):
        for kappa in enumerate_partitions(k, m):
            a = (m - 1) / 2 + kappa[0] + 0.37 if kappa else m / 2 + 0.37
            lhs = mv_gamma_partition_ln(m, a, kappa, negate=True)
            denom = gen_pochhammer(m, -a + (m + 1) / 2, kappa)
            rhs = (-1) ** k * mv_gamma_ln(m, a).value / denom
            assert lhs.sign * math.exp(lhs.log_magnitude) == pytest.approx(rhs, rel=1e-11)


def test_pole_reported():
    # a = 3 with kappa = (3) puts a scalar gamma at zero
    with pytest.raises((PoleError, DomainError)):
        mv_gamma_partition_ln(1, 3.0, Partition((3,)), negate=True)


@given(st.floats(0.1, 30.0))
def test_m1_is_scalar_gamma(a):
    assert mv_gamma_ln(1, a).log_magnitude == pytest.approx(math.lgamma(a), rel=1e-14, abs=1e-14)


@given(st.integers(1, 5), st.floats(0.0, 20.0), st.floats(0.0, 20.0))
def test_multigammaln_and_beta_symmetry(m, da, db):
    a, b = (m - 1) / 2 + 0.05 + da, (m - 1) / 2 + 0.05 + db
    assert mv_gamma_ln(m, a).log_magnitude == pytest.approx(special.multigammaln(a, m), rel=1e-12, abs=1e-12)
    assert mv_beta_ln(m, a, b).log_magnitude == pytest.approx(mv_beta_ln(m, b, a).log_magnitude, rel=1e-13, abs=1e-13)
    if m == 1:
        assert mv_beta_ln(1, a, b).log_magnitude == pytest.approx(special.betaln(a, b), rel=1e-13, abs=1e-13)
