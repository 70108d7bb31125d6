import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, stats

from mvhyper import densities as D
from mvhyper.errors import DimensionError, DomainError, UnsupportedCaseError
from mvhyper.families import (
    CompoundThm1,
    CompoundThm2,
    CompoundThm3,
    CompoundThm4,
    GenHg,
    GenHgInv,
    HgBeta2,
    HgBeta2Inv,
    HgGamma,
    HgGammaInv,
    MatricvariateT,
    MatrixNormal,
    ScaleMixThm5,
)
from mvhyper.hypergeom import HypergeomSpec
from mvhyper.matrixops import EllipticalParams

EP22 = dict(mu=[[0.2, -0.1], [0.0, 0.4]], sigma=[[1.5, 0.3], [0.3, 0.8]], theta=[[1.0, 0.2], [0.2, 0.7]])


def test_matrix_normal_examples():
    assert MatrixNormal().logpdf([[0.0]]) == pytest.approx(-0.918938533204673, rel=1e-14)
    fam = MatrixNormal(**EP22).fit()
    p = fam.params_
    expected = -2 * math.log(2 * math.pi) - p.sigma.logdet - p.theta.logdet
    assert fam.logpdf(EP22["mu"]) == pytest.approx(expected, rel=1e-14)


def test_matrix_normal_against_kronecker_oracle():
    rng = np.random.default_rng(0)
    mu, sigma, theta = [[0.3, -0.4]], [[1.2, 0.4], [0.4, 0.9]], [[1.7]]
    fam = MatrixNormal(mu=mu, sigma=sigma, theta=theta).fit()
    oracle = stats.multivariate_normal(np.ravel(mu), np.kron(theta, sigma))
    for _ in range(5):
        x = rng.standard_normal((1, 2))
        assert fam.logpdf(x) == pytest.approx(oracle.logpdf(x.ravel()), rel=1e-12)
    # n = 2 rows with row covariance theta: vec by rows gives theta (x) sigma
    fam = MatrixNormal(**EP22).fit()
    oracle = stats.multivariate_normal(np.ravel(EP22["mu"]), np.kron(EP22["theta"], EP22["sigma"]))
    x = rng.standard_normal((2, 2))
    assert fam.logpdf(x) == pytest.approx(oracle.logpdf(x.ravel()), rel=1e-12)


def test_matricvariate_t_examples():
    assert MatricvariateT(nu=1.0).logpdf([[0.0]]) == pytest.approx(-math.log(math.pi), rel=1e-14)
    t5 = MatricvariateT(nu=5.0).fit()
    # 30-digit reference Gamma(3)/(sqrt(pi) Gamma(5/2))
    assert math.exp(t5.logpdf([[0.0]])) == pytest.approx(0.848826363156775124100713404653, rel=1e-14)
    # the (1 + x^2)^-3 kernel is a Student t with 5 dof after x -> x sqrt(5)
    for x in (0.3, 1.7, -4.0):
        assert t5.logpdf([[x]]) == pytest.approx(stats.t(5).logpdf(x * math.sqrt(5)) + 0.5 * math.log(5), rel=1e-12)
    total, _ = integrate.quad(lambda x: math.exp(t5.logpdf([[x]])), -np.inf, np.inf, epsabs=0, epsrel=1e-12)
    assert total == pytest.approx(1.0, rel=1e-9)


def test_matricvariate_t_bound():
    with pytest.raises(DomainError, match="nu must exceed 1"):
        MatricvariateT(nu=0.9, sigma=np.eye(2), theta=[[1.0]]).fit()


def test_inverse_gamma_example():
    assert HgGammaInv(a=1.0, xi=[[1.0]]).logpdf([[1.0]]) == pytest.approx(-1.0, rel=1e-14)
    assert HgGamma(a=1.0, xi=[[1.0]]).logpdf([[1.0]]) == pytest.approx(-1.0, rel=1e-14)


def test_beta2_examples():
    assert HgBeta2(a=2.0, b=3.0, m=1).logpdf([[1.0]]) == pytest.approx(math.log(0.375), rel=1e-14)
    rng = np.random.default_rng(5)
    a = rng.standard_normal((2, 2))
    P = a @ a.T + 0.5 * np.eye(2)
    lhs = HgBeta2Inv(a=1.3, b=2.1, m=2).logpdf(P)
    rhs = HgBeta2(a=2.1, b=1.3, m=2).logpdf(P)
    assert lhs == pytest.approx(rhs, rel=1e-13)


def test_gen_gauss_vanishes_at_origin():
    fam = GenHg(form="gauss", alpha=2.0, a=3.0, b=3.5, c=5.5, xi=np.eye(2)).fit()
    vals = [fam.logpdf(np.eye(2) * s) for s in (1e-1, 1e-3, 1e-6)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < -10


def test_gen_bounds_name_the_violation():
    with pytest.raises(DomainError, match="c - a"):
        GenHg(form="gauss", alpha=1.0, a=3.0, b=2.0, c=3.2, xi=np.eye(2)).fit()
    with pytest.raises(DomainError, match="form"):
        GenHgInv(form="bessel").fit()


def test_thm1_cauchy_reduction():
    fam = CompoundThm1(a=0.5, xi=[[0.5]]).fit()
    assert fam.logpdf([[0.0]]) == pytest.approx(-math.log(math.pi), rel=1e-13)


def test_thm1_mixture_integral_m1():
    # closed form against the N(x | 0, s) mixture over the inverted gamma-type law
    fam = CompoundThm1(a=1.4, xi=[[0.8]]).fit()
    mix = HgGammaInv(a=1.4, xi=[[0.8]]).fit()
    for x in (0.0, 0.7, 2.5):
        f = lambda s: math.exp(stats.norm(0, math.sqrt(s)).logpdf(x) + mix.logpdf([[s]]))
        val, _ = integrate.quad(f, 0, np.inf, epsabs=0, epsrel=1e-12, limit=200)
        assert fam.logpdf([[x]]) == pytest.approx(math.log(val), abs=1e-8)


def test_thm4_at_mu_is_constant():
    nu, a, b = 3.0, 1.5, 3.0
    fam = CompoundThm4(nu=nu, a=a, b=b, **EP22).fit()
    p = fam.params_
    m = n = 2
    const = (D._lg(m, (n + nu) / 2) - m * n / 2 * math.log(math.pi) - D._lg(m, nu / 2) - D._scale_logdet(p)
             + D._lb(m, a + n / 2, b - n / 2) - D._lb(m, a, b))
    assert fam.logpdf(EP22["mu"]) == pytest.approx(const, rel=1e-13)


def test_thm5_scalar_mixture_is_vector_t():
    nu = 3.5
    mu, sigma = [[0.1, -0.3]], [[1.2, 0.4], [0.4, 0.9]]
    fam = ScaleMixThm5(a=nu / 2, xi=nu / 2, mu=mu, sigma=sigma, theta=[[1.0]]).fit()
    oracle = stats.multivariate_t(np.ravel(mu), sigma, df=nu)
    rng = np.random.default_rng(2)
    for _ in range(5):
        x = rng.standard_normal((1, 2))
        assert fam.logpdf(x) == pytest.approx(oracle.logpdf(x.ravel()), rel=1e-10)


def test_thm5_equals_thm1_at_m1():
    spec = HypergeomSpec((), (2.5,))
    params = EllipticalParams([[0.3]], [[1.7]], [[1.0]])
    for x in (-1.0, 0.2, 3.0):
        assert D.logpdf_scale_mixture_thm5(1.2, 0.6, 0.3, spec, params, [[x]]) == \
            D.logpdf_compound_thm1(1.2, [[0.6]], [[0.3]], spec, params, [[x]])


def test_thm3_singular_delta_rejected():
    fam = CompoundThm3(form="confluent", alpha=1.0, b=3.0, c=5.0, xi=np.eye(2),
                       mu=np.zeros((1, 2)), sigma=np.eye(2), theta=[[1.0]])
    with pytest.raises(DomainError, match="singular"):
        fam.fit().logpdf([[0.3, 0.2]])


def test_thm2_bound_uses_degree_surrogate():
    with pytest.raises(DomainError, match="k1"):
        CompoundThm2(a=1.2, b=2.0, xi=[[0.5]], upper=(1.5,), lower=(2.0,), max_degree=4).fit()
    with pytest.raises(UnsupportedCaseError):
        CompoundThm2(a=1.2, b=9.0, xi=np.eye(2) * 0.3, upper=(1.5,), lower=(2.0,), max_degree=4,
                     mu=np.zeros((1, 2)), sigma=np.eye(2), theta=[[1.0]]).fit().logpdf([[0.1, 0.2]])


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        MatrixNormal(**EP22).logpdf(np.zeros((3, 2)))


def test_kernel_overflow_is_an_error():
    with pytest.raises(DomainError, match="too far"):
        MatricvariateT(nu=2.0).logpdf([[1e200]])


def _rescaled(fam, c):
    return type(fam)(**{**fam.get_params(), "sigma": np.asarray(EP22["sigma"]) * c,
                        "theta": np.asarray(EP22["theta"]) / c}).fit()


FAMS = [
    MatrixNormal(**EP22),
    MatricvariateT(nu=2.0, **EP22),
    CompoundThm1(a=1.3, xi=[[0.8, 0.1], [0.1, 0.5]], **EP22),
    ScaleMixThm5(a=1.2, xi=0.7, **EP22),
]


@given(st.sampled_from(range(len(FAMS))), st.sampled_from([0.1, 7.0]),
       st.lists(st.floats(-2, 2), min_size=8, max_size=8))
def test_scale_and_location_invariance(i, c, vals):
    fam = FAMS[i].fit()
    X = np.asarray(EP22["mu"]) + np.reshape(vals[:4], (2, 2))
    V = np.reshape(vals[4:], (2, 2))
    base = fam.logpdf(X)
    assert _rescaled(fam, c).logpdf(X) == pytest.approx(base, abs=1e-9)
    shifted = type(fam)(**{**fam.get_params(), "mu": np.asarray(EP22["mu"]) + V}).fit()
    assert shifted.logpdf(X + V) == pytest.approx(base, abs=1e-9)
