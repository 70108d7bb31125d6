import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import ortho_group

from mvhyper.errors import DimensionError, DomainError
from mvhyper.matrixops import (
    EllipticalParams,
    SpdMatrix,
    eigenvalues,
    logdet,
    parse_matrix,
    product_eigenvalues,
    quad_form,
    read_matrix,
    spd_inverse,
    spd_sqrt,
)


def _random_spd(rng, m):
    a = rng.standard_normal((m, m))
    return a @ a.T + m * np.eye(m)


def test_quad_form_examples():
    p = EllipticalParams.standard(2, 3)
    assert np.array_equal(quad_form(p, np.zeros((2, 3))), np.zeros((3, 3)))
    assert quad_form(EllipticalParams([[0.0]], [[4.0]], [[1.0]]), [[2.0]])[0, 0] == pytest.approx(1.0)


def test_quad_form_eigenvalues_match_unsymmetrized_product():
    rng = np.random.default_rng(1)
    n, m = 3, 2
    sigma, theta = _random_spd(rng, m), _random_spd(rng, n)
    mu = rng.standard_normal((n, m))
    X = mu + rng.standard_normal((n, m))
    D = X - mu
    direct = np.linalg.inv(sigma) @ D.T @ np.linalg.inv(theta) @ D
    got = np.linalg.eigvalsh(quad_form(EllipticalParams(mu, sigma, theta), X))
    np.testing.assert_allclose(np.sort(got), np.sort(np.linalg.eigvals(direct).real), rtol=1e-10)


def test_shape_errors():
    with pytest.raises(DimensionError):
        EllipticalParams(np.zeros((2, 3)), np.eye(2), np.eye(2))
    with pytest.raises(DimensionError):
        quad_form(EllipticalParams.standard(2, 2), np.zeros((3, 2)))


def test_spd_roots_and_inverse():
    assert np.allclose(spd_sqrt(np.eye(3)).array, np.eye(3))
    assert np.allclose(spd_sqrt(np.diag([4.0, 9.0])).array, np.diag([2.0, 3.0]))
    inv = spd_inverse(np.eye(3))
    assert np.array_equal(inv.array, np.eye(3))
    assert logdet(np.eye(3)) == 0.0
    assert list(eigenvalues(np.eye(3))) == [1.0, 1.0, 1.0]
    assert logdet(np.diag([2.0, 0.5])) == pytest.approx(0.0, abs=1e-15)


def test_random_4x4_consistency():
    rng = np.random.default_rng(4)
    a = SpdMatrix(_random_spd(rng, 4))
    np.testing.assert_allclose(a.array @ a.inverse, np.eye(4), atol=1e-10)
    np.testing.assert_allclose(a.sqrt @ a.sqrt, a.array, rtol=1e-10)
    assert a.logdet == pytest.approx(np.log(a.eigenvalues).sum(), rel=1e-10)
    assert np.all(np.diff(a.eigenvalues) <= 0)


def test_non_spd_reports_smallest_eigenvalue():
    with pytest.raises(DomainError, match="smallest eigenvalue -1"):
        SpdMatrix(np.diag([1.0, -1.0]), "Sigma")


def test_matrix_text_forms(tmp_path):
    assert np.array_equal(parse_matrix("[[1, 2], [3, 4]]"), [[1, 2], [3, 4]])
    assert np.array_equal(parse_matrix("# c\n1 2\n3 4\n"), [[1, 2], [3, 4]])
    f = tmp_path / "m.txt"
    f.write_text("1.5\n")
    assert read_matrix(f).shape == (1, 1)


@given(st.integers(0, 2 ** 31))
def test_trace_powers_commute(seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((3, 3))
    a = (a + a.T) / 2
    b = _random_spd(rng, 3)
    for j in range(1, 5):
        lhs = np.trace(np.linalg.matrix_power(a @ b, j))
        rhs = np.trace(np.linalg.matrix_power(b @ a, j))
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10 * np.abs(np.linalg.eigvals(a @ b)).max() ** j)
    assert np.allclose(np.sort(product_eigenvalues(a, b)), np.sort(np.linalg.eigvals(a @ b).real), atol=1e-9)


@given(st.integers(0, 2 ** 31))
def test_left_spherical_invariance(seed):
    rng = np.random.default_rng(seed)
    n, m = 3, 2
    p = EllipticalParams.standard(n, m)
    X = rng.standard_normal((n, m))
    Q, R = ortho_group.rvs(n, random_state=rng), ortho_group.rvs(m, random_state=rng)
    e1 = np.linalg.eigvalsh(quad_form(p, X))
    e2 = np.linalg.eigvalsh(quad_form(p, Q @ X @ R.T))
    np.testing.assert_allclose(e1, e2, atol=1e-9 * max(1.0, e1.max()))
