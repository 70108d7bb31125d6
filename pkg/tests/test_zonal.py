from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import ortho_group

from mvhyper.errors import ResourceError
from mvhyper.partitions import Partition, enumerate_partitions
from mvhyper.zonal import build_zonal_table, dump_table, load_table, zonal_eval


def _power_sums(x):
    return [np.sum(np.asarray(x) ** j) for j in range(4)]


def test_degree_zero_and_one():
    t = build_zonal_table(1, 3)
    assert zonal_eval(t, (), [0.3, -2.0, 5.0]) == 1.0
    assert zonal_eval(t, (1,), [1.0, 2.0]) == 3.0


def test_degree_two_closed_forms():
    t = build_zonal_table(2, 2)
    x = [0.7, -1.3]
    p1, p2 = sum(x), sum(v * v for v in x)
    assert zonal_eval(t, (2,), x) == pytest.approx((p1 ** 2 + 2 * p2) / 3, rel=1e-14)
    assert zonal_eval(t, (1, 1), x) == pytest.approx(2 * (p1 ** 2 - p2) / 3, rel=1e-14)
    assert zonal_eval(t, (2,), [1.0, 1.0]) == pytest.approx(8 / 3)
    assert zonal_eval(t, (1, 1), [1.0, 1.0]) == pytest.approx(4 / 3)


def test_degree_three_power_sum_oracle():
    # classical table in power sums, independent of the monomial route
    x = [0.4, 1.1, -0.6]
    _, p1, p2, p3 = _power_sums(x)
    t = build_zonal_table(3, 3)
    assert zonal_eval(t, (3,), x) == pytest.approx((p1 ** 3 + 6 * p1 * p2 + 8 * p3) / 15, rel=1e-13)
    assert zonal_eval(t, (2, 1), x) == pytest.approx(3 * (p1 ** 3 + p1 * p2 - 2 * p3) / 5, rel=1e-13)
    assert zonal_eval(t, (1, 1, 1), x) == pytest.approx((p1 ** 3 - 3 * p1 * p2 + 2 * p3) / 3, rel=1e-13)


def test_too_many_parts_is_zero():
    t = build_zonal_table(3, 2)
    assert zonal_eval(t, (2, 1), [1.7]) == 0.0


def test_lookup_and_ceiling_errors():
    t = build_zonal_table(3, 2)
    with pytest.raises(KeyError):
        zonal_eval(t, (4,), [1.0, 2.0])
    with pytest.raises(ResourceError):
        build_zonal_table(41, 2)


def test_exact_coefficients():
    t = build_zonal_table(2, 2)
    assert t.coefficients[Partition((2,))] == {Partition((2,)): Fraction(1), Partition((1, 1)): Fraction(2, 3)}


def test_dump_load_roundtrip(tmp_path):
    t = build_zonal_table(6, 3)
    path = tmp_path / "z.txt"
    dump_table(t, path)
    back = load_table(path)
    assert back.coefficients == t.coefficients
    assert path.read_text().splitlines()[2].startswith("1 | ")


def test_table_cache_dir(tmp_path, monkeypatch):
    from mvhyper import zonal

    monkeypatch.setenv(zonal.TABLE_DIR_ENV, str(tmp_path))
    zonal._build.cache_clear()
    try:
        first = build_zonal_table(5, 2)
        assert (tmp_path / "zonal_K5_m2.txt").exists()
        zonal._build.cache_clear()
        assert build_zonal_table(5, 2).coefficients == first.coefficients
    finally:
        zonal._build.cache_clear()


def test_exact_sum_identity_on_indefinite_argument():
    rng = np.random.default_rng(3)
    t = build_zonal_table(12, 4)
    for _ in range(5):
        a = rng.standard_normal((4, 4))
        eig = np.linalg.eigvalsh((a + a.T) / 2)
        tr = sum(Fraction(float(v)) for v in eig)
        for k in (5, 12):
            assert sum(t.exact_degree_values(k, eig)) == tr ** k


eig_lists = st.integers(1, 4).flatmap(
    lambda m: st.lists(st.floats(-3, 3, allow_subnormal=False), min_size=m, max_size=m))


@given(eig_lists, st.integers(0, 12))
def test_sum_identity_psd(x, k):
    x = np.abs(np.asarray(x))
    t = build_zonal_table(12, 4)
    total = float(np.sum(t.degree_values(k, x)))
    assert total == pytest.approx(np.sum(x) ** k, rel=1e-9, abs=1e-300)


@given(eig_lists, st.integers(0, 8), st.sampled_from([-2.0, 0.5, 10.0]))
def test_homogeneity(x, k, b):
    t = build_zonal_table(8, 4)
    x = np.asarray(x)
    lhs = t.degree_values(k, b * x)
    rhs = b ** k * t.degree_values(k, x)
    scale = b ** k * t.degree_values(k, np.abs(x)).max(initial=0) + 1e-300
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * abs(scale) + 1e-300)


@given(st.integers(0, 2 ** 31))
def test_similarity_invariance(seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((3, 3))
    y = (a + a.T) / 2
    q = ortho_group.rvs(3, random_state=rng)
    e1, e2 = np.linalg.eigvalsh(y), np.linalg.eigvalsh(q.T @ y @ q)
    t = build_zonal_table(6, 3)
    for k in range(7):
        np.testing.assert_allclose(t.degree_values(k, e1), t.degree_values(k, e2), rtol=1e-9, atol=1e-9 * (np.abs(e1).sum() ** k))
        assert np.array_equal(t.degree_values(k, e1), t.degree_values(k, e1.copy()))


@given(st.lists(st.floats(0.01, 5.0), min_size=1, max_size=4))
def test_positive_on_pd(x):
    t = build_zonal_table(10, 4)
    for k in range(11):
        vals = t.degree_values(k, x)
        live = [len(kap) <= len(x) for kap in t.block(k).kappas]
        assert np.all(vals[live] > 0)
        assert np.all(vals[np.logical_not(live)] == 0)
