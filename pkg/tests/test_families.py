import json

import numpy as np
import pytest
from sklearn.base import clone

from mvhyper.errors import DomainError, UnsupportedCaseError
from mvhyper.families import FAMILIES, CompoundThm1, GenHg, HgBeta2, MatricvariateT, family_of, from_spec, parameter_names


def test_estimator_protocol():
    t = MatricvariateT(nu=3.0, sigma=[[2.0]])
    assert t.get_params()["nu"] == 3.0
    assert t.fit() is t
    assert t.n_features_in_ == 1
    t2 = clone(t).set_params(nu=4.0).fit()
    assert t2.nu == 4.0 and t.nu == 3.0
    X = np.array([[[0.0]], [[1.0]], [[-2.0]]])
    s = t.score_samples(X)
    assert s.shape == (3,)
    assert t.score(X) == pytest.approx(s.sum())
    assert np.array_equal(t.score_samples(X.reshape(3, 1)), s)


def test_logpdf_fits_lazily():
    assert np.isfinite(HgBeta2(a=2.0, b=3.0, m=1).logpdf([[1.0]]))


def test_sample_shapes_and_seeds():
    fam = CompoundThm1(a=1.5, xi=np.eye(2), mu=np.zeros((3, 2)), sigma=np.eye(2), theta=np.eye(3))
    draws = fam.sample(4, random_state=3)
    assert draws.shape == (4, 3, 2)
    assert np.array_equal(draws, fam.sample(4, random_state=3))


def test_no_sampler_for_general_kernels():
    with pytest.raises(UnsupportedCaseError):
        GenHg(form="confluent", alpha=1.0, b=2.0, c=3.0).sample(3)


def test_spec_roundtrip():
    for name, cls in FAMILIES.items():
        fam = cls()
        spec = json.loads(json.dumps(fam.to_spec()))
        assert spec["family"] == name == family_of(fam)
        assert sorted(k for k in spec if k != "family") == sorted(parameter_names(name))
        back = from_spec(spec)
        assert type(back) is cls


def test_spec_errors():
    with pytest.raises(DomainError, match="unknown family"):
        from_spec({"family": "Wishart"})
    with pytest.raises(DomainError, match="unknown key"):
        from_spec({"family": "MatrixNormal", "sigmaa": [[1.0]]})
    with pytest.raises(DomainError, match="a must exceed 0.5"):
        from_spec({"family": "CompoundThm1", "a": 0.4, "xi": np.eye(2).tolist(),
                   "sigma": np.eye(2).tolist(), "theta": [[1.0]], "mu": [[0.0, 0.0]]})


def test_shipped_spec_schema_matches_code():
    import json
    from pathlib import Path

    from mvhyper.families import parameter_names, spec_schema

    shipped = json.loads((Path(__file__).parents[1] / "docs" / "spec_schema.json").read_text())
    assert shipped == spec_schema()
    for variant in shipped["oneOf"]:
        tag = variant["title"]
        assert set(variant["properties"]) == {"family", *parameter_names(tag)}
