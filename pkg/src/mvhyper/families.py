"""Distribution families as scikit-learn style estimators.

Each class stores its constructor arguments untouched (``get_params`` /
``set_params`` work as usual).  ``fit`` validates them, builds the derived
objects and returns ``self``; no parameters are estimated from data.
``score_samples`` gives log-densities and ``sample`` draws, where an exact
sampler exists.

>>> from mvhyper.families import MatricvariateT
>>> t = MatricvariateT(nu=1.0, sigma=[[1.0]], theta=[[1.0]]).fit()
>>> round(float(t.logpdf([[0.0]])), 6)
-1.14473
"""

from __future__ import annotations

import inspect
from typing import Any, Dict, Optional

import numpy as np
from sklearn.base import BaseEstimator, DensityMixin

from . import densities as D
from . import samplers as S
from .errors import DimensionError, DomainError, UnsupportedCaseError
from .hypergeom import HypergeomSpec, TruncationPolicy
from .matrixops import EllipticalParams, SpdMatrix, symmetrize


def _matrix(value, name) -> np.ndarray:
    try:
        return np.atleast_2d(np.asarray(value, dtype=float))
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a numeric matrix") from None


class _Family(DensityMixin, BaseEstimator):
    support = "matrix"  # "matrix" for X (n x m), "spd" for SPD-valued variables

    def fit(self, X=None, y=None):
        """Validate the parameters; ``X`` and ``y`` are ignored."""
        self._setup()
        self.n_features_in_ = int(np.prod(self.shape_))
        return self

    def _ensure_fit(self):
        if not hasattr(self, "shape_"):
            self.fit()

    # subclasses fill these in
    def _setup(self):
        raise NotImplementedError

    def _logpdf(self, X) -> float:
        raise NotImplementedError

    def _sample(self, rng, size):
        raise UnsupportedCaseError(f"{type(self).__name__} has no exact sampler for these parameters")

    def _points(self, X, batch: bool) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        size = int(np.prod(self.shape_))
        ok = X.shape == self.shape_ or X.ndim <= 1 and X.size == size
        if batch:
            ok = X.shape[1:] == self.shape_ or X.ndim == 2 and X.shape[1] == size
        if not ok:
            want = ("(N, %s)" if batch else "%s") % (self.shape_,)
            raise DimensionError(f"points have shape {X.shape}; expected {want}")
        return X.reshape(((-1,) if batch else ()) + self.shape_)

    def logpdf(self, X) -> float:
        self._ensure_fit()
        return float(self._logpdf(self._points(X, batch=False)))

    def score_samples(self, X) -> np.ndarray:
        """Log-density of each point; ``X`` has shape ``(N, *shape_)`` or ``(N, n*m)``."""
        self._ensure_fit()
        return np.array([self._logpdf(x) for x in self._points(X, batch=True)])

    def score(self, X, y=None) -> float:
        return float(np.sum(self.score_samples(X)))

    def sample(self, n_samples: int = 1, random_state=None) -> np.ndarray:
        self._ensure_fit()
        if random_state is None or isinstance(random_state, (int, np.integer)):
            rng = S.RngStream(0 if random_state is None else int(random_state))
        else:
            rng = random_state
        return self._sample(rng, int(n_samples))

    def to_spec(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"family": type(self).__name__}
        for k, v in self.get_params().items():
            if isinstance(v, np.ndarray):
                v = v.tolist()
            elif isinstance(v, tuple):
                v = list(v)
            out[k] = v
        return out

    # shared pieces ---------------------------------------------------

    def _policy(self) -> TruncationPolicy:
        return TruncationPolicy(max_degree=int(self.max_degree), tol=float(self.tol),
                                accelerate=bool(self.accelerate))

    def _hspec(self) -> HypergeomSpec:
        return HypergeomSpec(tuple(self.upper), tuple(self.lower), self._policy())

    def _elliptical(self) -> EllipticalParams:
        sigma = _matrix(self.sigma, "sigma")
        theta = _matrix(self.theta, "theta")
        mu = np.zeros((theta.shape[0], sigma.shape[0])) if self.mu is None else _matrix(self.mu, "mu")
        return EllipticalParams(mu, sigma, theta)


class MatrixNormal(_Family):
    def __init__(self, mu=None, sigma=((1.0,),), theta=((1.0,),)):
        self.mu, self.sigma, self.theta = mu, sigma, theta

    def _setup(self):
        self.params_ = self._elliptical()
        self.shape_ = self.params_.mu.shape

    def _logpdf(self, X):
        return D.logpdf_matrix_normal(self.params_, X)

    def _sample(self, rng, size):
        return S.sample_matrix_normal(self.params_, rng, size)


class MatricvariateT(_Family):
    def __init__(self, nu=1.0, mu=None, sigma=((1.0,),), theta=((1.0,),)):
        self.nu, self.mu, self.sigma, self.theta = nu, mu, sigma, theta

    def _setup(self):
        self.params_ = self._elliptical()
        D._bound("nu", float(self.nu), self.params_.m - 1)
        self.shape_ = self.params_.mu.shape

    def _logpdf(self, X):
        return D.logpdf_matricvariate_t(float(self.nu), self.params_, X)

    def _sample(self, rng, size):
        return S.sample_matricvariate_t(float(self.nu), self.params_, rng, size)


class _GammaType(_Family):
    support = "spd"
    inverted = False

    def __init__(self, a=1.0, xi=((1.0,),), upsilon=None, upper=(), lower=(),
                 max_degree=30, tol=1e-10, accelerate=True):
        self.a, self.xi, self.upsilon = a, xi, upsilon
        self.upper, self.lower = upper, lower
        self.max_degree, self.tol, self.accelerate = max_degree, tol, accelerate

    def _setup(self):
        self.xi_ = SpdMatrix(_matrix(self.xi, "xi"), "Xi")
        m = self.xi_.dim
        self.upsilon_ = np.zeros((m, m)) if self.upsilon is None else D._sym(self.upsilon, m, "Upsilon")
        self.spec_ = self._hspec()
        D.check_hg_gamma(float(self.a), self.xi_, self.upsilon_, self.spec_)
        self.shape_ = (m, m)

    def _logpdf(self, X):
        fn = D.logpdf_hg_gamma_inv if self.inverted else D.logpdf_hg_gamma
        return fn(float(self.a), self.xi_, self.upsilon_, self.spec_, X)

    def _sample(self, rng, size):
        if np.any(self.upsilon_):
            return super()._sample(rng, size)
        draw = S.sample_inv_hg_gamma_special if self.inverted else S.sample_gamma_matrix
        return draw(float(self.a), self.xi_, rng, size)


class HgGamma(_GammaType):
    """Hypergeometric gamma-type law of ``Y = P^{-1}``."""


class HgGammaInv(_GammaType):
    """Inverted hypergeometric gamma-type law of ``P``."""

    inverted = True


class _Beta2Type(_Family):
    support = "spd"
    inverted = False

    def __init__(self, a=1.0, b=1.0, xi=None, upper=(), lower=(), m=None,
                 max_degree=30, tol=1e-10, accelerate=True):
        self.a, self.b, self.xi = a, b, xi
        self.upper, self.lower, self.m = upper, lower, m
        self.max_degree, self.tol, self.accelerate = max_degree, tol, accelerate

    def _setup(self):
        if self.xi is None:
            m = 1 if self.m is None else int(self.m)
            xi = np.zeros((m, m))
        else:
            xi = symmetrize(_matrix(self.xi, "xi"))
        if self.m is not None and xi.shape[0] != int(self.m):
            raise DomainError(f"xi is {xi.shape[0]}x{xi.shape[0]} but m = {self.m}")
        self.xi_ = xi
        self.spec_ = self._hspec()
        D.check_hg_beta2(float(self.a), float(self.b), xi, self.spec_)
        self.shape_ = xi.shape

    def _logpdf(self, X):
        fn = D.logpdf_hg_beta2_inv if self.inverted else D.logpdf_hg_beta2
        return fn(float(self.a), float(self.b), self.xi_, self.spec_, X)

    def _sample(self, rng, size):
        if np.any(self.xi_):
            return super()._sample(rng, size)
        m = self.xi_.shape[0]
        if self.inverted:
            return S.sample_inv_hg_beta2_special(float(self.a), float(self.b), m, rng, size)
        return S.sample_beta2(float(self.a), float(self.b), m, rng, size)


class HgBeta2(_Beta2Type):
    """Hypergeometric beta type II law (kernel truncated at the policy degree)."""


class HgBeta2Inv(_Beta2Type):
    """Inverted hypergeometric beta type II law."""

    inverted = True


class _GenType(_Family):
    support = "spd"
    inverted = False

    def __init__(self, form="confluent", alpha=1.0, a=None, b=2.0, c=3.0, xi=((1.0,),),
                 max_degree=30, tol=1e-10, accelerate=True):
        self.form, self.alpha, self.a, self.b, self.c, self.xi = form, alpha, a, b, c, xi
        self.max_degree, self.tol, self.accelerate = max_degree, tol, accelerate

    def _args(self):
        a = float("nan") if self.a is None else float(self.a)
        return self.form, float(self.alpha), a, float(self.b), float(self.c)

    def _setup(self):
        if self.form == "gauss" and self.a is None:
            raise DomainError("the gauss form needs the parameter a")
        self.xi_ = SpdMatrix(_matrix(self.xi, "xi"), "Xi")
        D.check_gen_hg(*self._args(), self.xi_.dim)
        self.policy_ = self._policy()
        self.shape_ = (self.xi_.dim, self.xi_.dim)

    def _logpdf(self, X):
        fn = D.logpdf_gen_hg_inv if self.inverted else D.logpdf_gen_hg
        return fn(*self._args(), self.xi_, X, self.policy_)


class GenHg(_GenType):
    """Generalised hypergeometric law (``gauss`` or ``confluent`` kernel)."""


class GenHgInv(_GenType):
    inverted = True


class CompoundThm1(_Family):
    """Matrix normal compounded with the inverted hypergeometric gamma-type law."""

    def __init__(self, a=1.0, xi=((1.0,),), upsilon=None, upper=(), lower=(), mu=None,
                 sigma=((1.0,),), theta=((1.0,),), max_degree=30, tol=1e-10, accelerate=True):
        self.a, self.xi, self.upsilon, self.upper, self.lower = a, xi, upsilon, upper, lower
        self.mu, self.sigma, self.theta = mu, sigma, theta
        self.max_degree, self.tol, self.accelerate = max_degree, tol, accelerate

    def _setup(self):
        self.params_ = self._elliptical()
        m = self.params_.m
        self.xi_ = SpdMatrix(_matrix(self.xi, "xi"), "Xi")
        if self.xi_.dim != m:
            raise DomainError(f"xi must be {m}x{m}")
        self.upsilon_ = np.zeros((m, m)) if self.upsilon is None else D._sym(self.upsilon, m, "Upsilon")
        self.spec_ = self._hspec()
        D.check_hg_gamma(float(self.a), self.xi_, self.upsilon_, self.spec_)
        self.shape_ = self.params_.mu.shape

    def _logpdf(self, X):
        return D.logpdf_compound_thm1(float(self.a), self.xi_, self.upsilon_, self.spec_, self.params_, X)

    def _sample(self, rng, size):
        if np.any(self.upsilon_):
            return super()._sample(rng, size)
        return S.sample_compound_thm1(float(self.a), self.xi_, self.params_, rng, size)


class CompoundThm2(_Family):
    """Matrix normal compounded with the inverted hypergeometric beta type II law."""

    def __init__(self, a=1.0, b=2.0, xi=None, upper=(), lower=(), mu=None,
                 sigma=((1.0,),), theta=((1.0,),), max_degree=30, tol=1e-10, accelerate=True):
        self.a, self.b, self.xi, self.upper, self.lower = a, b, xi, upper, lower
        self.mu, self.sigma, self.theta = mu, sigma, theta
        self.max_degree, self.tol, self.accelerate = max_degree, tol, accelerate

    def _setup(self):
        self.params_ = self._elliptical()
        m, n = self.params_.m, self.params_.n
        self.xi_ = np.zeros((m, m)) if self.xi is None else D._sym(self.xi, m, "Xi")
        self.spec_ = self._hspec()
        D.check_thm2(float(self.a), float(self.b), self.xi_, self.spec_, m, n)
        self.shape_ = self.params_.mu.shape

    def _logpdf(self, X):
        return D.logpdf_compound_thm2(float(self.a), float(self.b), self.xi_, self.spec_, self.params_, X)

    def _sample(self, rng, size):
        if np.any(self.xi_):
            return super()._sample(rng, size)
        return S.sample_compound_thm2(float(self.a), float(self.b), self.params_, rng, size)


class CompoundThm3(_Family):
    """Matrix normal compounded with the inverted generalised hypergeometric law."""

    def __init__(self, form="confluent", alpha=1.0, a=None, b=2.0, c=3.0, xi=((1.0,),), mu=None,
                 sigma=((1.0,),), theta=((1.0,),), method="auto", max_degree=30, tol=1e-10,
                 accelerate=True):
        self.form, self.alpha, self.a, self.b, self.c, self.xi = form, alpha, a, b, c, xi
        self.mu, self.sigma, self.theta, self.method = mu, sigma, theta, method
        self.max_degree, self.tol, self.accelerate = max_degree, tol, accelerate

    _args = _GenType._args

    def _setup(self):
        if self.form == "gauss" and self.a is None:
            raise DomainError("the gauss form needs the parameter a")
        self.params_ = self._elliptical()
        self.xi_ = SpdMatrix(_matrix(self.xi, "xi"), "Xi")
        if self.xi_.dim != self.params_.m:
            raise DomainError(f"xi must be {self.params_.m}x{self.params_.m}")
        D.check_thm3(*self._args(), self.params_.m)
        self.policy_ = self._policy()
        self.shape_ = self.params_.mu.shape

    def _logpdf(self, X):
        return D.logpdf_compound_thm3(*self._args(), self.xi_, self.params_, X,
                                      method=self.method, truncation=self.policy_)


class CompoundThm4(_Family):
    """Matricvariate T compounded with the central inverted beta type II law."""

    def __init__(self, nu=1.0, a=1.0, b=2.0, mu=None, sigma=((1.0,),), theta=((1.0,),),
                 method="auto", max_degree=30, tol=1e-10, accelerate=True):
        self.nu, self.a, self.b = nu, a, b
        self.mu, self.sigma, self.theta, self.method = mu, sigma, theta, method
        self.max_degree, self.tol, self.accelerate = max_degree, tol, accelerate

    def _setup(self):
        self.params_ = self._elliptical()
        D.check_thm4(float(self.nu), float(self.a), float(self.b), self.params_.m, self.params_.n)
        if self.method not in D.THM4_METHODS:
            raise DomainError(f"method must be one of {D.THM4_METHODS}")
        self.policy_ = self._policy()
        self.shape_ = self.params_.mu.shape

    def _logpdf(self, X):
        return D.logpdf_compound_thm4(float(self.nu), float(self.a), float(self.b), self.params_, X,
                                      method=self.method, truncation=self.policy_)

    def _sample(self, rng, size):
        return S.sample_compound_thm4(float(self.nu), float(self.a), float(self.b), self.params_, rng, size)


class ScaleMixThm5(_Family):
    """Normal scale mixture with a scalar inverted hypergeometric gamma-type law."""

    def __init__(self, a=1.0, xi=1.0, upsilon=0.0, upper=(), lower=(), mu=None,
                 sigma=((1.0,),), theta=((1.0,),), max_degree=30, tol=1e-10, accelerate=True):
        self.a, self.xi, self.upsilon, self.upper, self.lower = a, xi, upsilon, upper, lower
        self.mu, self.sigma, self.theta = mu, sigma, theta
        self.max_degree, self.tol, self.accelerate = max_degree, tol, accelerate

    def _setup(self):
        self.params_ = self._elliptical()
        self.spec_ = self._hspec()
        D._bound("a", float(self.a), 0)
        D._bound("xi", float(self.xi), 0)
        D._require(float(self.upsilon) >= 0, "upsilon must be non-negative")
        D._require(self.spec_.p <= self.spec_.q, "need p <= q for an integrable kernel")
        self.shape_ = self.params_.mu.shape

    def _logpdf(self, X):
        return D.logpdf_scale_mixture_thm5(float(self.a), float(self.xi), float(self.upsilon),
                                           self.spec_, self.params_, X)

    def _sample(self, rng, size):
        if float(self.upsilon) != 0:
            return super()._sample(rng, size)
        return S.sample_scale_mixture_thm5(float(self.a), float(self.xi), self.params_, rng, size)


FAMILIES = {
    cls.__name__: cls
    for cls in (
        MatrixNormal, MatricvariateT, HgGamma, HgGammaInv, HgBeta2, HgBeta2Inv, GenHg, GenHgInv,
        CompoundThm1, CompoundThm2, CompoundThm3, CompoundThm4, ScaleMixThm5,
    )
}


def parameter_names(family: str):
    cls = FAMILIES[family]
    return [p for p in inspect.signature(cls.__init__).parameters if p != "self"]


def from_spec(spec: Dict[str, Any]) -> _Family:
    """Build and fit a family from a JSON-style dict with a ``family`` tag.

    Unknown keys are an error.
    """
    if not isinstance(spec, dict):
        raise DomainError("a distribution spec must be a JSON object")
    spec = dict(spec)
    tag = spec.pop("family", None)
    if tag not in FAMILIES:
        raise DomainError(f"unknown family {tag!r}; expected one of {sorted(FAMILIES)}")
    allowed = parameter_names(tag)
    unknown = sorted(set(spec) - set(allowed))
    if unknown:
        raise DomainError(f"unknown key(s) for {tag}: {', '.join(unknown)}; allowed: {', '.join(allowed)}")
    for key in ("upper", "lower"):
        if key in spec:
            spec[key] = tuple(spec[key])
    return FAMILIES[tag](**spec).fit()


def family_of(estimator) -> Optional[str]:
    name = type(estimator).__name__
    return name if name in FAMILIES else None


_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}
_NUMBERS = {"type": "array", "items": {"type": "number"}}
_PARAM_SCHEMA = {
    "mu": _MATRIX, "sigma": _MATRIX, "theta": _MATRIX, "xi": _MATRIX, "upsilon": _MATRIX,
    "upper": _NUMBERS, "lower": _NUMBERS,
    "nu": {"type": "number"}, "a": {"type": "number"}, "b": {"type": "number"},
    "c": {"type": "number"}, "alpha": {"type": "number"},
    "m": {"type": "integer", "minimum": 1},
    "form": {"enum": ["gauss", "confluent"]},
    "max_degree": {"type": "integer", "minimum": 0},
    "tol": {"type": "number", "exclusiveMinimum": 0},
    "accelerate": {"type": "boolean"},
}
_METHOD_SCHEMA = {
    "CompoundThm3": {"enum": ["auto", "series", "quadrature"]},
    "CompoundThm4": {"enum": ["auto", "direct", "euler", "pfaff"]},
}
_SCALAR_SCALE = {"type": "number", "exclusiveMinimum": 0}


def spec_schema() -> Dict[str, Any]:
    """JSON schema of the distribution spec files read by ``from_spec``."""
    variants = []
    for tag, cls in FAMILIES.items():
        props: Dict[str, Any] = {"family": {"const": tag}}
        for name in parameter_names(tag):
            if name == "method":
                props[name] = _METHOD_SCHEMA[tag]
            elif cls is ScaleMixThm5 and name in ("xi", "upsilon"):
                props[name] = _SCALAR_SCALE if name == "xi" else {"type": "number", "minimum": 0}
            else:
                props[name] = _PARAM_SCHEMA[name]
        variants.append({"title": tag, "type": "object", "properties": props,
                         "required": ["family"], "additionalProperties": False})
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "mvhyper distribution spec",
        "oneOf": variants,
    }
