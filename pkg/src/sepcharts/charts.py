"""Coordinate-chart catalog with dual-path evaluation.

Each chart is generated by an ordered product of one-parameter subgroups acting on
the origin. The closed form is the explicit coordinate formula; the group action
is the product of matrix exponentials. Both paths are exposed so they can be
compared.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from . import algebra as A
from . import jets as J
from .algebra import MetricForm, SpaceId
from .exact import QI
from .rng import annulus

INF = math.inf
TWO_PI = 2 * math.pi
S2 = math.sqrt(2.0)
MARGIN = 0.1


class DomainError(ValueError):
    """Parameters outside a chart's domain."""


class CoordinateSingularity(ArithmeticError):
    """Jacobian or metric is singular at the requested point."""


@dataclass(frozen=True)
class ParamSpec:
    """One chart parameter.

    Real parameters carry the stated range [lo, hi] (possibly infinite) and a finite
    sampling window. Complex parameters are sampled from an annulus.
    """

    name: str
    ignorable: bool = False
    lo: float = -INF
    hi: float = INF
    sample: tuple = (-3.0, 3.0)

    def contains(self, v, real: bool, tol: float = 1e-12) -> str | None:
        v = complex(v)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            return f"{self.name} must be finite"
        if real:
            if abs(v.imag) > tol:
                return f"{self.name} must be real"
            if v.real < self.lo - tol or v.real > self.hi + tol:
                return f"{self.name}={v.real:g} outside [{self.lo:g}, {self.hi:g}]"
        return None

    def to_json(self, real: bool) -> dict:
        dom = {"kind": "real", "lo": _jnum(self.lo), "hi": _jnum(self.hi)} if real else \
            {"kind": "complex", "annulus": [0.3, 2.0]}
        return {"name": self.name, "ignorable": self.ignorable, "domain": dom}


def _jnum(x):
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return x


@dataclass(frozen=True)
class ActionStep:
    """Factor exp(factor * param * generator) of the group action."""

    generator: A.AlgebraElement
    param: str
    factor: float = 1.0


@dataclass(frozen=True)
class DomainSample:
    params: tuple
    names: tuple
    avoid_singular: float = MARGIN

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.params))


@dataclass(frozen=True)
class Chart:
    id: str
    space: SpaceId
    metric: MetricForm
    params: tuple
    action: tuple
    closed_form: Callable
    closed_form_str: tuple
    laplacian_id: str | None = None
    figure_ref: str = ""
    chain: tuple = ()
    paper_eq: str = ""
    masa_id: str | None = None
    expected_norm: Callable | None = None
    orbit: str = "generic"
    singular: Callable | None = None
    constants: tuple = ()
    flags: tuple = ()
    printed_action: str = ""
    stub: bool = False
    auxiliary: bool = False

    @property
    def names(self) -> tuple:
        return tuple(p.name for p in self.params)

    @property
    def dim(self) -> int:
        return len(self.params)

    @property
    def is_real(self) -> bool:
        return not self.space.is_complex

    @property
    def ignorable(self) -> tuple:
        return tuple(p.name for p in self.params if p.ignorable)

    def param(self, name: str) -> ParamSpec:
        for p in self.params:
            if p.name == name:
                return p
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"id": self.id, "space": self.space.value, "figure_ref": self.figure_ref,
                "chain": list(self.chain), "metric_form": self.metric.form_id,
                "params": [p.to_json(self.is_real) for p in self.params],
                "closed_form": list(self.closed_form_str),
                "action": [{"generator": s.generator.label, "param": s.param,
                            "factor": s.factor} for s in self.action],
                "printed_action": self.printed_action, "laplacian_id": self.laplacian_id,
                "constants": {k: str(v) for k, v in self.constants},
                "flags": list(self.flags), "stub": self.stub, "paper_eq": self.paper_eq}


# -- parameter handling -------------------------------------------------------------------

def _as_dict(chart: Chart, params) -> dict:
    if isinstance(params, Mapping):
        missing = [n for n in chart.names if n not in params]
        if missing:
            raise DomainError(f"{chart.id}: missing parameters {missing}")
        return {n: params[n] for n in chart.names}
    params = list(params)
    if len(params) != chart.dim:
        raise DomainError(f"{chart.id}: expected {chart.dim} parameters {chart.names}, got {len(params)}")
    return dict(zip(chart.names, params))


def check_domain(chart: Chart, params) -> dict:
    """Return the parameter dict or raise DomainError naming the violated constraint."""
    if chart.stub:
        raise DomainError(f"{chart.id} is a stub without coordinates")
    p = _as_dict(chart, params)
    for spec in chart.params:
        v = p[spec.name]
        msg = spec.contains(J.value(v), chart.is_real)
        if msg:
            raise DomainError(f"{chart.id}: {msg}")
    return p


def singular_margin(chart: Chart, params) -> float:
    """Smallest |value| of the chart's singular-locus functions (inf if none)."""
    if chart.singular is None:
        return INF
    p = _as_dict(chart, params)
    vals = chart.singular({k: complex(J.value(v)) for k, v in p.items()})
    return min((abs(v) for v in vals.values()), default=INF)


# -- evaluation ------------------------------------------------------------------------

def eval_closed_form(chart: Chart, params) -> np.ndarray:
    p = check_domain(chart, params)
    return np.array([complex(x) for x in chart.closed_form({k: complex(v) for k, v in p.items()})])


def closed_form_jets(chart: Chart, params, active: Sequence[str] | None = None) -> list:
    """Closed form evaluated on jets seeded on the active parameters."""
    p = check_domain(chart, params)
    active = list(chart.names) if active is None else list(active)
    n = len(active)
    args = {k: complex(v) for k, v in p.items()}
    for slot, name in enumerate(active):
        args[name] = J.Jet2.variable(args[name], slot, n)
    out = chart.closed_form(args)
    return [o if isinstance(o, J.Jet2) else J.Jet2.constant(o, n) for o in out]


def group_matrix(chart: Chart, params) -> np.ndarray:
    p = check_domain(chart, params)
    size = chart.metric.n + 1
    g = np.eye(size, dtype=complex)
    for step in chart.action:
        g = g @ A.one_param_exp(step.generator, step.factor * complex(p[step.param]))
    return g


def eval_group_action(chart: Chart, params) -> np.ndarray:
    g = group_matrix(chart, params)
    origin = np.zeros(len(g), complex)
    origin[-1] = 1.0
    return (g @ origin)[:-1]


def jacobian(chart: Chart, params) -> np.ndarray:
    """d x_i / d u_j by first-order jets through the closed form."""
    return np.array([o.grad for o in closed_form_jets(chart, params)])


def induced_metric(chart: Chart, params, cond_limit: float = 1e12) -> np.ndarray:
    """g = J^T K J in chart coordinates."""
    Jm = jacobian(chart, params)
    K = chart.metric.to_numpy()
    g = Jm.T @ K @ Jm
    if _singular(g, cond_limit):
        raise CoordinateSingularity(f"{chart.id}: coordinate singularity at {params}")
    return g


def _singular(g: np.ndarray, cond_limit: float) -> bool:
    s = np.linalg.svd(g, compute_uv=False)
    return s[-1] == 0 or s[0] / s[-1] > cond_limit


def metric_jets(chart: Chart, params) -> tuple[np.ndarray, np.ndarray]:
    """Induced metric g and its first derivatives dg[k] = d g / d u_k.

    Uses the second-order jets of the closed form:
    d_k g_ij = sum_ab K_ab (H^a_ik J^b_j + J^a_i H^b_jk).
    """
    outs = closed_form_jets(chart, params)
    Jm = np.array([o.grad for o in outs])
    H = np.array([o.hess for o in outs])
    K = chart.metric.to_numpy()
    g = Jm.T @ K @ Jm
    # T[k, i, j] = sum_ab K_ab H[a, i, k] J[b, j]
    KJ = K @ Jm
    T = np.einsum("aik,aj->kij", H, KJ)
    dg = T + np.transpose(T, (0, 2, 1))
    return g, dg


def norm_invariant(chart: Chart, params) -> complex:
    x = eval_closed_form(chart, params)
    return complex(x @ chart.metric.to_numpy() @ x)


def generator_field_rank(masa: A.Masa, point, tol: float = 1e-10) -> int:
    """Numeric rank of the generator vector fields X x + alpha at a point."""
    x = np.append(np.asarray(point, complex), 1.0)
    vecs = np.array([(g.to_numpy() @ x)[:-1] for g in masa.generators])
    s = np.linalg.svd(vecs, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


# -- sampling -----------------------------------------------------------------------------

def sample_params(chart: Chart, rng: np.random.Generator, margin: float = MARGIN,
                  max_tries: int = 10000) -> DomainSample:
    """Random point in the chart domain at least ``margin`` from singular loci."""
    for _ in range(max_tries):
        vals = []
        for spec in chart.params:
            if chart.is_real:
                vals.append(complex(rng.uniform(*spec.sample)))
            else:
                vals.append(annulus(rng))
        p = dict(zip(chart.names, vals))
        if singular_margin(chart, p) >= margin:
            return DomainSample(tuple(vals), chart.names, margin)
    raise RuntimeError(f"{chart.id}: could not sample away from singular loci")


def samples(chart: Chart, rng: np.random.Generator, n: int, margin: float = MARGIN) -> list[DomainSample]:
    return [sample_params(chart, rng, margin) for _ in range(n)]


# -- reality -------------------------------------------------------------------------------

@dataclass(frozen=True)
class RealityReport:
    chart_id: str
    samples: int
    max_imag: float
    max_norm_error: float
    sign_ok: bool
    passed: bool

    def to_json(self) -> dict:
        return {"chart_id": self.chart_id, "samples": self.samples, "max_imag": self.max_imag,
                "max_norm_error": self.max_norm_error, "sign_ok": self.sign_ok, "pass": self.passed}


def reality_check(chart: Chart, n_samples: int = 100, rng: np.random.Generator | None = None,
                  tol: float = 1e-12) -> RealityReport:
    """Sample the real ranges; coordinates must be real and the K-norm must match."""
    if not chart.is_real:
        raise ValueError(f"{chart.id} is not a real-form chart")
    rng = rng if rng is not None else np.random.default_rng(0)
    max_imag = 0.0
    max_err = 0.0
    sign_ok = True
    for _ in range(n_samples):
        s = sample_params(chart, rng)
        x = eval_closed_form(chart, s.params)
        scale = 1.0 + float(np.max(np.abs(x)))
        max_imag = max(max_imag, float(np.max(np.abs(x.imag))) / scale)
        if chart.expected_norm is not None:
            nrm = norm_invariant(chart, s.params)
            expect = complex(chart.expected_norm(s.as_dict()))
            max_err = max(max_err, abs(nrm - expect) / (1.0 + abs(expect)))
            if chart.orbit == "sphere" and not nrm.real > 0:
                sign_ok = False
            if chart.orbit == "hyperboloid" and not nrm.real < 0:
                sign_ok = False
    passed = max_imag <= tol and max_err <= 1e-10 and sign_ok
    return RealityReport(chart.id, n_samples, max_imag, max_err, sign_ok, passed)


# -- dual path and ignorability ------------------------------------------------------------

@dataclass(frozen=True)
class DualPathReport:
    chart_id: str
    samples: int
    max_rel_error: float
    max_norm_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_rel_error <= self.tol and self.max_norm_error <= 1e-10

    def to_json(self) -> dict:
        return {"chart_id": self.chart_id, "samples": self.samples, "max_rel_error": self.max_rel_error,
                "max_norm_error": self.max_norm_error, "tol": self.tol, "pass": self.passed}


def dual_path_check(chart: Chart, n_samples: int = 200, rng: np.random.Generator | None = None,
                    tol: float = 1e-11) -> DualPathReport:
    """Group action e^{...}|o> against the closed form; also the K-norm against its formula."""
    rng = rng if rng is not None else np.random.default_rng(0)
    worst = 0.0
    worst_norm = 0.0
    for _ in range(n_samples):
        s = sample_params(chart, rng)
        cf = eval_closed_form(chart, s.params)
        ga = eval_group_action(chart, s.params)
        worst = max(worst, float(np.linalg.norm(cf - ga) / max(1.0, np.linalg.norm(cf))))
        if chart.expected_norm is not None:
            nrm = norm_invariant(chart, s.params)
            expect = complex(chart.expected_norm(s.as_dict()))
            worst_norm = max(worst_norm, abs(nrm - expect) / (1.0 + abs(expect)))
    return DualPathReport(chart.id, n_samples, worst, worst_norm, tol)


@dataclass(frozen=True)
class IgnorabilityReport:
    chart_id: str
    ignorable: tuple
    samples: int
    max_derivative: float

    @property
    def passed(self) -> bool:
        return self.max_derivative <= 1e-9

    def to_json(self) -> dict:
        return {"chart_id": self.chart_id, "ignorable": list(self.ignorable), "samples": self.samples,
                "max_metric_derivative": self.max_derivative, "pass": self.passed}


def ignorability_check(chart: Chart, n_samples: int = 20, rng: np.random.Generator | None = None
                       ) -> IgnorabilityReport:
    """The induced metric must not depend on the ignorable parameters."""
    rng = rng if rng is not None else np.random.default_rng(0)
    idx = [i for i, p in enumerate(chart.params) if p.ignorable]
    worst = 0.0
    for _ in range(n_samples):
        s = sample_params(chart, rng)
        g, dg = metric_jets(chart, s.params)
        scale = 1.0 + float(np.max(np.abs(g)))
        for i in idx:
            worst = max(worst, float(np.max(np.abs(dg[i]))) / scale)
    return IgnorabilityReport(chart.id, chart.ignorable, n_samples, worst)


# -- catalog data --------------------------------------------------------------------------

def _P(name, ignorable=False, lo=-INF, hi=INF, sample=None):
    if sample is None:
        sample = (max(lo, -3.0), min(hi, 3.0))
    return ParamSpec(name, ignorable, lo, hi, sample)


def _g(terms, label, n=4):
    return A.combo(terms, n, label)


def L(i, k, n=4):
    return A.rot(i, k, n)


def _sphere_norm(p):
    return p["r"] ** 2


R_REAL = _P("r", lo=0.0, hi=INF, sample=(0.1, 5.0))
ANGLE = dict(lo=0.0, hi=TWO_PI, sample=(0.0, TWO_PI))

# closed forms (p is a dict of complex numbers or jets)
cos, sin, cosh, sinh, exp, tan = J.cos, J.sin, J.cosh, J.sinh, J.exp, J.tan


def _cf_m41(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    return [r * cos(c) * cos(a), r * cos(c) * sin(a), r * sin(c) * cos(b), r * sin(c) * sin(b)]


def _cf_m42(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    ea, ec, emc = exp(a), exp(c), exp(-c)
    return [r / 2 * ea * (ec + b * emc), r / 2 * ea * emc, r / 2 / ea * emc, r / 2 / ea * (ec - b * emc)]


def _cf_m43(p, s=1):
    z, r, a1, a2 = p["z"], p["r"], p["a1"], p["a2"]
    return [z - r * (a1 * a1 + s * a2 * a2) / 2, r * a1, r * a2, r]


def _cf_m44(beta, s=1):
    def f(p):
        z, r, a1, a2 = p["z"], p["r"], p["a1"], p["a2"]
        if s == 1:
            x1 = z - r * (a1 * a1 + a2 * a2) / 2 - (a1 * a1 + beta * a2 * a2) / 2
        else:
            x1 = z - a1 * a1 * (r + 1) / 2 + a2 * a2 * (r + beta) / 2
        return [x1, (r + 1) * a1, (r + beta) * a2, r]
    return f


def _cf_m45(kappa):
    def f(p):
        z, r, a1, a2 = p["z"], p["r"], p["a1"], p["a2"]
        return [z - (r + kappa) * a1 * a2 - a2 * a2 / 2, (r + kappa) * a2, (r + kappa) * a1 + a2, r]
    return f


def _cf_m46(p):
    z, a1, a2, r = p["z"], p["a1"], p["a2"], p["r"]
    return [a1 + z * z / 2, a2 - r * z, r, z]


def _cf_3c0(p):
    z, r, a = p["z"], p["r"], p["a"]
    return [z - r * a * a / 2, -a * r, r]


def _cf_3c1(p):
    z, r, a = p["z"], p["r"], p["a"]
    return [z + a * r + a * a * a / 6, r + a * a / 2, -a]


def _cf_4c1(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    return [r * cos(c) * cos(b) * cos(a), r * cos(c) * cos(b) * sin(a), r * cos(c) * sin(b), r * sin(c)]


def _cf_4c2(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    eib = exp(1j * b)
    return [r * cos(c) * (cos(b) - a * a * eib / 2), r * cos(c) * a * eib,
            r * cos(c) * (sin(b) - 0.5j * a * a * eib), r * sin(c)]


def _cf_4c3(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    eic = exp(1j * c)
    return [r * (cos(c) - b * b * eic / 2), r * b * eic * cos(a), r * b * eic * sin(a),
            r * (sin(c) - 0.5j * b * b * eic)]


def _cf_4c4(p):
    r, c, a1, a2 = p["r"], p["c"], p["a1"], p["a2"]
    eic = exp(1j * c)
    q = a1 * a1 + a2 * a2
    return [r * (cos(c) - q * eic / 2), r * a1 * eic, r * a2 * eic, r * (sin(c) - 0.5j * q * eic)]


def _cf_54(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    return [r * cosh(c) * cos(a), r * cosh(c) * sin(a), r * sinh(c) * cos(b), r * sinh(c) * sin(b)]


def _cf_510(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    return [r * cosh(c) * cosh(a), r * sinh(c) * sinh(b), r * cosh(c) * sinh(a), r * sinh(c) * cosh(b)]


def _cf_516(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    ea = exp(a)
    ch, sh, cb, sb = cosh(c), sinh(c), cos(b), sin(b)
    k = r / S2
    return [k * ea * (ch * cb - sh * sb), k * ea * (ch * sb + sh * cb),
            k / ea * (ch * cb + sh * sb), k / ea * (ch * sb - sh * cb)]


def _cf_527(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    ec, emc = exp(c), exp(-c)
    k = r / S2
    return [k * (ec * cos(a) + b * emc * sin(a)), k * (ec * sin(a) - b * emc * cos(a)),
            k * emc * cos(a), k * emc * sin(a)]


def _cf_531(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    return [r * cosh(c) * cosh(b) * cos(a), r * cosh(c) * cosh(b) * sin(a), r * cosh(c) * sinh(b), r * sinh(c)]


def _cf_532(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    return [r * cosh(c) * cos(b) * cosh(a), r * cosh(c) * sin(b), r * cosh(c) * cos(b) * sinh(a), r * sinh(c)]


def _cf_533(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    eb = exp(b)
    return [r * cosh(c) * (cosh(b) - a * a * eb / 2), r * cosh(c) * a * eb,
            r * cosh(c) * (sinh(b) + a * a * eb / 2), r * sinh(c)]


def _cf_534(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    ec = exp(c)
    return [r * (cosh(c) - b * b * ec / 2), r * b * ec * cosh(a), r * b * ec * sinh(a),
            r * (sinh(c) + b * b * ec / 2)]


def _cf_535(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    ec = exp(c)
    q = a * a - b * b
    return [r * (cosh(c) - q * ec / 2), r * a * ec, r * b * ec, r * (sinh(c) + q * ec / 2)]


def _cf_m31cyl(p):
    r, c, a, b = p["r"], p["c"], p["a"], p["b"]
    return [r * sinh(c) * cos(a), r * sinh(c) * sin(a), r * cosh(c) * sinh(b), r * cosh(c) * cosh(b)]


def _cf_cart4(p):
    return [p["a1"], p["a2"], p["s3"], p["s4"]]


# -- generator shorthands -------------------------------------------------------------------

def _B(i, k):
    return A.boost(i, k)


def _R(i, k):
    # E_ki - E_ik
    return _g([(1, k, i), (-1, i, k)], f"E{k}{i}-E{i}{k}")


E15 = _g([(1, 1, 5)], "E15")
E45 = _g([(1, 4, 5)], "E45")
X1_4C = (L(1, 2) - L(2, 4).scale(QI(0, 1))).relabel("L12-iL24")
X2_4C = (L(1, 3) - L(3, 4).scale(QI(0, 1))).relabel("L13-iL34")
X1_4C2 = (L(1, 2) - L(2, 3).scale(QI(0, 1))).relabel("L12-iL23")
NILP_A = _g([(-1, 1, 2), (1, 2, 1), (1, 2, 4), (1, 4, 2)], "E21-E12+E24+E42")


def _sing_sphere(p):
    return {"r": p["r"], "sin c": J.sin(p["c"]), "cos c": J.cos(p["c"])}


def _sing_r(p):
    return {"r": p["r"]}


def _sing_4c1(p):
    return {"r": p["r"], "cos c": J.cos(p["c"]), "cos b": J.cos(p["b"])}


def _sing_4c2(p):
    return {"r": p["r"], "cos c": J.cos(p["c"])}


def _sing_4c3(p):
    return {"r": p["r"], "b": p["b"]}


def _sing_m42(p):
    return {"r": p["r"]}


def _sing_hyp(p):
    e2 = J.exp(2 * p["c"])
    return {"r": p["r"], "e^{2c}-1": e2 - 1, "e^{2c}+1": e2 + 1}


def _sing_516(p):
    return {"r": p["r"], "cosh 2c": J.cosh(2 * p["c"])}


def _sing_531(p):
    return {"r": p["r"], "cosh c": J.cosh(p["c"]), "sinh c": J.sinh(p["c"])}


def _sing_532(p):
    return {"r": p["r"], "cosh c": J.cosh(p["c"]), "cos b": J.cos(p["b"])}


def _sing_534(p):
    return {"r": p["r"], "b": p["b"]}


def _sing_m31(p):
    return {"r": p["r"], "sinh c": J.sinh(p["c"])}


def _sing_m44(beta):
    def f(p):
        return {"r": p["r"], "r+1": p["r"] + 1, "r+beta": p["r"] + beta}
    return f


def _sing_m45(kappa):
    def f(p):
        return {"r+kappa": p["r"] + kappa}
    return f


def _c(beta):
    return complex(beta)


DEFAULT_BETA_C = 0.5
DEFAULT_KAPPA = 1


def _m4c_charts(beta=DEFAULT_BETA_C, kappa=DEFAULT_KAPPA) -> list[Chart]:
    S = SpaceId.M4C
    m41_action = (ActionStep(_g([(-1, 1, 2), (1, 2, 1)], "-(E12-E21)"), "a"),
                  ActionStep(_g([(-1, 3, 4), (1, 4, 3)], "-(E34-E43)"), "b"),
                  ActionStep(_g([(-1, 1, 3), (1, 3, 1)], "-(E13-E31)"), "c"),
                  ActionStep(E15, "r"))
    m42_action = (ActionStep(_g([(1, 1, 1), (1, 2, 2), (-1, 3, 3), (-1, 4, 4)], "E11+E22-E33-E44"), "a"),
                  ActionStep(_g([(1, 1, 2), (-1, 4, 3)], "E12-E43"), "b"),
                  ActionStep(_g([(1, 1, 1), (-1, 2, 2), (-1, 3, 3), (1, 4, 4)], "E11-E22-E33+E44"), "c"),
                  ActionStep(_g([(QI(1, 0) / 2, 1, 5), (QI(1) / 2, 2, 5), (QI(1) / 2, 3, 5), (QI(1) / 2, 4, 5)],
                                "(E15+E25+E35+E45)/2"), "r"))
    gm44 = A._gens_m44(_exactish(beta))
    gm45 = A._gens_m45(kappa)
    charts = [
        Chart("C_M41", S, A.I4, (_P("r"), _P("c"), _P("a", True), _P("b", True)), m41_action, _cf_m41,
              ("r cos c cos a", "r cos c sin a", "r sin c cos b", "r sin c sin b"),
              "3.318+3.19", "Fig 1a", ("E(4,C)", "O(4,C)", "O(2,C)xO(2,C)"), "(3.V4100)", "M41_0",
              _sphere_norm, "sphere", _sing_sphere,
              printed_action="e^{-a(E12-E21)} e^{-b(E34-E43)} e^{-c(E13-E31)} e^{r E15}"),
        Chart("C_M42", S, A.KAB, (_P("a", True), _P("b", True), _P("c"), _P("r")), m42_action, _cf_m42,
              ("(r/2) e^a (e^c + b e^-c)", "(r/2) e^a e^-c", "(r/2) e^-a e^-c", "(r/2) e^-a (e^c - b e^-c)"),
              "3.317", "Fig 1b", ("E(4,C)", "O(4,C)", "exp M42(0)"), "(3.V4200)", "M42_0",
              _sphere_norm, "sphere", _sing_m42,
              flags=("action-corrected: translation generator carries the factor 1/2 of the closed form",),
              printed_action="e^{a(E11+E22-E33-E44)} e^{b(E12-E43)} e^{c(E11-E22-E33+E44)} e^{r(E15+E25+E35+E45)}"),
        Chart("C_M43", S, A.KLC, (_P("z", True), _P("r"), _P("a1", True), _P("a2", True)),
              (ActionStep(A._gens_m43()[0], "a1"), ActionStep(A._gens_m43()[1], "a2"),
               ActionStep(E15, "z"), ActionStep(E45, "r")), _cf_m43,
              ("z - r(a1^2+a2^2)/2", "r a1", "r a2", "r"),
              "3.L325", "Fig 1c", ("E(4,C)", "exp M43(1)"), "(3.V431)", "M43_1",
              lambda p: 2 * p["z"] * p["r"], "null-translation", _sing_r,
              printed_action="e^{a1(-E12+E24)} e^{a2(-E13+E34)} e^{z E15} e^{r E45}"),
        Chart("C_M44", S, A.KLC, (_P("z", True), _P("r"), _P("a1", True), _P("a2", True)),
              (ActionStep(gm44[0], "a1"), ActionStep(gm44[1], "a2"),
               ActionStep(E15, "z"), ActionStep(E45, "r")), _cf_m44(_c(beta)),
              ("z - r(a1^2+a2^2)/2 - (a1^2+beta a2^2)/2", "(r+1) a1", "(r+beta) a2", "r"),
              "3.L329", "Fig 1d", ("E(4,C)", "exp M44(1)"), "(3.V441)", "M44_1",
              lambda p, _b=_c(beta): 2 * p["z"] * p["r"] + (p["r"] + 1) * p["a1"] ** 2
              + _b * (p["r"] + _b) * p["a2"] ** 2, "null-translation", _sing_m44(_c(beta)),
              constants=(("beta", beta),),
              printed_action="e^{a1(-E12+E24+E25)} e^{a2(-E13+E34+beta E35)} e^{z E15} e^{r E45}"),
        Chart("C_M45", S, A.KFULL, (_P("z", True), _P("r"), _P("a1", True), _P("a2", True)),
              (ActionStep(gm45[0], "a1"), ActionStep(gm45[1], "a2"),
               ActionStep(E15, "z"), ActionStep(E45, "r")), _cf_m45(kappa),
              ("z - (r+kappa) a1 a2 - a2^2/2", "(r+kappa) a2", "(r+kappa) a1 + a2", "r"),
              "3.L333", "Fig 1e", ("E(4,C)", "exp M45(1)"), "(3.V451)", "M45_1",
              lambda p, _k=kappa: _m45_norm(p, _k),
              "null-translation", _sing_m45(kappa), constants=(("kappa", kappa),),
              printed_action="e^{a1(-E12+E34+kappa E35)} e^{a2(-E13+E24+E35+kappa E25)} e^{z E15} e^{r E45}"),
        Chart("C_M46", S, A.KAB, (_P("z", True), _P("a1", True), _P("a2", True), _P("r")),
              (ActionStep(A._gens_m46()[0], "z"), ActionStep(A._gens_m46()[1], "a1"),
               ActionStep(A._gens_m46()[2], "a2"), ActionStep(_g([(1, 3, 5)], "E35"), "r")), _cf_m46,
              ("a1 + z^2/2", "a2 - r z", "r", "z"),
              "3.L337", "Fig 1f", ("E(4,C)", "exp M46(2)"), "(3.V462)", "M46_2",
              lambda p: 2 * p["a1"] * p["r"] + 2 * p["a2"] * p["z"] - p["r"] * p["z"] ** 2,
              "null-translation", None,
              printed_action="e^{z(E14-E23+E45)} e^{a1 E15} e^{a2 E25} e^{r E35}"),
    ]
    charts += _4c_charts(S, A.I4)
    return charts


def _m45_norm(p, kappa):
    r, a1, a2 = p["r"], p["a1"], p["a2"]
    return 2 * p["z"] * r + 2 * kappa * (r + kappa) * a1 * a2 + (r + 2 * kappa) * a2 * a2


def _exactish(beta):
    if isinstance(beta, QI):
        return beta
    try:
        return QI.coerce(beta)
    except TypeError:
        pass
    b = complex(beta)
    from fractions import Fraction
    fr = Fraction(b.real).limit_denominator(10 ** 6)
    fi = Fraction(b.imag).limit_denominator(10 ** 6)
    if abs(float(fr) - b.real) < 1e-15 and abs(float(fi) - b.imag) < 1e-15:
        return QI(fr, fi)
    return b


def _4c_charts(S, K, real=False) -> list[Chart]:
    act_c = ActionStep(L(1, 4), "c")
    act_r = ActionStep(E15, "r")
    p = _P
    out = [
        Chart("C_4C1", S, K, (p("r"), p("c"), p("a", True), p("b")),
              (ActionStep(L(1, 2), "a"), ActionStep(L(1, 3), "b"), act_c, act_r), _cf_4c1,
              ("r cos c cos b cos a", "r cos c cos b sin a", "r cos c sin b", "r sin c"),
              "4C1", "Fig 2a", ("E(4,C)", "O(4,C)", "O(3,C)", "O(2,C)"), "(3.4C1)", None,
              _sphere_norm, "sphere", _sing_4c1,
              printed_action="e^{a L12} e^{b L13} e^{c L14} e^{r E15}"),
        Chart("C_4C2", S, K, (p("r"), p("c"), p("a", True), p("b")),
              (ActionStep(X1_4C2, "a"), ActionStep(L(1, 3), "b"), act_c, act_r), _cf_4c2,
              ("r cos c (cos b - a^2 e^{ib}/2)", "r cos c a e^{ib}", "r cos c (sin b - i a^2 e^{ib}/2)", "r sin c"),
              "4C2", "Fig 2b", ("E(4,C)", "O(4,C)", "O(3,C)", "E(1,C)"), "(3.4C2)", None,
              _sphere_norm, "sphere", _sing_4c2,
              flags=("action-corrected: X1 = L12 - i L23 reproduces the closed form; printed L12 - i L24 does not",),
              printed_action="e^{a X1} e^{b L13} e^{c L14} e^{r E15}, X1 = L12 - i L24"),
        Chart("C_4C3", S, K, (p("r"), p("c"), p("a", True), p("b")),
              (ActionStep(L(2, 3), "a"), ActionStep(X1_4C, "b"), act_c, act_r), _cf_4c3,
              ("r (cos c - b^2 e^{ic}/2)", "r b e^{ic} cos a", "r b e^{ic} sin a", "r (sin c - i b^2 e^{ic}/2)"),
              "4C3", "Fig 2c", ("E(4,C)", "O(4,C)", "E(2,C)", "O(2,C)"), "(3.4C3)", None,
              _sphere_norm, "sphere", _sing_4c3,
              printed_action="e^{a L23} e^{b X1} e^{c L14} e^{r E15}, X1 = L12 - i L24"),
        Chart("C_4C4", S, K, (p("r"), p("c"), p("a1", True), p("a2", True)),
              (ActionStep(X1_4C, "a1"), ActionStep(X2_4C, "a2"), act_c, act_r), _cf_4c4,
              ("r (cos c - (a1^2+a2^2) e^{ic}/2)", "r a1 e^{ic}", "r a2 e^{ic}",
               "r (sin c - i (a1^2+a2^2) e^{ic}/2)"),
              "4C4", "Fig 2d", ("E(4,C)", "O(4,C)", "E(2,C)", "E(1,C)xE(1,C)"), "(3.4C4)", None,
              _sphere_norm, "sphere", _sing_r,
              printed_action="e^{a1 X1} e^{a2 X2} e^{c L14} e^{r E15}, X1 = L12 - i L24, X2 = L13 - i L34"),
    ]
    return out


def _m3c_charts() -> list[Chart]:
    S = SpaceId.M3C
    g0 = A._gens_m3c(0)
    g1 = A._gens_m3c(1)
    E34_3 = _g([(1, 3, 4)], "E34", 3)
    E24_3 = _g([(1, 2, 4)], "E24", 3)
    return [
        Chart("C_3C_k0", S, A.K3, (_P("z", True), _P("r"), _P("a", True)),
              (ActionStep(g0[0], "a"), ActionStep(g0[1], "z"), ActionStep(E34_3, "r")), _cf_3c0,
              ("z - r a^2/2", "-a r", "r"), "3.346_k0", "", ("E(3,C)", "exp M3(kappa=0)"),
              "(3.eqM3C_kapa0)", "M3C_k0", lambda p: 2 * p["z"] * p["r"], "null-translation", _sing_r,
              constants=(("kappa", 0),), printed_action="e^{a(E12-E23)} e^{z E14} e^{r E34}"),
        Chart("C_3C_k1", S, A.K3, (_P("z", True), _P("r"), _P("a", True)),
              (ActionStep(g1[0], "a"), ActionStep(g1[1], "z"), ActionStep(E24_3, "r")), _cf_3c1,
              ("z + a r + a^3/6", "r + a^2/2", "-a"), "3.346_k1", "", ("E(3,C)", "exp M3(kappa=1)"),
              "(3.eqM3C_kapa1)", "M3C_k1",
              lambda p: p["r"] ** 2 - 2 * p["a"] * p["z"] - p["a"] ** 2 * p["r"] - p["a"] ** 4 / 12,
              "null-translation", None,
              constants=(("kappa", 1),), printed_action="e^{a(E12-E23-E34)} e^{z E14} e^{r E24}"),
    ]


def _m4r_charts() -> list[Chart]:
    S = SpaceId.M4R
    c41 = _m4c_charts()[0]
    c4c1 = _4c_charts(SpaceId.M4C, A.I4)[0]
    return [
        Chart("R4_cyl", S, A.I4_REAL,
              (R_REAL, _P("c", lo=0.0, hi=math.pi / 2, sample=(0.0, math.pi / 2)),
               _P("a", True, **ANGLE), _P("b", True, **ANGLE)),
              c41.action, _cf_m41, c41.closed_form_str, "3.318+3.19", "Fig 1a",
              ("E(4)", "O(4)", "O(2)xO(2)"), "(3.V4100)", "M41_0", _sphere_norm, "sphere", _sing_sphere),
        Chart("R4_sph", S, A.I4_REAL,
              (R_REAL, _P("c", lo=0.0, hi=math.pi, sample=(0.0, math.pi)), _P("a", True, **ANGLE),
               _P("b", lo=0.0, hi=math.pi, sample=(0.0, math.pi))),
              c4c1.action, _cf_4c1, c4c1.closed_form_str, "4C1", "Fig 2a",
              ("E(4)", "O(4)", "O(3)", "O(2)"), "(3.4C1)", None, _sphere_norm, "sphere", _sing_4c1),
    ]


def _m31_charts(beta=0.5) -> list[Chart]:
    S = SpaceId.M31
    real_r = R_REAL
    gm43 = A._gens_m43()
    gm44 = A._gens_m44(_exactish(beta))
    charts = [
        Chart("M31_cyl", S, A.D31,
              (real_r, _P("c", lo=0.0, hi=INF, sample=(0.0, 3.0)), _P("a", True, **ANGLE),
               _P("b", True, lo=0.0, hi=INF, sample=(0.0, 3.0))),
              (ActionStep(_R(1, 2), "a"), ActionStep(_B(3, 4), "b"), ActionStep(_B(1, 4), "c"),
               ActionStep(E45, "r")), _cf_m31cyl,
              ("r sinh c cos a", "r sinh c sin a", "r cosh c sinh b", "r cosh c cosh b"),
              None, "Fig 3a", ("E(3,1)", "O(3,1)", "O(2)xO(1,1)"), "(4.1)", "M41_0r",
              lambda p: -p["r"] ** 2, "hyperboloid", _sing_m31,
              flags=("action derived: the printed text gives only the coordinates",)),
        Chart("M31_M43", S, A.KLC_31,
              (_P("z", True), real_r, _P("a1", True), _P("a2", True)),
              (ActionStep(gm43[0], "a1"), ActionStep(gm43[1], "a2"), ActionStep(E15, "z"), ActionStep(E45, "r")),
              _cf_m43, ("z - r(a1^2+a2^2)/2", "r a1", "r a2", "r"), "3.L325", "Fig 3b",
              ("E(3,1)", "exp M43(1)"), "(3.V431)", "M43_1r", lambda p: 2 * p["z"] * p["r"],
              "null-translation", _sing_r),
        Chart("M31_M44", S, A.KLC_31,
              (_P("z", True), real_r, _P("a1", True), _P("a2", True)),
              (ActionStep(gm44[0], "a1"), ActionStep(gm44[1], "a2"), ActionStep(E15, "z"), ActionStep(E45, "r")),
              _cf_m44(float(beta)), ("z - r(a1^2+a2^2)/2 - (a1^2+beta a2^2)/2", "(r+1) a1", "(r+beta) a2", "r"),
              "3.L329", "Fig 3c", ("E(3,1)", "exp M44(1)"), "(3.V441)", "M44_1r",
              lambda p, _b=float(beta): 2 * p["z"] * p["r"] + (p["r"] + 1) * p["a1"] ** 2
              + _b * (p["r"] + _b) * p["a2"] ** 2, "null-translation", _sing_m44(float(beta)),
              constants=(("beta", beta),)),
    ]
    stub_chains = {
        "M31_4a": ("Fig 4a", ("E(3,1)", "O(3,1)", "O(3)", "O(2)")),
        "M31_4b": ("Fig 4b", ("E(3,1)", "O(3,1)", "O(2,1)", "O(2)")),
        "M31_4c": ("Fig 4c", ("E(3,1)", "O(3,1)", "O(2,1)", "O(1,1)")),
        "M31_4d": ("Fig 4d", ("E(3,1)", "O(3,1)", "O(2,1)", "E(1)")),
        "M31_4e": ("Fig 4e", ("E(3,1)", "O(3,1)", "E(2)", "O(2)")),
        "M31_4f": ("Fig 4f", ("E(3,1)", "O(3,1)", "E(2)", "E(1)xE(1)")),
    }
    for cid, (fig, chain) in stub_chains.items():
        charts.append(Chart(cid, S, A.D31, (), (), lambda p: [], (), None, fig, chain, "", None,
                            stub=True, flags=("detail out of scope: hyperboloid systems are not given explicitly",)))
    return charts


def _m22_charts(beta=0.5, kappa=1) -> list[Chart]:
    S = SpaceId.M22
    rr = R_REAL
    ang = lambda n, ign=True: _P(n, ign, **ANGLE)
    rap = lambda n, ign=False: _P(n, ign, lo=-INF, hi=INF, sample=(-2.0, 2.0))
    pos = lambda n, ign=False: _P(n, ign, lo=0.0, hi=INF, sample=(0.0, 2.5))
    m42c = _m4c_charts()[1]
    gm43 = A._gens_m43(-1)
    gm44 = A._gens_m44(_exactish(beta), -1)
    gm45 = A._gens_m45(kappa)
    gm46 = A._gens_m46()
    Bc = _g([(1, 1, 5), (1, 3, 5)], "E15+E35")
    charts = [
        Chart("E22_a", S, A.D22, (rr, pos("c"), ang("a"), ang("b")),
              (ActionStep(_g([(-1, 1, 2), (1, 2, 1)], "-(E12-E21)"), "a"),
               ActionStep(_g([(-1, 3, 4), (1, 4, 3)], "-(E34-E43)"), "b"),
               ActionStep(_B(1, 3), "c"), ActionStep(E15, "r")), _cf_54,
              ("r cosh c cos a", "r cosh c sin a", "r sinh c cos b", "r sinh c sin b"),
              "5.5", "Fig 5a", ("E(2,2)", "O(2,2)", "O(2)xO(2)"), "(5.4)", "CartanCompact",
              _sphere_norm, "sphere", _sing_hyp,
              printed_action="e^{-a(E12-E21)} e^{-b(E34-E43)} e^{c(E13+E31)} e^{r E15}"),
        Chart("E22_b", S, A.D22, (rr, pos("c"), rap("a", True), rap("b", True)),
              (ActionStep(_B(1, 3), "a"), ActionStep(_B(2, 4), "b"), ActionStep(_B(1, 4), "c"),
               ActionStep(E15, "r")), _cf_510,
              ("r cosh c cosh a", "r sinh c sinh b", "r cosh c sinh a", "r sinh c cosh b"),
              "5.11", "Fig 5b", ("E(2,2)", "O(2,2)", "O(1,1)xO(1,1)"), "(5.10)", "CartanNoncompact",
              _sphere_norm, "sphere", _sing_hyp,
              printed_action="e^{a(E13+E31)} e^{b(E24+E42)} e^{c(E14+E41)} e^{r E15}"),
        Chart("E22_c", S, A.KAB_REAL, (rr, rap("c"), rap("a", True), ang("b")),
              (ActionStep(_g([(1, 1, 1), (1, 2, 2), (-1, 3, 3), (-1, 4, 4)], "E11+E22-E33-E44"), "a"),
               ActionStep(_g([(1, 2, 1), (-1, 1, 2), (-1, 3, 4), (1, 4, 3)], "E21-E12-E34+E43"), "b"),
               ActionStep(_g([(1, 1, 2), (1, 2, 1), (-1, 3, 4), (-1, 4, 3)], "E12+E21-E34-E43"), "c"),
               ActionStep(Bc, "r", 1 / S2)), _cf_516,
              ("(r/sqrt2) e^a (cosh c cos b - sinh c sin b)", "(r/sqrt2) e^a (cosh c sin b + sinh c cos b)",
               "(r/sqrt2) e^-a (cosh c cos b + sinh c sin b)", "(r/sqrt2) e^-a (cosh c sin b - sinh c cos b)"),
              "5.517", "Fig 5c", ("E(2,2)", "O(2,2)", "O(2)xO(1,1)"), "(5.16)", "CartanMixed",
              _sphere_norm, "sphere", _sing_516,
              flags=("action-corrected: b-generator E21-E12-E34+E43 (printed -E21+E12-E34+E43 is not in o(K))",),
              printed_action="e^{a(E11+E22-E33-E44)} e^{b(-E21+E12-E34+E43)} e^{c(E12+E21-E34-E43)} "
                             "e^{r(E15+E35)/sqrt2}"),
        Chart("E22_d", S, A.KAB_REAL, (rap("a", True), rap("b", True), rap("c"), rr),
              m42c.action, _cf_m42, m42c.closed_form_str, "3.317", "Fig 5d",
              ("E(2,2)", "O(2,2)", "exp M1(0)"), "(3.V4200)", "M1_0", _sphere_norm, "sphere", _sing_m42,
              flags=m42c.flags, printed_action=m42c.printed_action),
        Chart("E22_e", S, A.KAB_REAL, (rr, rap("c"), ang("a"), pos("b", True)),
              (ActionStep(_g([(-1, 1, 2), (1, 2, 1), (-1, 3, 4), (1, 4, 3)], "-E12+E21-E34+E43"), "a"),
               ActionStep(_g([(1, 1, 4), (-1, 2, 3)], "E14-E23"), "b"),
               ActionStep(_g([(1, 1, 1), (1, 2, 2), (-1, 3, 3), (-1, 4, 4)], "E11+E22-E33-E44"), "c"),
               ActionStep(Bc, "r", 1 / S2)), _cf_527,
              ("(r/sqrt2)(e^c cos a + b e^-c sin a)", "(r/sqrt2)(e^c sin a - b e^-c cos a)",
               "(r/sqrt2) e^-c cos a", "(r/sqrt2) e^-c sin a"),
              "5.29", "Fig 5e", ("E(2,2)", "O(2,2)", "exp M2(0)"), "(5.27)", "M2_0",
              _sphere_norm, "sphere", _sing_r,
              flags=("action-corrected: a-generator -E12+E21-E34+E43 (printed E34-E34 is a suspected typo)",
                     "action-corrected: c-generator sign E11+E22-E33-E44",
                     "action-corrected: translation generator (E15+E35)/sqrt2"),
              printed_action="e^{a(-E12+E21-E34+E34)} e^{b(E14-E23)} e^{c(-E11-E22+E33+E44)} e^{r(E15+E35)}"),
        Chart("E22_f", S, A.KLC_22, (_P("z", True), rap("r"), _P("a1", True), _P("a2", True)),
              (ActionStep(gm43[0], "a1"), ActionStep(gm43[1], "a2"), ActionStep(E15, "z"), ActionStep(E45, "r")),
              lambda p: _cf_m43(p, -1), ("z - r(a1^2-a2^2)/2", "r a1", "r a2", "r"),
              "3.L325r", "Fig 5f", ("E(2,2)", "exp M43(1)"), "(3.V431)", "M43_1r",
              lambda p: 2 * p["z"] * p["r"], "null-translation", _sing_r,
              flags=("derived_closed_form: signature (2,2) needs the indefinite middle block; "
                     "printed complex form with real entries has signature (3,1)",)),
        Chart("E22_g", S, A.KLC_22, (_P("z", True), rap("r"), _P("a1", True), _P("a2", True)),
              (ActionStep(gm44[0], "a1"), ActionStep(gm44[1], "a2"), ActionStep(E15, "z"), ActionStep(E45, "r")),
              _cf_m44(float(beta), -1),
              ("z - a1^2(r+1)/2 + a2^2(r+beta)/2", "(r+1) a1", "(r+beta) a2", "r"),
              "3.L329r", "Fig 5g", ("E(2,2)", "exp M44(1)"), "(3.V441)", "M44_1r",
              lambda p, _b=float(beta): 2 * p["z"] * p["r"] + (p["r"] + 1) * p["a1"] ** 2
              - _b * (p["r"] + _b) * p["a2"] ** 2, "null-translation", _sing_m44(float(beta)),
              constants=(("beta", beta),),
              flags=("derived_closed_form: signature (2,2) needs the indefinite middle block",)),
        Chart("E22_h", S, A.KFULL_REAL, (_P("z", True), rap("r"), _P("a1", True), _P("a2", True)),
              (ActionStep(gm45[0], "a1"), ActionStep(gm45[1], "a2"), ActionStep(E15, "z"), ActionStep(E45, "r")),
              _cf_m45(kappa), ("z - (r+kappa) a1 a2 - a2^2/2", "(r+kappa) a2", "(r+kappa) a1 + a2", "r"),
              "3.L333", "Fig 5h", ("E(2,2)", "exp M45(1)"), "(3.V451)", "M45_1r",
              lambda p, _k=kappa: _m45_norm(p, _k), "null-translation", _sing_m45(kappa),
              constants=(("kappa", kappa),)),
        Chart("E22_i", S, A.KAB_REAL, (_P("z", True), _P("a1", True), _P("a2", True), rap("r")),
              (ActionStep(gm46[0], "z"), ActionStep(gm46[1], "a1"), ActionStep(gm46[2], "a2"),
               ActionStep(_g([(1, 3, 5)], "E35"), "r")), _cf_m46,
              ("a1 + z^2/2", "a2 - r z", "r", "z"), "3.L337", "Fig 5i", ("E(2,2)", "exp M46(2)"),
              "(3.V462)", "M46_2r",
              lambda p: 2 * p["a1"] * p["r"] + 2 * p["a2"] * p["z"] - p["r"] * p["z"] ** 2,
              "null-translation", None),
        # charts with fewer ignorable variables
        Chart("E22_I", S, A.D22, (rr, rap("c"), ang("a"), rap("b")),
              (ActionStep(_R(1, 2), "a"), ActionStep(_B(1, 3), "b"), ActionStep(_B(1, 4), "c"), ActionStep(E15, "r")),
              _cf_531, ("r cosh c cosh b cos a", "r cosh c cosh b sin a", "r cosh c sinh b", "r sinh c"),
              None, "Fig 6a", ("E(2,2)", "O(2,2)", "O(2,1)", "O(2)"), "(5.31)", None,
              _sphere_norm, "sphere", _sing_531, flags=("action derived",)),
        Chart("E22_II", S, A.D22, (rr, rap("c"), rap("a", True), _P("b", lo=0.0, hi=TWO_PI, sample=(0.0, TWO_PI))),
              (ActionStep(_B(1, 3), "a"), ActionStep(_R(1, 2), "b"), ActionStep(_B(1, 4), "c"), ActionStep(E15, "r")),
              _cf_532, ("r cosh c cos b cosh a", "r cosh c sin b", "r cosh c cos b sinh a", "r sinh c"),
              None, "Fig 6b", ("E(2,2)", "O(2,2)", "O(2,1)", "O(1,1)"), "(5.32)", None,
              _sphere_norm, "sphere", _sing_532, flags=("action derived",)),
        Chart("E22_III", S, A.D22, (rr, rap("c"), rap("a", True), rap("b")),
              (ActionStep(_g([(1, 2, 1), (-1, 1, 2), (1, 2, 3), (1, 3, 2)], "E21-E12+E23+E32"), "a"),
               ActionStep(_B(1, 3), "b"), ActionStep(_B(1, 4), "c"), ActionStep(E15, "r")),
              _cf_533, ("r cosh c (cosh b - a^2 e^b/2)", "r cosh c a e^b", "r cosh c (sinh b + a^2 e^b/2)",
                        "r sinh c"),
              None, "Fig 6c", ("E(2,2)", "O(2,2)", "O(2,1)", "E(1)"), "(5.33)", None,
              _sphere_norm, "sphere", _sing_531, flags=("action derived",)),
        Chart("E22_IV", S, A.D22, (rr, rap("c"), rap("a", True), rap("b")),
              (ActionStep(_B(2, 3), "a"), ActionStep(NILP_A, "b"), ActionStep(_B(1, 4), "c"), ActionStep(E15, "r")),
              _cf_534, ("r (cosh c - b^2 e^c/2)", "r b e^c cosh a", "r b e^c sinh a", "r (sinh c + b^2 e^c/2)"),
              None, "Fig 6d", ("E(2,2)", "O(2,2)", "E(1,1)", "O(1,1)"), "(5.34)", None,
              _sphere_norm, "sphere", _sing_534, flags=("action derived",)),
        Chart("E22_V", S, A.D22, (rr, rap("c"), rap("a", True), rap("b", True)),
              (ActionStep(NILP_A, "a"), ActionStep(_g([(1, 3, 1), (1, 1, 3), (1, 3, 4), (-1, 4, 3)],
                                                      "E31+E13+E34-E43"), "b"),
               ActionStep(_B(1, 4), "c"), ActionStep(E15, "r")),
              _cf_535, ("r (cosh c - (a^2-b^2) e^c/2)", "r a e^c", "r b e^c", "r (sinh c + (a^2-b^2) e^c/2)"),
              None, "Fig 6e", ("E(2,2)", "O(2,2)", "E(1,1)", "E(1)xE(1)"), "(5.35)", None,
              _sphere_norm, "sphere", _sing_r, flags=("action derived",)),
    ]
    return charts


def auxiliary_charts() -> list[Chart]:
    """Cartesian chart for the degenerate k0=2 MASA plus the 1- and 2-dim factor charts."""
    E_ = lambda terms, label, n: A.combo(terms, n, label)
    cart = Chart("C_M47_cart", SpaceId.M4C, A.KAB, (_P("a1", True), _P("a2", True), _P("s3"), _P("s4")),
                 (ActionStep(E15, "a1"), ActionStep(_g([(1, 2, 5)], "E25"), "a2"),
                  ActionStep(_g([(1, 3, 5)], "E35"), "s3"), ActionStep(E45, "s4")),
                 _cf_cart4, ("a1", "a2", "s3", "s4"), "3.L341", "", ("E(4,C)", "translations"), "(3.L341)",
                 "M47_2", None, "generic", None, auxiliary=True)
    m1 = A._metric("cartesian-1", [[1]])
    m2 = A._metric("identity-2", [[1, 0], [0, 1]])
    m11 = A._metric("diag(1,-1)", [[1, 0], [0, -1]], (1, 1))
    f_cart = Chart("F_cart", SpaceId.M4C, m1, (_P("u", True),), (ActionStep(E_([(1, 1, 2)], "E12", 1), "u"),),
                   lambda p: [p["u"]], ("u",), None, "", ("E(1)",), "", None, None, "generic", None, auxiliary=True)
    f_polar = Chart("F_polar", SpaceId.M4C, m2, (_P("r"), _P("a", True)),
                    (ActionStep(E_([(1, 2, 1), (-1, 1, 2)], "E21-E12", 2), "a"), ActionStep(E_([(1, 1, 3)], "E13", 2), "r")),
                    lambda p: [p["r"] * cos(p["a"]), p["r"] * sin(p["a"])], ("r cos a", "r sin a"), None, "",
                    ("E(2)", "O(2)"), "", None, lambda p: p["r"] ** 2, "sphere", _sing_r, auxiliary=True)
    f_hyp = Chart("F_hyppolar", SpaceId.M22, m11, (R_REAL, _P("a", True)),
                  (ActionStep(E_([(1, 1, 2), (1, 2, 1)], "E12+E21", 2), "a"), ActionStep(E_([(1, 1, 3)], "E13", 2), "r")),
                  lambda p: [p["r"] * cosh(p["a"]), p["r"] * sinh(p["a"])], ("r cosh a", "r sinh a"), None, "",
                  ("E(1,1)", "O(1,1)"), "", None, lambda p: p["r"] ** 2, "sphere", _sing_r, auxiliary=True)
    return [cart, f_cart, f_polar, f_hyp]


def chart_catalog(space: SpaceId | str, **constants) -> list[Chart]:
    """Charts of a space. Degenerate orbits are excluded; M31 includes stubs."""
    space = SpaceId.parse(space) if isinstance(space, str) else space
    return list(_catalog(space, tuple(sorted(constants.items()))))


@functools.lru_cache(maxsize=64)
def _catalog(space: SpaceId, constants: tuple) -> tuple:
    kw = dict(constants)
    if space is SpaceId.M4C:
        return tuple(_m4c_charts(**kw))
    if space is SpaceId.M3C:
        return tuple(_m3c_charts(**kw))
    if space is SpaceId.M4R:
        return tuple(_m4r_charts(**kw))
    if space is SpaceId.M31:
        return tuple(_m31_charts(**kw))
    return tuple(_m22_charts(**kw))


def all_charts(include_auxiliary: bool = False) -> list[Chart]:
    out = []
    for s in SpaceId:
        out.extend(chart_catalog(s))
    if include_auxiliary:
        out.extend(auxiliary_charts())
    return out


def get_chart(chart_id: str, **constants) -> Chart:
    for s in SpaceId:
        try:
            cat = chart_catalog(s, **constants)
        except TypeError:
            cat = chart_catalog(s)
        for c in cat:
            if c.id == chart_id:
                return c
    for c in auxiliary_charts():
        if c.id == chart_id:
            return c
    raise KeyError(f"unknown chart {chart_id!r}")


def chart_variants() -> list[Chart]:
    """Extra constant choices exercised by the dual-path and Laplacian suites."""
    out = []
    for beta in (0.5, complex(0.3, 0.4), complex(math.cos(math.pi / 3), math.sin(math.pi / 3))):
        out.append(_m4c_charts(beta=beta)[3])
    out.append(_m4c_charts(kappa=0)[4])
    for beta in (-1.0, -0.4, 1.0):
        out.append(_m31_charts(beta=beta)[2])
        out.append(_m22_charts(beta=beta)[6])
    out.append(_m22_charts(kappa=0)[7])
    return out
