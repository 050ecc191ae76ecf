"""Laplace-Beltrami operators: metric-derived (via jets) and tabulated closed forms.

Box f = g^{ik} d_i d_k f + (d_i g^{ik}) d_k f + 1/2 g^{ik} tr(g^{-1} d_i g) d_k f.
There is no -1/2 factor; ``hamiltonian_apply`` gives H = -Box/2.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from . import charts as C
from . import jets as J
from .charts import Chart

Coeff = Callable[[Mapping], complex]


@dataclass(frozen=True)
class LaplacianTable:
    """Closed-form operator sum(coeff * derivative) over chart parameters.

    A term key is a tuple of one or two parameter names; a pair (u, v) with u != v
    means the mixed derivative d_u d_v with the full coefficient.
    """

    table_id: str
    names: tuple
    terms: tuple
    paper_eq: str = ""
    printed: bool = True
    notes: tuple = ()

    def coefficients(self, params: Mapping) -> tuple[np.ndarray, np.ndarray]:
        """(S, F) with the operator equal to sum S_ik d_i d_k + sum F_k d_k, S symmetric."""
        n = len(self.names)
        idx = {nm: i for i, nm in enumerate(self.names)}
        S = np.zeros((n, n), complex)
        F = np.zeros(n, complex)
        for key, coeff in self.terms:
            v = complex(coeff(params))
            if len(key) == 1:
                F[idx[key[0]]] += v
            elif key[0] == key[1]:
                S[idx[key[0]], idx[key[0]]] += v
            else:
                i, k = idx[key[0]], idx[key[1]]
                S[i, k] += v / 2
                S[k, i] += v / 2
        return S, F

    def coefficient_names(self) -> set:
        return {nm for key, _ in self.terms for nm in key}

    def to_json(self) -> dict:
        return {"table_id": self.table_id, "params": list(self.names),
                "terms": [list(k) for k, _ in self.terms], "paper_eq": self.paper_eq,
                "printed": self.printed, "notes": list(self.notes)}


# -- tables --------------------------------------------------------------------------------

def _radial(angular: list, names=("r", "c", "a", "b")) -> tuple:
    """d_r^2 + (3/r) d_r + (1/r^2) * angular operator."""
    terms = [(("r", "r"), lambda p: 1.0), (("r",), lambda p: 3 / p["r"])]
    for key, coeff in angular:
        terms.append((key, (lambda cf: lambda p: cf(p) / p["r"] ** 2)(coeff)))
    return tuple(terms)


def _sec2(x):
    return 1 / cmath.cos(x) ** 2


def _tables(beta=0.5, kappa=1) -> dict:
    e = cmath.exp
    rcab = ("r", "c", "a", "b")
    zraa = ("z", "r", "a1", "a2")
    T = {}

    def add(tid, names, terms, eq, printed=True, notes=()):
        T[tid] = LaplacianTable(tid, tuple(names), tuple(terms), eq, printed, tuple(notes))

    add("3.318+3.19", rcab, _radial([
        (("c", "c"), lambda p: 1.0),
        (("c",), lambda p: 2 / cmath.tan(2 * p["c"])),
        (("a", "a"), lambda p: _sec2(p["c"])),
        (("b", "b"), lambda p: 1 / cmath.sin(p["c"]) ** 2)]), "(3.318)+(3.19)")
    add("3.317", rcab, _radial([
        (("c", "c"), lambda p: -1.0),
        (("c",), lambda p: 2.0),
        (("b", "b"), lambda p: 4 * e(4 * p["c"])),
        (("a", "b"), lambda p: -4 * e(2 * p["c"]))]), "(3.318)+(3.317)",
        notes=("the printed 4e^{4c} d/db^2 is read as a second derivative",))
    add("3.L325", zraa, [
        (("z", "r"), lambda p: 2.0), (("z",), lambda p: 2 / p["r"]),
        (("a1", "a1"), lambda p: 1 / p["r"] ** 2), (("a2", "a2"), lambda p: 1 / p["r"] ** 2)], "(3.L325)")
    b = complex(beta)
    add("3.L329", zraa, [
        (("z", "r"), lambda p: 2.0),
        (("z",), lambda p: (2 * p["r"] + b + 1) / ((p["r"] + 1) * (p["r"] + b))),
        (("a1", "a1"), lambda p: 1 / (p["r"] + 1) ** 2),
        (("a2", "a2"), lambda p: 1 / (p["r"] + b) ** 2)], "(3.L329)")
    k = complex(kappa)
    add("3.L333", zraa, [
        (("z", "r"), lambda p: 2.0), (("z",), lambda p: 2 / (p["r"] + k)),
        (("a1", "a1"), lambda p: -2 / (p["r"] + k) ** 3),
        (("a1", "a2"), lambda p: 2 / (p["r"] + k) ** 2)], "(3.L333)")
    add("3.L337", ("z", "a1", "a2", "r"), [
        (("a1", "r"), lambda p: 2.0), (("a2", "a2"), lambda p: 2 * p["r"]),
        (("a2", "z"), lambda p: 2.0)], "(3.L337)")
    add("3.L341", ("a1", "a2", "s3", "s4"), [
        (("a1", "s3"), lambda p: 2.0), (("a2", "s4"), lambda p: 2.0)], "(3.L341)")
    add("3.346_k0", ("z", "r", "a"), [
        (("r", "z"), lambda p: 2.0), (("a", "a"), lambda p: 1 / p["r"] ** 2),
        (("z",), lambda p: 1 / p["r"])], "(3.346), kappa=0")
    add("3.346_k1", ("z", "r", "a"), [
        (("r", "r"), lambda p: 1.0), (("a", "z"), lambda p: -2.0),
        (("z", "z"), lambda p: 2 * p["r"])], "(3.346), kappa=1")
    add("4C1", rcab, _radial([
        (("c", "c"), lambda p: 1.0), (("c",), lambda p: -2 * cmath.tan(p["c"])),
        (("b", "b"), lambda p: _sec2(p["c"])),
        (("a", "a"), lambda p: _sec2(p["c"]) * _sec2(p["b"])),
        (("b",), lambda p: -cmath.tan(p["b"]) * _sec2(p["c"]))]), "(3.4C1) Laplacian")
    add("4C2", rcab, _radial([
        (("c", "c"), lambda p: 1.0), (("c",), lambda p: -2 * cmath.tan(p["c"])),
        (("b", "b"), lambda p: _sec2(p["c"])), (("b",), lambda p: 1j * _sec2(p["c"])),
        (("a", "a"), lambda p: e(-2j * p["b"]) * _sec2(p["c"]))]), "(3.4C2) Laplacian")
    add("4C3", rcab, _radial([
        (("c", "c"), lambda p: 1.0), (("c",), lambda p: 2j),
        (("b", "b"), lambda p: e(-2j * p["c"])), (("b",), lambda p: e(-2j * p["c"]) / p["b"]),
        (("a", "a"), lambda p: e(-2j * p["c"]) / p["b"] ** 2)]), "(3.4C3) Laplacian")
    add("4C4", ("r", "c", "a1", "a2"), _radial([
        (("c", "c"), lambda p: 1.0), (("c",), lambda p: 2j),
        (("a1", "a1"), lambda p: e(-2j * p["c"])), (("a2", "a2"), lambda p: e(-2j * p["c"]))]),
        "(3.4C4) Laplacian")
    add("5.5", rcab, _radial([
        (("c", "c"), lambda p: -1.0),
        (("c",), lambda p: -2 * (e(4 * p["c"]) + 1) / (e(4 * p["c"]) - 1)),
        (("a", "a"), lambda p: 4 * e(2 * p["c"]) / (e(2 * p["c"]) + 1) ** 2),
        (("b", "b"), lambda p: -4 * e(2 * p["c"]) / (e(2 * p["c"]) - 1) ** 2)]), "(5.5)")
    add("5.11", rcab, _radial([
        (("c", "c"), lambda p: -1.0),
        (("c",), lambda p: -2 * (e(4 * p["c"]) + 1) / (e(4 * p["c"]) - 1)),
        (("a", "a"), lambda p: -4 * e(2 * p["c"]) / (e(2 * p["c"]) + 1) ** 2),
        (("b", "b"), lambda p: 4 * e(2 * p["c"]) / (e(2 * p["c"]) - 1) ** 2)]), "(5.11)")
    add("5.517", rcab, _radial([
        (("c", "c"), lambda p: -1.0), (("c",), lambda p: -2 * cmath.tanh(2 * p["c"])),
        (("a", "b"), lambda p: 2 * cmath.sinh(2 * p["c"]) / cmath.cosh(2 * p["c"]) ** 2),
        (("a", "a"), lambda p: 1 / cmath.cosh(2 * p["c"]) ** 2),
        (("b", "b"), lambda p: -1 / cmath.cosh(2 * p["c"]) ** 2)]), "(5.517)")
    add("5.29", rcab, [
        (("r", "r"), lambda p: 1.0), (("r",), lambda p: 3 / p["r"]),
        (("c", "c"), lambda p: -1 / p["r"] ** 2), (("c",), lambda p: 1 / p["r"] ** 2),
        (("b", "b"), lambda p: -4 * e(4 * p["c"]) / p["r"] ** 2),
        (("a", "b"), lambda p: -4 * e(2 * p["c"]) / p["r"] ** 2)], "(5.29)")
    # metric-derived replacements for printed forms that fail, kept for reference
    add("5.517-derived", rcab, _radial([
        (("c", "c"), lambda p: -1.0), (("c",), lambda p: -2 * cmath.tanh(2 * p["c"])),
        (("a", "b"), lambda p: 2 * cmath.sinh(2 * p["c"]) / cmath.cosh(2 * p["c"]) ** 2),
        (("a", "a"), lambda p: -1 / cmath.cosh(2 * p["c"]) ** 2),
        (("b", "b"), lambda p: 1 / cmath.cosh(2 * p["c"]) ** 2)]), "", printed=False,
        notes=("sign of the d_a^2 - d_b^2 bracket reversed relative to the printed form",))
    add("5.29-derived", rcab, _radial([
        (("c", "c"), lambda p: -1.0), (("c",), lambda p: 2.0),
        (("b", "b"), lambda p: -4 * e(4 * p["c"])),
        (("a", "b"), lambda p: -4 * e(2 * p["c"]))]), "", printed=False,
        notes=("first-order c coefficient is 2, as in the complex analog",))
    # real M(2,2) forms of the k0=1 charts with an indefinite middle block
    add("3.L325r", zraa, [
        (("z", "r"), lambda p: 2.0), (("z",), lambda p: 2 / p["r"]),
        (("a1", "a1"), lambda p: 1 / p["r"] ** 2), (("a2", "a2"), lambda p: -1 / p["r"] ** 2)],
        "", printed=False)
    add("3.L329r", zraa, [
        (("z", "r"), lambda p: 2.0),
        (("z",), lambda p: (2 * p["r"] + b + 1) / ((p["r"] + 1) * (p["r"] + b))),
        (("a1", "a1"), lambda p: 1 / (p["r"] + 1) ** 2),
        (("a2", "a2"), lambda p: -1 / (p["r"] + b) ** 2)], "", printed=False)
    return T


PRINTED_TABLE_IDS = ("3.318+3.19", "3.317", "3.L325", "3.L329", "3.L333", "3.L337", "3.L341",
                     "3.346_k0", "3.346_k1", "4C1", "4C2", "4C3", "4C4", "5.5", "5.11", "5.517", "5.29")

# chart on which each printed table is checked
TABLE_CHART = {"3.318+3.19": "C_M41", "3.317": "C_M42", "3.L325": "C_M43", "3.L329": "C_M44",
               "3.L333": "C_M45", "3.L337": "C_M46", "3.L341": "C_M47_cart", "3.346_k0": "C_3C_k0",
               "3.346_k1": "C_3C_k1", "4C1": "C_4C1", "4C2": "C_4C2", "4C3": "C_4C3", "4C4": "C_4C4",
               "5.5": "E22_a", "5.11": "E22_b", "5.517": "E22_c", "5.29": "E22_e"}


def get_table(table_id: str, constants: Mapping | None = None) -> LaplacianTable:
    consts = dict(constants or {})
    kw = {k: consts[k] for k in ("beta", "kappa") if k in consts}
    tables = _tables(**kw)
    if table_id not in tables:
        raise KeyError(f"unknown Laplacian table {table_id!r}")
    return tables[table_id]


def table_for_chart(chart: Chart) -> LaplacianTable | None:
    if chart.laplacian_id is None:
        return None
    return get_table(chart.laplacian_id, dict(chart.constants))


# -- operators -----------------------------------------------------------------------------

def derived_coefficients(chart: Chart, params) -> tuple[np.ndarray, np.ndarray]:
    """(S, F) of the metric-derived operator: S = g^{-1}, F_k from the expanded divergence."""
    g, dg = C.metric_jets(chart, params)
    if C._singular(g, 1e12):
        raise C.CoordinateSingularity(f"{chart.id}: singular metric at {params}")
    gi = np.linalg.inv(g)
    n = len(g)
    dgi = np.array([-gi @ dg[i] @ gi for i in range(n)])
    logdet = np.array([np.trace(gi @ dg[i]) for i in range(n)])
    F = np.einsum("iik->k", dgi) + 0.5 * gi.T @ logdet
    return gi, F


def _f_jet(chart: Chart, f: Callable, params) -> J.Jet2:
    p = C.check_domain(chart, params)
    n = chart.dim
    args = {nm: J.Jet2.variable(complex(p[nm]), i, n) for i, nm in enumerate(chart.names)}
    out = f(args)
    return out if isinstance(out, J.Jet2) else J.Jet2.constant(out, n)


def apply_coefficients(S: np.ndarray, F: np.ndarray, fj: J.Jet2) -> complex:
    return complex(np.sum(S * fj.hess) + F @ fj.grad)


def laplace_beltrami_apply(chart: Chart, f: Callable, params) -> complex:
    """Box f at params; f maps a dict of parameter jets to a jet."""
    S, F = derived_coefficients(chart, params)
    return apply_coefficients(S, F, _f_jet(chart, f, params))


def hamiltonian_apply(chart: Chart, f: Callable, params) -> complex:
    """H f = -Box f / 2 (the free Hamiltonian)."""
    return -0.5 * laplace_beltrami_apply(chart, f, params)


def closed_form_apply(table: LaplacianTable, f: Callable, params, chart: Chart | None = None) -> complex:
    if chart is not None:
        p = C.check_domain(chart, params)
    else:
        p = dict(zip(table.names, params)) if not isinstance(params, Mapping) else dict(params)
    p = {k: complex(v) for k, v in p.items()}
    n = len(table.names)
    args = {nm: J.Jet2.variable(p[nm], i, n) for i, nm in enumerate(table.names)}
    fj = f(args)
    if not isinstance(fj, J.Jet2):
        fj = J.Jet2.constant(fj, n)
    S, F = table.coefficients(p)
    return apply_coefficients(S, F, fj)


def ambient_box(K: np.ndarray, hess: np.ndarray) -> complex:
    """sum (K^{-1})_ik d_i d_k in Cartesian coordinates."""
    return complex(np.sum(np.linalg.inv(K) * hess))


# -- verification --------------------------------------------------------------------------

def random_test_function(names: Sequence[str], rng: np.random.Generator, degree: int = 3,
                         lin_scale: float = 0.4) -> Callable:
    """f = P(u) exp(l(u)) with integer coefficients in [-2, 2] for P."""
    n = len(names)
    monos = [m for d in range(degree + 1) for m in itertools.combinations_with_replacement(range(n), d)]
    coeffs = rng.integers(-2, 3, size=len(monos))
    if not np.any(coeffs):
        coeffs[0] = 1
    lin = rng.uniform(-lin_scale, lin_scale, size=n)

    def f(p):
        u = [p[nm] for nm in names]
        poly = 0
        for c, m in zip(coeffs, monos):
            if c:
                term = complex(int(c))
                for i in m:
                    term = u[i] * term
                poly = poly + term
        ell = 0
        for li, ui in zip(lin, u):
            ell = ell + ui * float(li)
        return poly * J.exp(ell) if isinstance(ell, J.Jet2) or isinstance(poly, J.Jet2) else poly * cmath.exp(ell)

    return f


@dataclass(frozen=True)
class LaplacianReport:
    chart_id: str
    table_id: str
    paper_eq: str
    samples: int
    test_functions: int
    max_rel_residual: float
    tol: float
    worst_term: str
    worst_term_discrepancy: float
    printed: bool

    @property
    def passed(self) -> bool:
        return self.max_rel_residual <= self.tol

    def to_json(self) -> dict:
        return {"chart_id": self.chart_id, "table_id": self.table_id, "paper_eq": self.paper_eq,
                "samples": self.samples, "test_functions": self.test_functions,
                "max_rel_residual": self.max_rel_residual, "tol": self.tol,
                "worst_term": self.worst_term, "worst_term_discrepancy": self.worst_term_discrepancy,
                "printed": self.printed, "pass": self.passed}


def _term_label(names, i, k=None):
    if k is None:
        return f"d/d{names[i]}"
    if i == k:
        return f"d2/d{names[i]}^2"
    return f"d2/d{names[i]}d{names[k]}"


def verify_laplacian(chart: Chart, n_samples: int = 20, n_test_functions: int = 5,
                     rng: np.random.Generator | None = None, table: LaplacianTable | None = None,
                     tol: float = 1e-8) -> LaplacianReport:
    """Compare the tabulated operator with the metric-derived one on random test functions."""
    rng = rng if rng is not None else np.random.default_rng(0)
    table = table or table_for_chart(chart)
    if table is None:
        raise ValueError(f"{chart.id} has no Laplacian table")
    if tuple(sorted(table.names)) != tuple(sorted(chart.names)):
        raise ValueError(f"table {table.table_id} parameters {table.names} do not match chart {chart.names}")
    funcs = [random_test_function(chart.names, rng) for _ in range(n_test_functions)]
    worst = 0.0
    worst_term, worst_disc = "", 0.0
    perm = [table.names.index(nm) for nm in chart.names]
    for _ in range(n_samples):
        s = C.sample_params(chart, rng)
        p = s.as_dict()
        Sd, Fd = derived_coefficients(chart, s.params)
        St, Ft = table.coefficients(p)
        St, Ft = St[np.ix_(perm, perm)], Ft[perm]
        for f in funcs:
            fj = _f_jet(chart, f, s.params)
            lb = apply_coefficients(Sd, Fd, fj)
            cf = apply_coefficients(St, Ft, fj)
            worst = max(worst, abs(lb - cf) / (1 + abs(cf)))
        names = chart.names
        n = len(names)
        for i in range(n):
            d = abs(Fd[i] - Ft[i]) / (1 + abs(Ft[i]))
            if d > worst_disc:
                worst_disc, worst_term = d, _term_label(names, i)
            for k in range(i, n):
                full_d = Sd[i, k] * (1 if i == k else 2)
                full_t = St[i, k] * (1 if i == k else 2)
                d = abs(full_d - full_t) / (1 + abs(full_t))
                if d > worst_disc:
                    worst_disc, worst_term = d, _term_label(names, i, k)
    return LaplacianReport(chart.id, table.table_id, table.paper_eq, n_samples, n_test_functions,
                           float(worst), tol, worst_term, float(worst_disc), table.printed)
