"""Matrix realization of Euclidean and pseudo-Euclidean isometry algebras.

An element of e(K) is stored as an (n+1)x(n+1) block matrix [[X, alpha], [0, 0]]
acting on homogeneous coordinates (x, 1). X is in o(K) when X K + K X^T = 0.
"""

from __future__ import annotations

import enum
import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .exact import QI, ONE, ZERO


class SpaceId(enum.Enum):
    M4C = "m4c"
    M3C = "m3c"
    M4R = "m4r"
    M31 = "m31"
    M22 = "m22"

    @property
    def is_complex(self) -> bool:
        return self in (SpaceId.M4C, SpaceId.M3C)

    @property
    def dim(self) -> int:
        return 3 if self is SpaceId.M3C else 4

    @property
    def signature(self) -> tuple[int, int] | None:
        return {SpaceId.M4R: (4, 0), SpaceId.M31: (3, 1), SpaceId.M22: (2, 2)}.get(self)

    @classmethod
    def parse(cls, s: str) -> "SpaceId":
        try:
            return cls(s.lower())
        except ValueError:
            raise ValueError(f"unknown space {s!r}; expected one of "
                             + ", ".join(m.value for m in cls)) from None


@dataclass(frozen=True)
class MetricForm:
    """A nonsingular symmetric bilinear form K."""

    form_id: str
    entries: tuple
    signature: tuple[int, int] | None = None

    def __post_init__(self):
        k = self.entries
        n = len(k)
        if any(len(row) != n for row in k):
            raise ValueError("metric must be square")
        if k != exact.transpose(k):
            raise ValueError(f"metric {self.form_id} is not symmetric")
        if exact.det(k) == 0:
            raise ValueError(f"metric {self.form_id} is singular")
        if self.signature is not None:
            ev = np.linalg.eigvalsh(self.to_numpy().real)
            p, q = int(np.sum(ev > 0)), int(np.sum(ev < 0))
            if (p, q) != tuple(self.signature):
                raise ValueError(f"metric {self.form_id}: eigen-signature {(p, q)} "
                                 f"!= declared {self.signature}")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def inverse(self) -> tuple:
        return exact.inverse(self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.entries])

    def to_json(self) -> dict:
        return {"form_id": self.form_id,
                "entries": [[exact.to_string(x) for x in row] for row in self.entries],
                "signature": list(self.signature) if self.signature else None}


def _metric(form_id, rows, signature=None) -> MetricForm:
    return MetricForm(form_id, exact.as_matrix(rows), signature)


def _antidiag(n):
    return [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]


I4 = _metric("identity", np.eye(4, dtype=int).tolist())
I4_REAL = _metric("identity", np.eye(4, dtype=int).tolist(), (4, 0))
KAB = _metric("antidiagonal-blocks", [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
KAB_REAL = _metric("antidiagonal-blocks", KAB.entries, (2, 2))
KLC = _metric("light-cone", [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]])
KLC_31 = _metric("light-cone", KLC.entries, (3, 1))
# real light-cone form with an indefinite middle block, signature (2,2)
KLC_22 = _metric("light-cone-indefinite",
                 [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]], (2, 2))
KFULL = _metric("full-antidiagonal", _antidiag(4))
KFULL_REAL = _metric("full-antidiagonal", _antidiag(4), (2, 2))
D22 = _metric("diag(1,1,-1,-1)", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]], (2, 2))
D31 = _metric("diag(1,1,1,-1)", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]], (3, 1))
K3 = _metric("light-cone-3", _antidiag(3))

METRICS = {m.form_id + (f"/{m.signature[0]},{m.signature[1]}" if m.signature else ""): m
           for m in (I4, I4_REAL, KAB, KAB_REAL, KLC, KLC_31, KLC_22, KFULL, KFULL_REAL,
                     D22, D31, K3)}


@dataclass(frozen=True)
class AlgebraElement:
    """Block matrix [[X, alpha], [0, 0]] of size (n+1)x(n+1)."""

    matrix: tuple
    label: str = ""

    def __post_init__(self):
        m = self.matrix
        size = len(m)
        if any(len(row) != size for row in m):
            raise ValueError("algebra element must be square")
        if not all(exact.is_zero(x) for x in m[-1]):
            raise ValueError("last row of an algebra element must vanish")

    @property
    def n(self) -> int:
        return len(self.matrix) - 1

    @property
    def linear_part(self) -> tuple:
        return tuple(row[:-1] for row in self.matrix[:-1])

    @property
    def translation(self) -> tuple:
        return tuple(row[-1] for row in self.matrix[:-1])

    @property
    def is_exact(self) -> bool:
        return all(exact.is_exact(x) for row in self.matrix for x in row)

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.matrix])

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same(self, other)
        return AlgebraElement(exact.mat_add(self.matrix, other.matrix), _join(self.label, "+", other.label))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same(self, other)
        return AlgebraElement(exact.mat_sub(self.matrix, other.matrix), _join(self.label, "-", other.label))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(exact.mat_scale(QI(-1), self.matrix), f"-({self.label})" if self.label else "")

    def scale(self, s) -> "AlgebraElement":
        if not exact.is_exact(s):
            try:
                s = QI.coerce(s)
            except TypeError:
                s = complex(s)
        return AlgebraElement(exact.mat_scale(s, self.matrix), f"{s}*({self.label})" if self.label else "")

    def __rmul__(self, s) -> "AlgebraElement":
        return self.scale(s)

    def relabel(self, label: str) -> "AlgebraElement":
        return AlgebraElement(self.matrix, label)

    def is_zero(self, tol: float = 0.0) -> bool:
        return exact.is_zero_matrix(self.matrix, tol)

    def to_json(self) -> list:
        return [[exact.to_string(x) if exact.is_exact(x) else repr(complex(x)) for x in row]
                for row in self.matrix]


def _join(a, op, b):
    if a and b:
        return f"{a}{op}{b}"
    return ""


def _check_same(a: AlgebraElement, b: AlgebraElement):
    if len(a.matrix) != len(b.matrix):
        raise ValueError(f"dimension mismatch: {len(a.matrix)} vs {len(b.matrix)}")


def E(i: int, k: int, n: int = 4) -> AlgebraElement:
    """Matrix unit E_ik (1-based) in the (n+1)x(n+1) realization."""
    m = [[ZERO] * (n + 1) for _ in range(n + 1)]
    m[i - 1][k - 1] = ONE
    return AlgebraElement(tuple(tuple(r) for r in m), f"E{i}{k}")


def zero_element(n: int = 4) -> AlgebraElement:
    return AlgebraElement(exact.zeros(n + 1), "0")


def combo(terms: Sequence[tuple], n: int = 4, label: str = "") -> AlgebraElement:
    """Linear combination sum(c * E_ik) from (c, i, k) triples."""
    out = zero_element(n)
    for c, i, k in terms:
        out = AlgebraElement(exact.mat_add(out.matrix, E(i, k, n).scale(c).matrix))
    return out.relabel(label)


def rot(i: int, k: int, n: int = 4) -> AlgebraElement:
    """L_ik = -E_ik + E_ki."""
    return combo([(-1, i, k), (1, k, i)], n, f"L{i}{k}")


def boost(i: int, k: int, n: int = 4) -> AlgebraElement:
    return combo([(1, i, k), (1, k, i)], n, f"B{i}{k}")


# -- operations ------------------------------------------------------------------------

def commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """ab - ba, exact for exact inputs."""
    _check_same(a, b)
    ab = exact.mat_mul(a.matrix, b.matrix)
    ba = exact.mat_mul(b.matrix, a.matrix)
    return AlgebraElement(exact.mat_sub(ab, ba), f"[{a.label},{b.label}]" if a.label and b.label else "")


def is_isometry(x: AlgebraElement, k: MetricForm, tol: float = 1e-12) -> bool:
    """True iff X K + K X^T = 0 for the linear part X."""
    X = x.linear_part
    if len(X) != k.n:
        raise ValueError("metric and element dimensions differ")
    lhs = exact.mat_add(exact.mat_mul(X, k.entries), exact.mat_mul(k.entries, exact.transpose(X)))
    return exact.is_zero_matrix(lhs, 0.0 if x.is_exact else tol)


class ExpError(RuntimeError):
    """Raised when the series fallback of one_param_exp does not converge."""

    def __init__(self, msg, residual):
        super().__init__(f"{msg} (residual {residual:.3e})")
        self.residual = residual


def _cubic_constant(X, X2, X3):
    """Return c with X^3 = c X exactly, or None."""
    c = None
    for r3, r1 in zip(X3, X):
        for a, b in zip(r3, r1):
            if b:
                ratio = a / b
                if c is None:
                    c = ratio
                elif ratio != c:
                    return None
            elif a:
                return None
    return ZERO if c is None else c


def _nilpotency_index(X, size):
    P = X
    powers = [X]
    for k in range(2, size + 1):
        P = exact.mat_mul(P, X)
        if exact.is_zero_matrix(P):
            return k, powers
        powers.append(P)
    return None, powers


def exp_kind(x: AlgebraElement) -> str:
    """Classify the closed form used by one_param_exp."""
    if not x.is_exact:
        return "series"
    M = x.matrix
    size = len(M)
    k, _ = _nilpotency_index(M, size)
    if k is not None:
        return "nilpotent"
    M2 = exact.mat_mul(M, M)
    c = _cubic_constant(M, M2, exact.mat_mul(M2, M))
    if c is not None:
        return "cubic"
    return "series"


def _f1(w, t):
    """sinh(w t)/w, with w**2 given; even in w so the branch is irrelevant."""
    if w == 0:
        return t
    return np.sinh(w * t) / w


def _f2(w, t):
    if w == 0:
        return t * t / 2
    return (np.cosh(w * t) - 1) / (w * w)


@functools.lru_cache(maxsize=1024)
def _exp_plan(M: tuple) -> tuple:
    """Exact analysis of a generator, shared by every exponential of it."""
    size = len(M)
    k, powers = _nilpotency_index(M, size)
    if k is not None:
        return ("nilpotent", tuple(np.array([[complex(v) for v in row] for row in P]) for P in powers))
    M2 = exact.mat_mul(M, M)
    c = _cubic_constant(M, M2, exact.mat_mul(M2, M))
    if c is not None:
        return ("cubic", np.sqrt(complex(c)), np.array([[complex(v) for v in row] for row in M2]))
    return ("series",)


def one_param_exp(x: AlgebraElement, t, parts: Sequence[AlgebraElement] | None = None) -> np.ndarray:
    """exp(t X) as a complex array using per-generator closed forms.

    Nilpotent X: terminating series. X^3 = c X (rotations, boosts, dilations and
    their commuting sums on disjoint planes): I + f1 X + f2 X^2 with
    f1 = sinh(wt)/w, f2 = (cosh(wt)-1)/w^2, w^2 = c. Commuting ``parts`` are
    exponentiated separately and multiplied. Anything else falls back to
    scaling and squaring.
    """
    t = complex(t)
    size = len(x.matrix)
    if parts:
        out = np.eye(size, dtype=complex)
        for p in parts:
            out = out @ one_param_exp(p, t)
        return out
    Xn = x.to_numpy()
    if x.is_exact:
        plan = _exp_plan(x.matrix)
        if plan[0] == "nilpotent":
            out = np.eye(size, dtype=complex)
            term = 1.0 + 0j
            for j, P in enumerate(plan[1], start=1):
                term = term * t / j
                out = out + term * P
            return out
        if plan[0] == "cubic":
            w, X2n = plan[1], plan[2]
            return np.eye(size, dtype=complex) + _f1(w, t) * Xn + _f2(w, t) * X2n
    return _series_exp(Xn * t)


def _series_exp(A: np.ndarray, rtol: float = 1e-13) -> np.ndarray:
    norm = np.linalg.norm(A, 1)
    s = max(0, int(math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0)
    B = A / (2 ** s)
    out = np.eye(len(A), dtype=complex)
    term = np.eye(len(A), dtype=complex)
    converged = False
    for k in range(1, 60):
        term = term @ B / k
        out = out + term
        if np.linalg.norm(term, 1) <= rtol * np.linalg.norm(out, 1):
            converged = True
            break
    if not converged or not np.all(np.isfinite(out)):
        raise ExpError("matrix exponential series did not converge", float(np.linalg.norm(term, 1)))
    for _ in range(s):
        out = out @ out
    if not np.all(np.isfinite(out)):
        raise ExpError("matrix exponential overflowed", float("inf"))
    return out


def conjugate(g, k1: MetricForm, elements: Sequence[AlgebraElement]):
    """Change of basis x -> g x. Returns (g K1 g^T, [g X g^-1 with translation g alpha]).

    g may be exact (tuple of tuples / nested ints) or a numpy array.
    """
    if isinstance(g, np.ndarray):
        G = tuple(tuple(complex(v) for v in row) for row in g)
        if abs(np.linalg.det(g)) < 1e-14:
            raise ZeroDivisionError("conjugating matrix is singular")
        Ginv = tuple(tuple(complex(v) for v in row) for row in np.linalg.inv(g))
        exact_mode = False
    else:
        G = exact.as_matrix(g)
        if exact.det(G) == 0:
            raise ZeroDivisionError("conjugating matrix is singular")
        Ginv = exact.inverse(G)
        exact_mode = True
    k2 = exact.mat_mul(exact.mat_mul(G, k1.entries), exact.transpose(G))
    if exact_mode:
        metric = MetricForm(k1.form_id + "*", k2, None)
    else:
        metric = MetricForm(k1.form_id + "*", tuple(tuple(QI.coerce(complex(round(v.real, 12), round(v.imag, 12)))
                                                         if _close_to_int(v) else v for v in row) for row in k2), None)
    out = []
    n = len(G)
    for x in elements:
        X = exact.mat_mul(exact.mat_mul(G, x.linear_part), Ginv)
        a = exact.mat_mul(G, tuple((v,) for v in x.translation))
        rows = [tuple(X[i]) + (a[i][0],) for i in range(n)]
        rows.append(tuple(ZERO for _ in range(n + 1)))
        out.append(AlgebraElement(tuple(rows), f"g.{x.label}" if x.label else ""))
    return metric, out


def _close_to_int(v) -> bool:
    v = complex(v)
    return abs(v.real - round(v.real)) < 1e-12 and abs(v.imag - round(v.imag)) < 1e-12


# -- isometry algebra basis and centralizers ---------------------------------------------

def isometry_basis(k: MetricForm) -> list[AlgebraElement]:
    """Basis of e(K): (E_ab - E_ba) K^{-1} for a<b, then the n translations."""
    n = k.n
    kinv = k.inverse
    basis = []
    for a in range(n):
        for b in range(a + 1, n):
            A = [[ZERO] * n for _ in range(n)]
            A[a][b] = ONE
            A[b][a] = -ONE
            X = exact.mat_mul(tuple(tuple(r) for r in A), kinv)
            rows = [tuple(X[i]) + (ZERO,) for i in range(n)] + [tuple(ZERO for _ in range(n + 1))]
            basis.append(AlgebraElement(tuple(rows), f"o{a + 1}{b + 1}"))
    for a in range(n):
        basis.append(E(a + 1, n + 1, n).relabel(f"P{a + 1}"))
    return basis


@dataclass(frozen=True)
class Masa:
    """A maximal Abelian subalgebra given by a basis of generators."""

    id: str
    space: SpaceId
    metric: MetricForm
    generators: tuple
    param_names: tuple
    k0: int
    decomposability_class: str
    paper_eq: str = ""
    degenerate: bool = False
    descends_from: str | None = None
    constants: tuple = ()
    notes: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.generators)

    def element(self, params: Sequence) -> AlgebraElement:
        if len(params) != self.dim:
            raise ValueError(f"{self.id} takes {self.dim} parameters")
        out = zero_element(self.metric.n)
        for p, g in zip(params, self.generators):
            out = AlgebraElement(exact.mat_add(out.matrix, g.scale(p).matrix))
        return out.relabel(self.id)

    def translation_subspace(self) -> list[tuple]:
        """Translations in the span: parameter vectors whose linear part vanishes."""
        n = self.metric.n
        rows = []
        for i in range(n):
            for j in range(n):
                rows.append([g.linear_part[i][j] for g in self.generators])
        ns = exact.nullspace(rows, self.dim)
        out = []
        for v in ns:
            alpha = tuple(sum((c * g.translation[i] for c, g in zip(v, self.generators)), ZERO)
                          for i in range(n))
            out.append(alpha)
        return out

    def isotropic_translation_count(self) -> int:
        """Dimension of the translation subspace if it is totally isotropic, else -1."""
        ts = self.translation_subspace()
        K = self.metric.entries
        for u in ts:
            for v in ts:
                form = sum((u[i] * K[i][j] * v[j] for i in range(len(u)) for j in range(len(v))), ZERO)
                if form != 0:
                    return -1
        return len(ts)

    def to_json(self) -> dict:
        return {"id": self.id, "space": self.space.value, "metric_form": self.metric.form_id,
                "params": list(self.param_names),
                "generators": [g.to_json() for g in self.generators],
                "k0": self.k0, "class": self.decomposability_class,
                "degenerate": self.degenerate, "descends_from": self.descends_from,
                "constants": {k: exact.to_string(v) for k, v in self.constants},
                "notes": list(self.notes), "paper_eq": self.paper_eq}


@dataclass(frozen=True)
class CentralizerReport:
    masa_id: str
    dim: int
    centralizer_dim: int
    is_abelian: bool
    is_maximal: bool
    sample_params: tuple
    retries: int

    def to_json(self) -> dict:
        return {"masa_id": self.masa_id, "dim": self.dim, "centralizer_dim": self.centralizer_dim,
                "is_abelian": self.is_abelian, "is_maximal": self.is_maximal,
                "sample_params": [[str(p) for p in ps] for ps in self.sample_params],
                "retries": self.retries}


def _random_rational(rng: random.Random) -> Fraction:
    den = rng.randint(1, 7)
    return Fraction(rng.randint(-5 * den, 5 * den), den)


def centralizer(elements: Sequence[AlgebraElement], k: MetricForm) -> list[AlgebraElement]:
    """Basis of {Y in e(K) : [X, Y] = 0 for all X in elements}, exact."""
    basis = isometry_basis(k)
    rows = []
    for X in elements:
        brackets = [commutator(X, B).matrix for B in basis]
        size = len(X.matrix)
        for i in range(size):
            for j in range(size):
                rows.append([br[i][j] for br in brackets])
    ns = exact.nullspace(rows, len(basis))
    out = []
    for v in ns:
        acc = zero_element(k.n)
        for c, B in zip(v, basis):
            if c:
                acc = AlgebraElement(exact.mat_add(acc.matrix, B.scale(c).matrix))
        out.append(acc)
    return out


def centralizer_check(m: Masa, k: MetricForm | None = None, seed: int = 0,
                      max_retries: int = 5) -> CentralizerReport:
    """Maximality test: the centralizer of the span equals the span.

    The span is realized by ``dim`` generic instantiations with random rational
    parameters; a rank-deficient draw is resampled.
    """
    k = k or m.metric
    rng = random.Random(seed)
    for attempt in range(max_retries + 1):
        params = [tuple(_random_rational(rng) for _ in range(m.dim)) for _ in range(m.dim)]
        if exact.rank([list(p) for p in params]) == m.dim:
            break
    else:
        raise RuntimeError(f"{m.id}: could not draw independent generic parameters")
    elems = [m.element([QI(p) for p in ps]) for ps in params]
    abelian = all(commutator(a, b).is_zero() for a in elems for b in elems)
    cen = centralizer(elems, k)
    span_rank = exact.rank([[x for row in g.matrix for x in row] for g in m.generators])
    joint = exact.rank([[x for row in g.matrix for x in row] for g in list(m.generators) + cen])
    maximal = abelian and len(cen) == span_rank and joint == span_rank
    return CentralizerReport(m.id, m.dim, len(cen), abelian, maximal, tuple(params), attempt)


def span_centralizer_check(gens: Sequence[AlgebraElement], k: MetricForm, label: str = "span") -> CentralizerReport:
    """Maximality test for an explicit list of generators (e.g. a single one)."""
    abelian = all(commutator(a, b).is_zero() for a in gens for b in gens)
    cen = centralizer(gens, k)
    span_rank = exact.rank([[x for row in g.matrix for x in row] for g in gens])
    joint = exact.rank([[x for row in g.matrix for x in row] for g in list(gens) + cen])
    maximal = abelian and len(cen) == span_rank and joint == span_rank
    return CentralizerReport(label, len(gens), len(cen), abelian, maximal, (), 0)


# -- catalog ----------------------------------------------------------------------------

def _c(terms, label, n=4):
    return combo(terms, n, label)


def _gens_m41():
    return (_c([(-1, 1, 2), (1, 2, 1)], "-(E12-E21)"), _c([(-1, 3, 4), (1, 4, 3)], "-(E34-E43)"))


def _gens_m42():
    return (_c([(1, 1, 1), (1, 2, 2), (-1, 3, 3), (-1, 4, 4)], "E11+E22-E33-E44"),
            _c([(1, 1, 2), (-1, 4, 3)], "E12-E43"))


def _gens_m43(mid=1):
    # mid = -1 gives the real form with an indefinite middle block
    return (_c([(-1, 1, 2), (1, 2, 4)], "-E12+E24"),
            _c([(-1, 1, 3), (1, 3, 4)], "-E13+E34") if mid == 1 else _c([(1, 1, 3), (1, 3, 4)], "E13+E34"),
            _c([(1, 1, 5)], "E15"))


def _coerce_const(x):
    try:
        return QI.coerce(x)
    except TypeError:
        return complex(x)


def _gens_m44(beta, mid=1):
    b = _coerce_const(beta)
    a2 = (_c([(-1, 1, 3), (1, 3, 4), (b, 3, 5)], f"-E13+E34+({b})E35") if mid == 1
          else _c([(1, 1, 3), (1, 3, 4), (b, 3, 5)], f"E13+E34+({b})E35"))
    return (_c([(-1, 1, 2), (1, 2, 4), (1, 2, 5)], "-E12+E24+E25"), a2, _c([(1, 1, 5)], "E15"))


def _gens_m45(kappa):
    k = _coerce_const(kappa)
    return (_c([(-1, 1, 2), (1, 3, 4), (k, 3, 5)], f"-E12+E34+{k}E35"),
            _c([(-1, 1, 3), (1, 2, 4), (1, 3, 5), (k, 2, 5)], f"-E13+E24+E35+{k}E25"),
            _c([(1, 1, 5)], "E15"))


def _gens_m46():
    return (_c([(1, 1, 4), (-1, 2, 3), (1, 4, 5)], "E14-E23+E45"),
            _c([(1, 1, 5)], "E15"), _c([(1, 2, 5)], "E25"))


def _gens_m47():
    return (_c([(1, 1, 4), (-1, 2, 3)], "E14-E23"), _c([(1, 1, 5)], "E15"), _c([(1, 2, 5)], "E25"))


def _gens_m3c(kappa):
    if kappa == 0:
        a = _c([(1, 1, 2), (-1, 2, 3)], "E12-E23", 3)
    else:
        a = _c([(1, 1, 2), (-1, 2, 3), (-1, 3, 4)], "E12-E23-E34", 3)
    return (a, _c([(1, 1, 4)], "E14", 3))


DEFAULT_BETA = Fraction(1, 2)
DEFAULT_KAPPA = 1


def _masa_m4c(beta=DEFAULT_BETA, kappa=DEFAULT_KAPPA):
    S = SpaceId.M4C
    return [
        Masa("M41_0", S, I4, _gens_m41(), ("a", "b"), 0, "Cartan", "(3.MV41)"),
        Masa("M42_0", S, KAB, _gens_m42(), ("a", "b"), 0, "OID-but-D", "(3.M420)"),
        Masa("M43_1", S, KLC, _gens_m43(), ("a1", "a2", "z"), 1, "MANS", "(3.V431)"),
        Masa("M44_1", S, KLC, _gens_m44(beta), ("a1", "a2", "z"), 1, "MANS", "(3.V441)",
             constants=(("beta", QI.coerce(beta)),)),
        Masa("M45_1", S, KFULL, _gens_m45(kappa), ("a1", "a2", "z"), 1, "MANS", "(3.V451)",
             constants=(("kappa", QI.coerce(kappa)),)),
        Masa("M46_2", S, KAB, _gens_m46(), ("z", "a1", "a2"), 2, "MANS", "(3.V462)"),
        Masa("M47_2", S, KAB, _gens_m47(), ("z", "a1", "a2"), 2, "MANS", "(3.338)", degenerate=True,
             notes=("orbits are 2-dimensional; no coordinate system",)),
    ]


def _masa_m3c():
    S = SpaceId.M3C
    return [
        Masa("M3C_k0", S, K3, _gens_m3c(0), ("a", "z"), 1, "MANS", "(3.eqM3C_kapa0)",
             constants=(("kappa", QI(0)),)),
        Masa("M3C_k1", S, K3, _gens_m3c(1), ("a", "z"), 1, "MANS", "(3.eqM3C_kapa1)",
             constants=(("kappa", QI(1)),)),
    ]


def _masa_m4r():
    return [Masa("M41_0", SpaceId.M4R, I4_REAL, _gens_m41(), ("a", "b"), 0, "Cartan", "(3.MV41)",
                 descends_from="M41_0")]


def _masa_m31(beta=Fraction(1, 2)):
    S = SpaceId.M31
    cartan = (_c([(-1, 1, 2), (1, 2, 1)], "E21-E12"), _c([(1, 3, 4), (1, 4, 3)], "E34+E43"))
    return [
        Masa("M41_0r", S, D31, cartan, ("a", "b"), 0, "Cartan", "(4.1)", descends_from="M41_0"),
        Masa("M43_1r", S, KLC_31, _gens_m43(), ("a1", "a2", "z"), 1, "MANS", "(3.V431)",
             descends_from="M43_1"),
        Masa("M44_1r", S, KLC_31, _gens_m44(beta), ("a1", "a2", "z"), 1, "MANS", "(3.V441)",
             descends_from="M44_1", constants=(("beta", QI.coerce(beta)),)),
    ]


def _masa_m22(beta=Fraction(1, 2), kappa=1):
    S = SpaceId.M22
    compact = (_c([(-1, 1, 2), (1, 2, 1)], "-(E12-E21)"), _c([(-1, 3, 4), (1, 4, 3)], "-(E34-E43)"))
    noncompact = (_c([(1, 1, 3), (1, 3, 1)], "E13+E31"), _c([(1, 2, 4), (1, 4, 2)], "E24+E42"))
    mixed = (_c([(1, 1, 1), (1, 2, 2), (-1, 3, 3), (-1, 4, 4)], "E11+E22-E33-E44"),
             _c([(-1, 1, 2), (1, 2, 1), (-1, 3, 4), (1, 4, 3)], "-E12+E21-E34+E43"))
    m2 = (_c([(1, 1, 2), (-1, 2, 1), (1, 3, 4), (-1, 4, 3)], "E12-E21+E34-E43"),
          _c([(1, 1, 4), (-1, 2, 3)], "E14-E23"))
    return [
        Masa("CartanCompact", S, D22, compact, ("a", "b"), 0, "Cartan", "(5.4)", descends_from="M41_0"),
        Masa("CartanNoncompact", S, D22, noncompact, ("a", "b"), 0, "Cartan", "(5.10)",
             descends_from="M41_0"),
        Masa("CartanMixed", S, KAB_REAL, mixed, ("a", "b"), 0, "Cartan", "(5.14)", descends_from="M41_0",
             notes=("matrix rows 4-5 of the printed template are shifted by one column; "
                    "the o(K) member is used",)),
        Masa("M1_0", S, KAB_REAL, _gens_m42(), ("a", "b"), 0, "AOID-but-D", "(3.M420)",
             descends_from="M42_0"),
        Masa("M2_0", S, KAB_REAL, m2, ("a", "b"), 0, "AOID-ID-NAID", "(5.M2_0)", descends_from="M42_0",
             notes=("group-action string has E34-E34; matrix form is authoritative (suspected typo)",)),
        Masa("M43_1r", S, KLC_22, _gens_m43(-1), ("a1", "a2", "z"), 1, "MANS", "(3.V431)",
             descends_from="M43_1",
             notes=("signature (2,2) needs an indefinite middle block of the light-cone metric",)),
        Masa("M44_1r", S, KLC_22, _gens_m44(beta, -1), ("a1", "a2", "z"), 1, "MANS", "(3.V441)",
             descends_from="M44_1", constants=(("beta", QI.coerce(beta)),),
             notes=("signature (2,2) needs an indefinite middle block of the light-cone metric",)),
        Masa("M45_1r", S, KFULL_REAL, _gens_m45(kappa), ("a1", "a2", "z"), 1, "MANS", "(3.V451)",
             descends_from="M45_1", constants=(("kappa", QI.coerce(kappa)),)),
        Masa("M46_2r", S, KAB_REAL, _gens_m46(), ("z", "a1", "a2"), 2, "MANS", "(3.V462)",
             descends_from="M46_2"),
        Masa("M47_2r", S, KAB_REAL, _gens_m47(), ("z", "a1", "a2"), 2, "MANS", "(3.338)",
             descends_from="M47_2", degenerate=True,
             notes=("orbits are 2-dimensional; no coordinate system",)),
    ]


def masa_catalog(space: SpaceId, **constants) -> list[Masa]:
    """The MASAs of the isometry algebra of ``space`` used by the chart catalog."""
    space = SpaceId.parse(space) if isinstance(space, str) else space
    if space is SpaceId.M4C:
        return _masa_m4c(**constants)
    if space is SpaceId.M3C:
        return _masa_m3c()
    if space is SpaceId.M4R:
        return _masa_m4r()
    if space is SpaceId.M31:
        return _masa_m31(**constants)
    return _masa_m22(**constants)


def get_masa(space: SpaceId, masa_id: str, **constants) -> Masa:
    for m in masa_catalog(space, **constants):
        if m.id == masa_id:
            return m
    raise KeyError(f"no MASA {masa_id!r} in {space.value}")


# -- conjugation matrices used by the real-form correspondences --------------------------

def g_compact_to_mixed():
    """g with g I4 g^T = antidiagonal-block K (entries are Gaussian rationals)."""
    h = Fraction(1, 2)
    i = QI(0, 1)
    return exact.as_matrix([[h, h * i, h, h * i],
                            [-h * i, h, h * i, -h],
                            [h, -h * i, h, -h * i],
                            [h * i, h, -h * i, -h]])


def g_m42_to_m2_unscaled():
    """sqrt(2) G for the K-preserving map taking M42_0 to the form of M2_0."""
    i = QI(0, 1)
    return exact.as_matrix([[1, 0, 0, 1], [i, 0, 0, -i], [0, 1, 1, 0], [0, i, -i, 0]])
