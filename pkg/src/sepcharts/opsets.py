"""Exact polynomial-coefficient differential operators and commuting-set checks.

Operators act on functions of the ambient Cartesian variables x_1..x_n. Coefficients
are polynomials over Q(i); all comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from . import algebra as A
from . import exact
from .algebra import AlgebraElement, MetricForm, SpaceId
from .exact import QI

ZERO = QI(0)
ONE = QI(1)


# -- polynomials ---------------------------------------------------------------------------

def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


def poly_add(p: Mapping, q: Mapping) -> dict:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, ZERO) + c
    return _clean(out)


def poly_scale(s, p: Mapping) -> dict:
    s = QI.coerce(s)
    return _clean({m: s * c for m, c in p.items()})


def poly_mul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, ZERO) + c1 * c2
    return _clean(out)


def poly_diff(p: Mapping, alpha: Sequence[int]) -> dict:
    """Apply d^alpha to a polynomial."""
    out: dict = {}
    for m, c in p.items():
        if any(a > e for a, e in zip(alpha, m)):
            continue
        f = 1
        for a, e in zip(alpha, m):
            f *= factorial(e) // factorial(e - a)
        mm = tuple(e - a for a, e in zip(alpha, m))
        out[mm] = out.get(mm, ZERO) + c * f
    return _clean(out)


def poly_var(i: int, n: int) -> dict:
    return {tuple(1 if j == i else 0 for j in range(n)): ONE}


def poly_const(c, n: int) -> dict:
    c = QI.coerce(c)
    return {} if c == 0 else {(0,) * n: c}


def poly_is_zero(p: Mapping) -> bool:
    return not _clean(dict(p))


def poly_str(p: Mapping, names: Sequence[str]) -> str:
    if not p:
        return "0"
    parts = []
    for m in sorted(p, reverse=True):
        mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e)
        c = exact.to_string(p[m])
        parts.append(f"({c})*{mono}" if mono else f"({c})")
    return " + ".join(parts)


# -- differential operators ----------------------------------------------------------------

class DiffOperator:
    """sum_alpha c_alpha(x) d^alpha with coefficients to the left, canonical and exact."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean = {}
        for alpha, p in (terms or {}).items():
            p = _clean(dict(p))
            if p:
                clean[tuple(alpha)] = p
        self.terms = clean

    @classmethod
    def identity(cls, n: int) -> "DiffOperator":
        return cls(n, {(0,) * n: poly_const(1, n)})

    @classmethod
    def partial(cls, i: int, n: int) -> "DiffOperator":
        """d/dx_i with 0-based i."""
        alpha = tuple(1 if j == i else 0 for j in range(n))
        return cls(n, {alpha: poly_const(1, n)})

    @classmethod
    def multiply_by(cls, poly: Mapping, n: int) -> "DiffOperator":
        return cls(n, {(0,) * n: dict(poly)})

    @property
    def order(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    def __hash__(self):
        return hash((self.n, frozenset((a, frozenset(p.items())) for a, p in self.terms.items())))

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        out = dict(self.terms)
        for a, p in other.terms.items():
            out[a] = poly_add(out.get(a, {}), p)
        return DiffOperator(self.n, out)

    def __neg__(self) -> "DiffOperator":
        return self.scale(-1)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scale(self, s) -> "DiffOperator":
        return DiffOperator(self.n, {a: poly_scale(s, p) for a, p in self.terms.items()})

    def __matmul__(self, other: "DiffOperator") -> "DiffOperator":
        return compose(self, other)

    def coefficient_vector(self) -> dict:
        """Flattened {(alpha, monomial): coefficient} for linear-algebra checks."""
        return {(a, m): c for a, p in self.terms.items() for m, c in p.items()}

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = list(names or [f"x{i + 1}" for i in range(self.n)])
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms, key=lambda t: (-sum(t), t)):
            d = "".join(f"d{names[i]}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e)
            parts.append(f"[{poly_str(self.terms[a], names)}]{d}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOperator({self.to_string()})"


def _sub_indices(alpha: Sequence[int]):
    ranges = [range(a + 1) for a in alpha]
    if not ranges:
        yield ()
        return
    import itertools
    yield from itertools.product(*ranges)


def compose(p: DiffOperator, q: DiffOperator) -> DiffOperator:
    """Operator product p q via the Leibniz rule, in canonical form."""
    if p.n != q.n:
        raise ValueError("operators act on different numbers of variables")
    n = p.n
    out: dict = {}
    for alpha, a in p.terms.items():
        for beta, b in q.terms.items():
            for gamma in _sub_indices(alpha):
                mult = 1
                for al, ga in zip(alpha, gamma):
                    mult *= comb(al, ga)
                db = poly_diff(b, gamma)
                if not db:
                    continue
                coeff = poly_scale(mult, poly_mul(a, db))
                deriv = tuple(al - ga + be for al, ga, be in zip(alpha, gamma, beta))
                out[deriv] = poly_add(out.get(deriv, {}), coeff)
    return DiffOperator(n, out)


def op_commutator(p: DiffOperator, q: DiffOperator) -> DiffOperator:
    return compose(p, q) - compose(q, p)


def generator_to_operator(x: AlgebraElement) -> DiffOperator:
    """Vector field (X x + alpha) . grad, the derivative of f(e^{tX} x) at t = 0."""
    n = x.n
    X, alpha = x.linear_part, x.translation
    out: dict = {}
    for i in range(n):
        coeff = poly_const(alpha[i], n)
        for j in range(n):
            if X[i][j] != 0:
                coeff = poly_add(coeff, poly_scale(X[i][j], poly_var(j, n)))
        if coeff:
            out[tuple(1 if k == i else 0 for k in range(n))] = coeff
    return DiffOperator(n, out)


def box_operator(k: MetricForm) -> DiffOperator:
    """sum (K^{-1})_ik d_i d_k."""
    n = k.n
    kinv = k.inverse
    out: dict = {}
    for i in range(n):
        for j in range(n):
            if kinv[i][j] != 0:
                alpha = [0] * n
                alpha[i] += 1
                alpha[j] += 1
                out[tuple(alpha)] = poly_add(out.get(tuple(alpha), {}), poly_const(kinv[i][j], n))
    return DiffOperator(n, out)


def linear_isometries(k: MetricForm) -> list[AlgebraElement]:
    return [b for b in A.isometry_basis(k) if all(c == 0 for c in b.translation)]


def _trace_form(basis: Sequence[AlgebraElement]) -> tuple:
    rows = []
    for a in basis:
        row = []
        for b in basis:
            ab = exact.mat_mul(a.linear_part, b.linear_part)
            row.append(sum((ab[i][i] for i in range(len(ab))), ZERO))
        rows.append(tuple(row))
    return tuple(rows)


def _sym_product(p: DiffOperator, q: DiffOperator) -> DiffOperator:
    return (compose(p, q) + compose(q, p)).scale(QI(1, 0) / 2)


def invariant_quadratic(basis: Sequence[AlgebraElement]) -> DiffOperator:
    """A nonzero symmetric quadratic in the basis fields commuting with all of them.

    Used for subalgebras with a degenerate trace form (Euclidean-type), where the
    Killing-type formula is unavailable.
    """
    ops = [generator_to_operator(b) for b in basis]
    pairs = [(j, k) for j in range(len(ops)) for k in range(j, len(ops))]
    quads = [_sym_product(ops[j], ops[k]) for j, k in pairs]
    columns = []
    for q in quads:
        vec = {}
        for l, xi in enumerate(ops):
            for key, c in op_commutator(xi, q).coefficient_vector().items():
                vec[(l, key)] = c
        columns.append(vec)
    keys = sorted({k for col in columns for k in col}, key=repr)
    rows = [[col.get(k, ZERO) for col in columns] for k in keys]
    for v in exact.nullspace(rows, len(columns)):
        out = DiffOperator(basis[0].n)
        for c, q in zip(v, quads):
            if c != 0:
                out = out + q.scale(c)
        if not out.is_zero():
            return out
    raise ValueError("no invariant quadratic for this basis")


def casimir_second_order(k: MetricForm, basis: Sequence[AlgebraElement] | None = None) -> DiffOperator:
    """C2 = -sum (G^{-1})_jk xi(B_j) xi(B_k), G the trace form of the basis.

    With no basis this is the Casimir of the full o(K); for o(4) with the standard
    L_ab it equals (1/2) sum L_ab^2. A degenerate trace form falls back to
    ``invariant_quadratic``.
    """
    basis = list(basis) if basis is not None else linear_isometries(k)
    G = _trace_form(basis)
    if exact.rank(G) < len(basis):
        return invariant_quadratic(basis)
    Ginv = exact.inverse(G)
    ops = [generator_to_operator(b) for b in basis]
    out = DiffOperator(k.n)
    for j, oj in enumerate(ops):
        for l, ol in enumerate(ops):
            if Ginv[j][l] != 0:
                out = out + compose(oj, ol).scale(-Ginv[j][l])
    return out


def linear_rank(ops: Sequence[DiffOperator]) -> int:
    vecs = [o.coefficient_vector() for o in ops]
    keys = sorted({k for v in vecs for k in v}, key=repr)
    return exact.rank([[v.get(k, ZERO) for k in keys] for v in vecs]) if keys else 0


# -- complete commuting sets ---------------------------------------------------------------

@dataclass(frozen=True)
class OpSet:
    chart_id: str
    members: tuple          # (label, DiffOperator)
    roles: tuple            # (label, role)
    printed: bool = True
    expect_commuting: bool = True
    notes: tuple = ()

    @property
    def labels(self) -> tuple:
        return tuple(lbl for lbl, _ in self.members)


@dataclass(frozen=True)
class OpSetReport:
    chart_id: str
    pairs: tuple            # ((label_a, label_b), is_zero)
    rank: int
    size: int
    printed: bool
    expect_commuting: bool
    notes: tuple = ()

    @property
    def all_commute(self) -> bool:
        return all(z for _, z in self.pairs)

    @property
    def independent(self) -> bool:
        return self.rank == self.size

    @property
    def passed(self) -> bool:
        """True when the outcome matches the expectation (negative controls pass by failing)."""
        ok = self.all_commute and self.independent
        return ok if self.expect_commuting else not self.all_commute

    def to_json(self) -> dict:
        return {"chart_id": self.chart_id,
                "pairs": [{"labels": list(lbl), "commutator_is_zero": z} for lbl, z in self.pairs],
                "rank_checks": {"linear_rank": self.rank, "members": self.size,
                                "independent": self.independent},
                "printed": self.printed, "expect_commuting": self.expect_commuting,
                "pass": self.passed, "notes": list(self.notes)}


def verify_opset(s: OpSet) -> OpSetReport:
    pairs = []
    mem = list(s.members)
    for i in range(len(mem)):
        for j in range(i + 1, len(mem)):
            z = op_commutator(mem[i][1], mem[j][1]).is_zero()
            pairs.append(((mem[i][0], mem[j][0]), z))
    rank = linear_rank([op for _, op in mem])
    return OpSetReport(s.chart_id, tuple(pairs), rank, len(mem), s.printed, s.expect_commuting, s.notes)


def _el(terms, label, n=4) -> AlgebraElement:
    return A.combo(terms, n, label)


def _L(i, k, n=4):
    return A.rot(i, k, n)



_I = QI(0, 1)
_X1 = (_L(1, 2) - _L(2, 4).scale(_I)).relabel("X1=L12-iL24")
_X2 = (_L(1, 3) - _L(3, 4).scale(_I)).relabel("X2=L13-iL34")
_X1_4C2 = (_L(1, 2) - _L(2, 3).scale(_I)).relabel("X1=L12-iL23")
_R12 = _el([(1, 2, 1), (-1, 1, 2)], "E21-E12")
_B = lambda i, k: A.boost(i, k)
_N1 = _el([(-1, 1, 2), (1, 2, 1), (1, 2, 4), (1, 4, 2)], "E21-E12+E24+E42")
_N2 = _el([(1, 3, 1), (1, 1, 3), (1, 3, 4), (-1, 4, 3)], "E31+E13+E34-E43")

# chart id -> (metric, subalgebra label, subalgebra basis or None, innermost generators)
# A basis gives R2 as that subalgebra's Casimir; None means R2 is the second generator.
_NONMAX = {
    "C_4C1": (A.I4, "o(3)", (_L(1, 2), _L(1, 3), _L(2, 3)), (_L(1, 2),)),
    "C_4C2": (A.I4, "o(3)", (_L(1, 2), _L(1, 3), _L(2, 3)), (_X1_4C2,)),
    "C_4C3": (A.I4, "e(2)", (_L(2, 3), _X1, _X2), (_L(2, 3),)),
    "C_4C4": (A.I4, "e(2)", None, (_X1, _X2)),
    "R4_sph": (A.I4_REAL, "o(3)", (_L(1, 2), _L(1, 3), _L(2, 3)), (_L(1, 2),)),
    "E22_I": (A.D22, "o(2,1)", (_R12, _B(1, 3), _B(2, 3)), (_R12,)),
    "E22_II": (A.D22, "o(2,1)", (_R12, _B(1, 3), _B(2, 3)), (_B(1, 3),)),
    "E22_III": (A.D22, "o(2,1)", (_R12, _B(1, 3), _B(2, 3)),
                (_el([(1, 2, 1), (-1, 1, 2), (1, 2, 3), (1, 3, 2)], "E21-E12+E23+E32"),)),
    "E22_IV": (A.D22, "e(1,1)", (_B(2, 3), _N1, _N2), (_B(2, 3),)),
    "E22_V": (A.D22, "e(1,1)", None, (_N1, _N2)),
}

# sets whose generators were printed differently from the chart-consistent ones
_PRINTED_VARIANTS = {
    "C_4C2": ("printed X1 = L12 - i L24 is not in the o(3) of the chain",
              lambda: _nonmax_set("C_4C2", inner=((_L(1, 2) - _L(2, 4).scale(_I)).relabel("X1=L12-iL24"),))),
    "E22_c": ("printed generator -E21+E12-E34+E43 is not in o(K)",
              lambda: _masa_set_from("E22_c", A.KAB_REAL, (
                  _el([(1, 1, 1), (1, 2, 2), (-1, 3, 3), (-1, 4, 4)], "E11+E22-E33-E44"),
                  _el([(-1, 2, 1), (1, 1, 2), (-1, 3, 4), (1, 4, 3)], "-E21+E12-E34+E43"))),),
}

_PRINTED_CHARTS = {"C_M41", "C_M42", "C_M43", "C_M44", "C_M45", "C_M46", "C_3C_k0", "C_3C_k1",
                   "C_4C1", "C_4C2", "C_4C3", "C_4C4", "E22_a", "E22_b", "E22_c", "E22_e"}


def _masa_set_from(chart_id: str, k: MetricForm, gens: Sequence[AlgebraElement], printed=True,
                   expect=True, notes=()) -> OpSet:
    members = [("Box", box_operator(k))]
    roles = [("Box", "hamiltonian")]
    translation_free = all(all(c == 0 for c in g.translation) for g in gens)
    if len(gens) + 1 < k.n and translation_free:
        members.append(("C2", casimir_second_order(k)))
        roles.append(("C2", "casimir"))
    for g in gens:
        members.append((g.label, generator_to_operator(g)))
        roles.append((g.label, "masa_generator"))
    return OpSet(chart_id, tuple(members), tuple(roles), printed, expect, tuple(notes))


def _nonmax_set(chart_id: str, inner: Sequence[AlgebraElement] | None = None) -> OpSet:
    k, sub_label, sub_basis, gens = _NONMAX[chart_id]
    gens = tuple(inner) if inner is not None else gens
    members = [("Box", box_operator(k)), ("C2", casimir_second_order(k))]
    roles = [("Box", "hamiltonian"), ("C2", "casimir")]
    if sub_basis is not None:
        members.append((f"C2[{sub_label}]", casimir_second_order(k, sub_basis)))
        roles.append((f"C2[{sub_label}]", "casimir"))
    for g in gens:
        members.append((g.label, generator_to_operator(g)))
        roles.append((g.label, "chain_generator"))
    printed = chart_id in _PRINTED_CHARTS
    return OpSet(chart_id, tuple(members), tuple(roles), printed, True,
                 () if printed else ("no printed set; constructed from the subgroup chain",))


def opset_for_chart(chart) -> OpSet:
    """The complete commuting set of a chart, built from its chart-consistent generators."""
    if chart.id in _NONMAX:
        return _nonmax_set(chart.id)
    if chart.masa_id is None:
        raise KeyError(f"{chart.id}: no commuting set (no MASA and no chain data)")
    m = A.get_masa(chart.space, chart.masa_id)
    printed = chart.id in _PRINTED_CHARTS
    return _masa_set_from(chart.id, m.metric, m.generators, printed=printed,
                          notes=() if printed else ("no printed set; MASA generators plus Box",))


def printed_variant_opsets() -> list[OpSet]:
    """Sets with generators exactly as printed where they differ; reported, expected to fail."""
    out = []
    for cid, (note, build) in _PRINTED_VARIANTS.items():
        s = build()
        out.append(OpSet(s.chart_id + ":printed", s.members, s.roles, True, False, (note,)))
    return out


def negative_control() -> OpSet:
    """{Box, L12, L13, C2} on M(4,C): L12 and L13 do not commute."""
    k = A.I4
    return OpSet("negative_control", (("Box", box_operator(k)), ("L12", generator_to_operator(_L(1, 2))),
                                      ("L13", generator_to_operator(_L(1, 3))),
                                      ("C2", casimir_second_order(k))),
                 (("Box", "hamiltonian"), ("L12", "corrupt"), ("L13", "corrupt"), ("C2", "casimir")),
                 False, False, ("deliberately corrupted set",))


def all_opsets(charts: Iterable) -> list[OpSet]:
    out = []
    for ch in charts:
        if ch.stub or ch.auxiliary:
            continue
        try:
            out.append(opset_for_chart(ch))
        except KeyError:
            continue
    return out


# -- degenerate MASA rank check ------------------------------------------------------------

def _poly_det(M: Sequence[Sequence[dict]]) -> dict:
    n = len(M)
    if n == 1:
        return dict(M[0][0])
    out: dict = {}
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = poly_mul(M[0][j], _poly_det(minor))
        out = poly_add(out, term if j % 2 == 0 else poly_scale(-1, term))
    return out


@dataclass(frozen=True)
class RankReport:
    masa_id: str
    rank: int
    field_count: int
    ambient_dim: int
    nonzero_minor: tuple

    def to_json(self) -> dict:
        return {"masa_id": self.masa_id, "rank": self.rank, "fields": self.field_count,
                "ambient_dim": self.ambient_dim, "witness_minor": [list(x) for x in self.nonzero_minor]}


def field_rank(gens: Sequence[AlgebraElement], masa_id: str = "") -> RankReport:
    """Exact rank over the rational function field of the first-order coefficient matrix."""
    import itertools
    ops = [generator_to_operator(g) for g in gens]
    n = gens[0].n
    M = []
    for op in ops:
        row = []
        for i in range(n):
            alpha = tuple(1 if k == i else 0 for k in range(n))
            row.append(op.terms.get(alpha, {}))
        M.append(row)
    for size in range(min(len(M), n), 0, -1):
        for rows in itertools.combinations(range(len(M)), size):
            for cols in itertools.combinations(range(n), size):
                sub = [[M[r][c] for c in cols] for r in rows]
                if not poly_is_zero(_poly_det(sub)):
                    return RankReport(masa_id, size, len(M), n, (rows, cols))
    return RankReport(masa_id, 0, len(M), n, ())


def m47_rank_check() -> RankReport:
    m = A.get_masa(SpaceId.M4C, "M47_2")
    return field_rank(m.generators, m.id)
