"""Acceptance suite: ten criteria at their stated tolerances.

Each criterion prints one PASS/FAIL line (plus indented detail for failures) and asserts.
Run directly with `python3 tests/test_acceptance.py` for the summary alone.
"""

import pytest

from sepcharts import algebra as A
from sepcharts import calculus as K
from sepcharts import charts as C
from sepcharts import opsets as O
from sepcharts import separation as S
from sepcharts import specfun as SF
from sepcharts.algebra import SpaceId
from sepcharts.rng import stream

SEED = 0


def check_1():
    """Catalog cardinalities, exact."""
    m4c = A.masa_catalog(SpaceId.M4C)
    m22 = C.chart_catalog(SpaceId.M22)
    m31 = [c for c in C.chart_catalog(SpaceId.M31) if c.masa_id is not None]
    counts = {
        "M(4,C) MASAs": (len(m4c), 7),
        "M(4,C) degenerate MASAs": (sum(m.degenerate for m in m4c), 1),
        "M(4) charts": (len(C.chart_catalog(SpaceId.M4R)), 2),
        "M(3,1) MASA charts": (len(m31), 3),
        "M(2,2) MASA-chain charts": (sum(c.masa_id is not None for c in m22), 9),
        "M(2,2) nonmaximal charts": (sum(c.masa_id is None for c in m22), 5),
    }
    bad = [f"{k}: {got} != {want}" for k, (got, want) in counts.items() if got != want]
    return not bad, bad, f"{len(counts)} counts"


def _numeric_charts():
    return [c for c in C.all_charts(include_auxiliary=True) + C.chart_variants() if not c.stub]


def check_2():
    """Group action vs closed form, 200 samples, relative error <= 1e-11."""
    bad, worst = [], 0.0
    charts = _numeric_charts()
    for ch in charts:
        rep = C.dual_path_check(ch, 200, stream(SEED, "dual:" + ch.id), tol=1e-11)
        worst = max(worst, rep.max_rel_error)
        if not rep.passed:
            bad.append(f"{ch.id}: rel {rep.max_rel_error:.2e}, norm {rep.max_norm_error:.2e}")
    return not bad, bad, f"{len(charts)} charts, worst {worst:.1e}"


def check_3():
    """Printed Laplacians vs metric-derived, 20 samples x 5 functions, residual <= 1e-8."""
    bad = []
    for tid in K.PRINTED_TABLE_IDS:
        ch = C.get_chart(K.TABLE_CHART[tid])
        table = K.get_table(tid, dict(ch.constants))
        rep = K.verify_laplacian(ch, 20, 5, stream(SEED, "lap:" + tid), table=table, tol=1e-8)
        if not rep.passed:
            bad.append(f"{tid} on {ch.id}: residual {rep.max_rel_residual:.3e}, "
                       f"worst term {rep.worst_term} off by {rep.worst_term_discrepancy:.3e}")
    n = len(K.PRINTED_TABLE_IDS)
    return not bad, bad, f"{n - len(bad)}/{n} tables"


def check_4():
    """Commuting sets commute exactly; the corrupted control does not."""
    sets = O.all_opsets(C.all_charts())
    bad = [f"{s.chart_id}: {[lbl for lbl, z in r.pairs if not z]} rank {r.rank}/{r.size}"
           for s in sets for r in [O.verify_opset(s)] if not r.passed]
    control = O.verify_opset(O.negative_control())
    if control.all_commute:
        bad.append("negative control commutes")
    variants = [O.verify_opset(s) for s in O.printed_variant_opsets()]
    info = ", ".join(f"{r.chart_id} {'commutes' if r.all_commute else 'does not commute'}" for r in variants)
    return not bad, bad, f"{len(sets)} sets, control fails; {info}"


def check_5():
    """Every catalog MASA: exact commutators, isometry, centralizer maximality."""
    bad, n = [], 0
    for space in SpaceId:
        for m in A.masa_catalog(space):
            n += 1
            gens = m.generators
            if not all(A.commutator(a, b).is_zero() for a in gens for b in gens):
                bad.append(f"{space.value}/{m.id}: generators do not commute")
            if not all(A.is_isometry(g, m.metric) for g in gens):
                bad.append(f"{space.value}/{m.id}: not an isometry")
            rep = A.centralizer_check(m, seed=SEED)
            if not rep.is_maximal:
                bad.append(f"{space.value}/{m.id}: centralizer dim {rep.centralizer_dim} vs {rep.dim}")
    return not bad, bad, f"{n} MASAs"


def check_6():
    """M47 generator fields have exact rank 2."""
    rep = O.m47_rank_check()
    ok = rep.rank == 2 and rep.field_count == 3
    return ok, [] if ok else [f"rank {rep.rank} of {rep.field_count} fields"], f"rank {rep.rank}"


def check_7():
    """12 recipes x 3 constant sets x 20 samples, PDE residual <= 1e-6 (elementary <= 1e-10)."""
    bad, worst = [], {True: 0.0, False: 0.0}
    for cid in S.RECIPES:
        elementary = cid in S.ELEMENTARY_RECIPES
        tol = 1e-10 if elementary else 1e-6
        for j in range(3):
            rng = stream(SEED, f"solve{j}:{cid}")
            sol = S.build_solution(cid, S.sample_constants(cid, rng))
            rep = S.pde_residual(sol, 20, rng, tol=tol)
            worst[elementary] = max(worst[elementary], rep.pde_residual)
            if not rep.passed:
                bad.append(f"{cid} set {j}: pde {rep.pde_residual:.2e}, odes "
                           + ", ".join(f"{lbl} {r:.1e}" for lbl, r in rep.ode_residuals))
    detail = f"{len(S.RECIPES)} recipes, worst {worst[False]:.1e}, elementary worst {worst[True]:.1e}"
    return len(S.RECIPES) == 12 and not bad, bad, detail


def _num(x) -> str:
    x = complex(x)
    return f"{x.real:g}" if x.imag == 0 else f"{x:g}"


def check_8():
    """Radial index oracle at lambda in {0, 1, -3}, residual <= 1e-9, printed index recorded."""
    bad, notes = [], []
    for lam in (0, 1, -3):
        rep = S.radial_index_oracle(lam)
        if not (rep.residual <= 1e-9 and rep.passed):
            bad.append(f"lambda={lam}: residual {rep.residual:.2e}")
        if rep.printed_nu != -5 - lam:
            bad.append(f"lambda={lam}: printed index not recorded")
        notes.append(f"lambda={lam} nu={_num(rep.nu)} printed {_num(rep.printed_nu)} "
                     f"{'agrees' if rep.agrees_with_printed else 'disagrees'}")
    return not bad, bad, "; ".join(notes)


def check_9():
    """ODE residuals <= 1e-8 and identities <= 1e-9, 25 converged samples each."""
    reports = SF.ode_battery(25, seed=SEED, tol=1e-8) + SF.identity_battery(25, seed=SEED, tol=1e-9)
    bad = [f"{r.function} {r.check}: {r.max_residual:.2e} ({r.evaluated}/{r.samples})"
           for r in reports if not r.passed]
    skipped = sum(r.unconverged for r in reports)
    worst = max(r.max_residual for r in reports)
    return not bad, bad, f"{len(reports)} checks, worst {worst:.1e}, {skipped} unconverged draws skipped"


def check_10():
    """reality_check, 100 samples, every real chart; K-norm value and sign."""
    bad, normed, n = [], 0, 0
    for space in (SpaceId.M4R, SpaceId.M31, SpaceId.M22):
        for ch in C.chart_catalog(space):
            if ch.stub:
                continue
            n += 1
            rep = C.reality_check(ch, 100, stream(SEED, "real:" + ch.id))
            normed += ch.expected_norm is not None and ch.orbit in ("sphere", "hyperboloid")
            if not rep.passed:
                bad.append(f"{ch.id}: imag {rep.max_imag:.1e}, norm {rep.max_norm_error:.1e}, sign {rep.sign_ok}")
    return not bad, bad, f"{n} charts, {normed} with norm sign checks"


CRITERIA = [
    (1, "catalog cardinalities", check_1),
    (2, "dual-path chart agreement", check_2),
    (3, "printed Laplacians", check_3),
    (4, "commuting operator sets", check_4),
    (5, "MASA commutators, isometry, maximality", check_5),
    (6, "M47 rank", check_6),
    (7, "separated solutions", check_7),
    (8, "radial index oracle", check_8),
    (9, "special-function battery", check_9),
    (10, "real-form reality", check_10),
]


def _line(n, name, ok, bad, detail):
    out = f"criterion {n:2d} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    return "\n".join([out] + [f"    {b}" for b in bad])


@pytest.mark.parametrize("n, name, fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(n, name, fn, capsys):
    ok, bad, detail = fn()
    with capsys.disabled():
        print("\n" + _line(n, name, ok, bad, detail))
    assert ok, "\n".join(bad)


if __name__ == "__main__":
    results = []
    for n, name, fn in CRITERIA:
        ok, bad, detail = fn()
        results.append(ok)
        print(_line(n, name, ok, bad, detail), flush=True)
    print(f"{sum(results)}/{len(results)} criteria pass")
