"""Command-line front end: catalogs, verification suites, JSON export and DOT chain diagrams.

JSON (or DOT) goes to stdout, a human summary to stderr. Exit codes: 0 pass,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import algebra as A
from . import calculus
from . import charts as C
from . import opsets as O
from . import separation as S
from . import specfun
from .algebra import SpaceId
from .rng import stream

COMMANDS = ("list", "show", "verify", "laplacian", "opsets", "solve", "chains", "export")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sepcharts", description="Separable coordinate charts on complex and real 4-spaces.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--space", choices=[s.value for s in SpaceId])
    p.add_argument("--chart")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("text", "json", "dot"), default="json")
    p.add_argument("--out")
    p.add_argument("--const", action="append", default=[], metavar="NAME=VALUE",
                   help="separation constant for solve, e.g. --const E=-0.5+0.3j (repeatable)")
    return p


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SEPCHARTS_THREADS", "1")))
    except ValueError:
        return 1


def _map_ordered(fn: Callable, items: Sequence) -> list:
    """Apply fn to items, possibly concurrently; results keep the input order."""
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def _charts_for(args) -> list[C.Chart]:
    if args.chart:
        try:
            return [C.get_chart(args.chart)]
        except KeyError:
            for ch in C.auxiliary_charts():
                if ch.id == args.chart:
                    return [ch]
            raise UsageError(f"unknown chart id {args.chart!r}")
    if args.space:
        return C.chart_catalog(args.space)
    return C.all_charts()


def _chart_class(ch: C.Chart) -> str:
    if ch.stub:
        return "stub"
    if ch.masa_id is None:
        return "nonmaximal"
    try:
        return A.get_masa(ch.space, ch.masa_id).decomposability_class
    except KeyError:
        return "?"


# -- commands ------------------------------------------------------------------------------

def cmd_list(args):
    rows = [{"id": ch.id, "space": ch.space.value, "figure_ref": ch.figure_ref,
             "ignorable": len(ch.ignorable), "class": _chart_class(ch), "masa": ch.masa_id}
            for ch in _charts_for(args)]
    text = "\n".join(f"{r['id']:<12} {r['space']:<4} {r['figure_ref']:<8} {r['ignorable']} {r['class']}"
                     for r in rows)
    return {"charts": rows}, text, True


def cmd_show(args):
    if not args.chart:
        raise UsageError("show needs --chart")
    ch = _charts_for(args)[0]
    data = ch.to_json()
    table = calculus.table_for_chart(ch)
    if table is not None:
        data["laplacian"] = table.to_json()
    if ch.masa_id:
        data["masa"] = A.get_masa(ch.space, ch.masa_id).to_json()
    return data, f"{ch.id}: {', '.join(ch.closed_form_str)}", True


def _verify_chart(ch: C.Chart, args) -> dict:
    out = {"chart_id": ch.id, "checks": {}}
    if ch.stub:
        out["skipped"] = "stub chart (no coordinates)"
        out["pass"] = True
        return out
    checks = out["checks"]
    seed = args.seed
    checks["dual_path"] = C.dual_path_check(ch, args.points, stream(seed, "dual:" + ch.id)).to_json()
    checks["ignorability"] = C.ignorability_check(ch, min(args.points, 20),
                                                  stream(seed, "ign:" + ch.id)).to_json()
    if ch.is_real:
        checks["reality"] = C.reality_check(ch, args.points, stream(seed, "real:" + ch.id)).to_json()
    if ch.laplacian_id is not None:
        checks["laplacian"] = calculus.verify_laplacian(ch, 20, 5, stream(seed, "lap:" + ch.id)).to_json()
    try:
        s = O.opset_for_chart(ch)
        checks["opset"] = O.verify_opset(s).to_json()
    except KeyError:
        pass
    if ch.id in S.RECIPES:
        res = []
        for j in range(3):
            rng = stream(seed, f"solve{j}:{ch.id}")
            sol = S.build_solution(ch.id, S.sample_constants(ch.id, rng))
            res.append(S.pde_residual(sol, 20, rng, tol=args.tol).to_json())
        checks["separation"] = {"runs": res, "pass": all(r["pass"] for r in res)}
    out["pass"] = all(c.get("pass", True) for c in checks.values())
    return out


def cmd_verify(args):
    charts = _charts_for(args)
    reports = _map_ordered(lambda ch: _verify_chart(ch, args), charts)
    ok = all(r["pass"] for r in reports)
    lines = []
    for r in reports:
        failed = [k for k, v in r["checks"].items() if not v.get("pass", True)]
        lines.append(f"{r['chart_id']:<12} {'PASS' if r['pass'] else 'FAIL'}"
                     + (f"  failed: {', '.join(failed)}" if failed else ""))
    return {"seed": args.seed, "reports": reports, "pass": ok}, "\n".join(lines), ok


def cmd_laplacian(args):
    charts = [ch for ch in _charts_for(args) if ch.laplacian_id is not None and not ch.stub]
    if args.chart is None and args.space is None:
        charts.append(next(c for c in C.auxiliary_charts() if c.id == "C_M47_cart"))
    reports = _map_ordered(lambda ch: calculus.verify_laplacian(
        ch, 20, 5, stream(args.seed, "lap:" + ch.id)).to_json(), charts)
    ok = all(r["pass"] for r in reports)
    text = "\n".join(f"{r['table_id']:<12} on {r['chart_id']:<10} residual {r['max_rel_residual']:.2e} "
                     f"{'PASS' if r['pass'] else 'FAIL'}"
                     + ("" if r["pass"] else f"  worst term {r['worst_term']} ({r['worst_term_discrepancy']:.2e})")
                     for r in reports)
    return {"reports": reports, "pass": ok}, text, ok


def cmd_opsets(args):
    sets = O.all_opsets(_charts_for(args))
    everything = args.chart is None and args.space is None
    extra = O.printed_variant_opsets() + [O.negative_control()] if everything else []
    reports = [O.verify_opset(s).to_json() for s in sets + extra]
    rank = O.m47_rank_check().to_json() if everything else None
    ok = all(r["pass"] for r in reports) and (rank is None or rank["rank"] == 2)
    text = "\n".join(f"{r['chart_id']:<22} {'PASS' if r['pass'] else 'FAIL'}"
                     + ("" if r["expect_commuting"] else " (expected non-commuting)") for r in reports)
    if rank is not None:
        text += f"\nM47_2 field rank {rank['rank']}"
    return {"reports": reports, "m47_rank": rank, "pass": ok}, text, ok


def _parse_const(items: Sequence[str]) -> dict:
    out = {}
    for it in items:
        if "=" not in it:
            raise UsageError(f"bad --const {it!r}, expected NAME=VALUE")
        k, v = it.split("=", 1)
        try:
            out[k.strip()] = int(v) if re.fullmatch(r"[+-]?\d+", v.strip()) else complex(v.strip().replace(" ", ""))
        except ValueError:
            raise UsageError(f"bad value in --const {it!r}") from None
    return out


def cmd_solve(args):
    if args.chart is None:
        ids = list(S.RECIPES)
    elif args.chart in S.RECIPES:
        ids = [args.chart]
    else:
        raise UsageError(f"no separated-solution recipe for {args.chart!r}")
    given = _parse_const(args.const)
    reports = []
    for cid in ids:
        for j in range(1 if given else 3):
            rng = stream(args.seed, f"solve{j}:{cid}")
            consts = S.sample_constants(cid, rng)
            consts.update(given)
            sol = S.build_solution(cid, consts)
            reports.append(S.pde_residual(sol, min(args.points, 20), rng, tol=args.tol).to_json())
    lines = [f"{r['chart_id']:<10} pde {r['pde_residual']:.2e} {'PASS' if r['pass'] else 'FAIL'}"
             for r in reports]
    data = {"reports": reports}
    if args.chart is None:
        data["radial_index"] = [S.radial_index_oracle(lam).to_json() for lam in (0, 1, -3)]
        battery = specfun.ode_battery(seed=args.seed) + specfun.identity_battery(seed=args.seed)
        data["specfun_battery"] = [b.to_json() for b in battery]
        lines += [f"{b.function:<14} {b.check:<22} {b.max_residual:.2e} "
                  f"({b.evaluated}/{b.samples}, {b.unconverged} unconverged) {'PASS' if b.passed else 'FAIL'}"
                  for b in battery]
        reports = reports + data["radial_index"] + data["specfun_battery"]
    ok = all(r["pass"] for r in reports)
    data["pass"] = ok
    return data, "\n".join(lines), ok


# -- DOT -------------------------------------------------------------------------------------

_O_PQ = re.compile(r"^O\((\d+),\s*1\)$")


def _node_attrs(name: str, last: bool, masa: bool) -> dict:
    """Trapezium for a MASA, dashed ellipse for O(n-1,1), ellipse for O(...), box otherwise."""
    if (last and masa) or name.startswith("exp "):
        return {"shape": "trapezium"}
    if _O_PQ.match(name):
        return {"shape": "ellipse", "style": "dashed", "real_form": "semicircle"}
    if name.startswith("O("):
        return {"shape": "ellipse"}
    return {"shape": "box"}


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def chain_dot(ch: C.Chart) -> str:
    lines = [f"digraph {_q(ch.id)} {{"]
    for i, name in enumerate(ch.chain):
        attrs = _node_attrs(name, i == len(ch.chain) - 1, ch.masa_id is not None)
        attrs["label"] = name
        a = ", ".join(f"{k}={_q(v)}" for k, v in attrs.items())
        lines.append(f"  n{i} [{a}];")
    for i in range(len(ch.chain) - 1):
        lines.append(f"  n{i} -> n{i + 1};")
    lines.append("}")
    return "\n".join(lines)


def cmd_chains(args):
    charts = [ch for ch in _charts_for(args) if ch.chain]
    data = {"chains": [{"chart_id": ch.id, "figure_ref": ch.figure_ref, "chain": list(ch.chain),
                        "nodes": [_node_attrs(n, i == len(ch.chain) - 1, ch.masa_id is not None)
                                  for i, n in enumerate(ch.chain)]} for ch in charts]}
    text = f"{len(charts)} chain graphs"
    if args.format == "dot":
        return "\n\n".join(chain_dot(ch) for ch in charts) + "\n", text, True
    return data, text, True


def cmd_export(args):
    spaces = [SpaceId.parse(args.space)] if args.space else list(SpaceId)
    data = {"spaces": []}
    for s in spaces:
        data["spaces"].append({
            "space": s.value,
            "masas": [m.to_json() for m in A.masa_catalog(s)],
            "charts": [ch.to_json() for ch in C.chart_catalog(s)],
        })
    data["laplacian_tables"] = [calculus.get_table(t).to_json() for t in calculus.PRINTED_TABLE_IDS]
    n = sum(len(x["charts"]) for x in data["spaces"])
    return data, f"exported {n} charts", True


HANDLERS = {"list": cmd_list, "show": cmd_show, "verify": cmd_verify, "laplacian": cmd_laplacian,
            "opsets": cmd_opsets, "solve": cmd_solve, "chains": cmd_chains, "export": cmd_export}


def _json_default(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if hasattr(o, "item"):
        return o.item()
    return str(o)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(list(argv) if argv is not None else None)
        if args.format == "dot" and args.command != "chains":
            raise UsageError("--format dot is only valid for chains")
        if args.points < 1:
            raise UsageError("--points must be positive")
        payload, text, ok = HANDLERS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return 2
    out = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True,
                                                              default=_json_default) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    if text:
        print(text, file=stderr)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
