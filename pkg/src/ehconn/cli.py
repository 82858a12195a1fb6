"""Command-line front end: ``ehconn generate | certify | solve | verify-table``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, cuts, formats, solver
from .topology import Topology, TopologyError, TopologyParams, build_dc, build_eh, build_qn

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_UPPER_BOUND = 3
EXIT_NO_CUT = 4

_STATUS_EXIT = {
    solver.VERIFIED_EQUAL: EXIT_OK,
    solver.EXACT: EXIT_OK,
    solver.NO_CUT: EXIT_NO_CUT,
    solver.UPPER_BOUND_ONLY: EXIT_UPPER_BOUND,
    solver.MISMATCH: EXIT_MISMATCH,
}


class UsageError(Exception):
    pass


def _add_target(p: argparse.ArgumentParser, eh_only: bool = False):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--eh", nargs=2, type=int, metavar=("S", "T"), help="exchanged hypercube EH(S,T)")
    if not eh_only:
        group.add_argument("--qn", type=int, metavar="N", help="hypercube Q_N")
        group.add_argument("--dc", type=int, metavar="N", help="dual-cube DC(N) (= EH(N,N))")


def _add_budget(p: argparse.ArgumentParser):
    d = solver.DEFAULT_BUDGET
    p.add_argument("--max-subset-size", type=int, default=d.max_subset_size)
    p.add_argument("--max-candidates", type=int, default=d.max_candidates)
    p.add_argument("--workers", type=int, default=d.workers)
    p.add_argument("--time-limit", type=float, default=d.time_limit, help="seconds")


def _add_output(p: argparse.ArgumentParser, formats_: tuple[str, ...], default: str):
    p.add_argument("--format", choices=formats_, default=default)
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehconn",
        description="Exchanged hypercubes: construction, cut certificates, restricted connectivity.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="export EH(s,t), Q_n or DC(n)")
    _add_target(p)
    _add_output(p, ("edgelist", "dot"), "edgelist")

    p = sub.add_parser("certify", help="emit and validate the canonical h-cuts X, S, F")
    _add_target(p, eh_only=True)
    p.add_argument("--h", type=int, required=True)
    _add_output(p, ("table", "structured"), "table")

    p = sub.add_parser("solve", help="exact kappa^(h) / lambda^(h)")
    _add_target(p)
    p.add_argument("--h", type=int, required=True)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--kappa", dest="which", action="store_const", const="kappa")
    which.add_argument("--lambda", dest="which", action="store_const", const="lambda")
    which.add_argument("--both", dest="which", action="store_const", const="both")
    p.set_defaults(which="both")
    _add_budget(p)
    _add_output(p, ("table", "structured"), "table")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (structured only)")

    p = sub.add_parser("verify-table", help="check kappa^(h) = lambda^(h) = 2^h(s+1-h) for small EH(s,t)")
    p.add_argument("--max-total", type=int, default=5, help="largest s+t to include")
    _add_budget(p)
    _add_output(p, ("table", "structured"), "table")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (structured only)")
    return parser


def _topology(args) -> Topology:
    if args.eh is not None:
        return build_eh(TopologyParams(*args.eh))
    if getattr(args, "qn", None) is not None:
        return build_qn(args.qn)
    return build_dc(args.dc)


def _budget(args) -> solver.SolveBudget:
    try:
        return solver.SolveBudget(args.max_subset_size, args.max_candidates, args.workers, args.time_limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _document(command: str, params: dict, budget, reports, timings: dict | None) -> str:
    doc = {
        "tool": "ehconn",
        "version": __version__,
        "command": command,
        "params": params,
        "budget": None if budget is None else budget.to_record(),
        "reports": reports,
    }
    if timings is not None:
        doc["timings"] = timings
    return json.dumps(doc, indent=2) + "\n"


def cmd_generate(args) -> int:
    g = _topology(args)
    text = formats.to_dot(g) if args.format == "dot" else formats.to_edgelist(g)
    _emit(text, args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    params = TopologyParams(*args.eh)
    s, t, h = params.s, params.t, args.h
    if s > t:
        raise UsageError(f"certify needs s <= t (got s={s}, t={t}); use --eh {t} {s}")
    if not 0 <= h <= s:
        raise UsageError(f"h={h} is outside the range 0 ≤ h ≤ s (s={s})")
    g = build_eh(params)
    core = cuts.canonical_core(params, h)
    S = cuts.canonical_vertex_cut(params, h, g)
    F = cuts.canonical_edge_cut(params, h, g)
    formula = cuts.formula_value(s, h)
    s_ok = cuts.is_h_vertex_cut(g, S.members, h) and len(S) == formula
    f_ok = cuts.is_h_edge_cut(g, F.members, h) and len(F) == formula
    if args.format == "structured":
        record = {
            "X": [g.label(v) for v in core],
            "vertex_cut": S.to_record(),
            "edge_cut": F.to_record(),
            "formula_value": formula,
            "vertex_cut_valid": s_ok,
            "edge_cut_valid": f_ok,
        }
        text = _document("certify", {"s": s, "t": t, "h": h}, None, [record], None)
    else:
        lines = [
            f"{g.name} h={h}",
            f"X ({len(core)}): " + " ".join(g.label(v) for v in core),
            f"S ({len(S)}): " + " ".join(g.label(v) for v in S.members),
            f"F ({len(F)}): " + " ".join(f"{g.label(u)}-{g.label(v)}" for u, v in F.members),
            f"formula 2^h(s+1-h) = {formula}",
            f"vertex-cut size {len(S)}: {'valid' if s_ok else 'INVALID'}",
            f"edge-cut size {len(F)}: {'valid' if f_ok else 'INVALID'}",
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if s_ok and f_ok else EXIT_MISMATCH


def _fmt(value) -> str:
    return "-" if value is None else str(value)


def _report_line(r: solver.ConnectivityReport) -> str:
    line = (f"{r.topology} h={r.h} {r.quantity} formula={_fmt(r.formula_value)} "
            f"found={_fmt(r.found_value)} bound={_fmt(r.upper_bound)} status={r.status}")
    if r.certificate is not None and r.certificate.members:
        c = r.certificate
        if c.kind == cuts.VERTEX_CUT:
            members = " ".join(c.label(v) for v in c.members)
        else:
            members = " ".join(f"{c.label(u)}-{c.label(v)}" for u, v in c.members)
        line += f"\n  {c.kind} [{c.provenance}]: {members}"
    return line


def _exit_for(reports) -> int:
    codes = {_STATUS_EXIT[r.status] for r in reports}
    for code in (EXIT_MISMATCH, EXIT_UPPER_BOUND, EXIT_NO_CUT):
        if code in codes:
            return code
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.h < 0:
        raise UsageError(f"h must be >= 0 (got {args.h})")
    g = _topology(args)
    budget = _budget(args)
    reports, timings = [], {}
    if args.which in ("kappa", "both"):
        t0 = time.perf_counter()
        reports.append(solver.kappa_h_exact(g, args.h, budget))
        timings["kappa_h"] = round(time.perf_counter() - t0, 3)
    if args.which in ("lambda", "both"):
        t0 = time.perf_counter()
        reports.append(solver.lambda_h_exact(g, args.h, budget))
        timings["lambda_h"] = round(time.perf_counter() - t0, 3)
    if args.format == "structured":
        params = dict(solver.graph_params(g), h=args.h, quantity=args.which)
        text = _document("solve", params, budget, [r.to_record() for r in reports],
                         timings if args.timings else None)
    else:
        text = "\n".join(_report_line(r) for r in reports) + "\n"
    _emit(text, args.out)
    return _exit_for(reports)


def _table_rows(reports):
    """Pair kappa/lambda reports of the same (s, t, h)."""
    rows = []
    for k, l in zip(reports[::2], reports[1::2]):
        statuses = {k.status, l.status}
        status = statuses.pop() if len(statuses) == 1 else f"{k.status}/{l.status}"
        rows.append((k.params["s"], k.params["t"], k.h, k.formula_value, k.found_value, l.found_value, status))
    return rows


def cmd_verify_table(args) -> int:
    if args.max_total < 2:
        raise UsageError(f"--max-total must be >= 2 (got {args.max_total})")
    budget = _budget(args)
    t0 = time.perf_counter()
    reports = solver.verify_theorem_table(args.max_total, budget)
    elapsed = round(time.perf_counter() - t0, 3)
    if args.format == "structured":
        text = _document("verify-table", {"max_total": args.max_total}, budget,
                         [r.to_record() for r in reports],
                         {"total": elapsed} if args.timings else None)
    else:
        header = ("s", "t", "h", "formula", "kappa_h", "lambda_h", "status")
        rows = [header] + [tuple(_fmt(x) for x in row) for row in _table_rows(reports)]
        widths = [max(len(str(r[i])) for r in rows) for i in range(len(header))]
        lines = []
        for row in rows:
            line = "  ".join(str(c).rjust(w) for c, w in zip(row, widths))
            if row is not header and row[-1] != solver.VERIFIED_EQUAL:
                line += "  <<<"
            lines.append(line.rstrip())
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return _exit_for(reports)


COMMANDS = {
    "generate": cmd_generate,
    "certify": cmd_certify,
    "solve": cmd_solve,
    "verify-table": cmd_verify_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, TopologyError) as exc:
        print(f"ehconn {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
