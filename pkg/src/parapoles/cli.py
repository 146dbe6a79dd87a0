"""Command line interface.

    parapoles tables --type C --rank 4
    parapoles verify --type G --rank 2 --checks all
    parapoles verify --type E --rank 8 --node 4 --budget 30m --format json
    parapoles appendix-compare
    parapoles quotient --type E --rank 8 --node 4
    parapoles words --type B --rank 3 --node 2 --check-tables --certify-rules
    parapoles eisenstein --type G --rank 2

Exit status is 0 on success, 1 when a check fails or an unexpected mismatch
is found, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from .appendix import compare
from .checks import CHECKS, run_checks
from .eisenstein import eisenstein_poles
from .lfactor import frac_str
from .parabolic import level_sets, parabolic_datum
from .quotient import quotient_stats
from .rootsystem import CartanType, UsageError
from .words import canonical_w0_word, certify_swap_rules, coroot_sequence, table_layout

__all__ = ["main", "parse_budget"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# rank ranges used when --rank is omitted
_DEFAULT_RANKS = {
    "verify": {"A": range(1, 7), "B": range(2, 7), "C": range(2, 7), "D": range(4, 7),
               "E": (6, 7, 8), "F": (4,), "G": (2,)},
    "compare": {"A": range(1, 11), "B": range(2, 11), "C": range(2, 11), "D": range(4, 11),
                "E": (6, 7, 8), "F": (4,), "G": (2,)},
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_budget(text: str | None) -> float | None:
    """``90``, ``90s``, ``30m`` or ``2h`` in seconds."""
    if text is None:
        return None
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([smh]?)\s*", text)
    if not m:
        raise UsageError(f"bad duration {text!r}")
    return float(m.group(1)) * {"": 1, "s": 1, "m": 60, "h": 3600}[m.group(2)]


def _targets(args, scope: str) -> list[tuple[CartanType, int]]:
    series = [args.type] if args.type else list("ABCDEFG")
    out = []
    for s in series:
        ranks = [args.rank] if args.rank is not None else list(_DEFAULT_RANKS[scope][s])
        for n in ranks:
            c = CartanType(s, n)
            if args.node is not None:
                if not 1 <= args.node <= n:
                    raise UsageError(f"node {args.node} out of range for {c} (1..{n})")
                out.append((c, args.node))
            else:
                out.extend((c, k) for k in c.nodes)
    return out


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _fmt_set(xs) -> str:
    return "{" + ", ".join(frac_str(x) for x in xs) + "}"


# -- tables -------------------------------------------------------------------

def _table_rows(targets):
    rows = []
    for c, node in targets:
        p = parabolic_datum(c, node)
        rows.append((c, node, p.s_k, {d: s.real_parts for d, s in level_sets(p).items()}))
    return rows


def _latex(rows) -> str:
    out = []
    for c in dict.fromkeys(r[0] for r in rows):
        mine = [r for r in rows if r[0] == c]
        dmax = max(max(r[3]) for r in mine)
        cols = 2 + dmax
        out.append("\\begin{tabular}{@{}" + "c" * cols + "@{}}")
        out.append(f"\\multicolumn{{{cols}}}{{c}}{{${c.series}_{{{c.rank}}}$}} \\\\ \\midrule")
        head = ["Node"] + [f"$L({d})$" for d in range(1, dmax + 1)] + ["$s_k$"]
        out.append(" & ".join(head) + " \\\\ \\midrule")
        for _, node, s_k, lv in mine:
            cells = [f"${node}$"]
            for d in range(1, dmax + 1):
                xs = lv.get(d)
                cells.append("$\\{" + ",".join(frac_str(x) for x in xs) + "\\}$" if xs else "")
            cells.append(f"${frac_str(s_k)}$")
            out.append(" & ".join(cells) + " \\\\")
        out.append("\\bottomrule")
        out.append("\\end{tabular}")
        out.append("")
    return "\n".join(out)


def cmd_tables(args) -> int:
    if args.type is None:
        raise UsageError("tables needs --type")
    if args.rank is None:
        fixed = {"E": None, "F": 4, "G": 2}.get(args.type)
        if fixed is None:
            raise UsageError("tables needs --rank for this type")
        args.rank = fixed
    rows = _table_rows(_targets(args, "verify"))
    payload = {"rows": [{"type": str(c), "node": node, "s_k": frac_str(s_k),
                         "levels": {str(d): [frac_str(x) for x in xs] for d, xs in lv.items()}}
                        for c, node, s_k, lv in rows]}
    if args.format == "latex":
        text = _latex(rows)
    else:
        text = "\n".join(f"{c} node {node}: s_k={frac_str(s_k)} "
                         + " ".join(f"L({d})={_fmt_set(xs)}" for d, xs in lv.items())
                         for c, node, s_k, lv in rows)
    _emit(args, text, payload)
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def _verify_job(job):
    series, rank, node, names, budget, timings = job
    reports = run_checks(CartanType(series, rank), node, names, budget)
    return [r.to_json(timings) for r in reports]


def _check_names(text: str) -> list[str]:
    names = list(CHECKS) if text == "all" else [t.strip() for t in text.split(",") if t.strip()]
    for n in names:
        if n not in CHECKS:
            raise UsageError(f"unknown check {n!r}; choose from {', '.join(CHECKS)} or all")
    return names


def _map(fn, jobs, n_jobs):
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as ex:
            return list(ex.map(fn, jobs))
    return [fn(j) for j in jobs]


def cmd_verify(args) -> int:
    names = _check_names(args.checks)
    budget = parse_budget(args.budget)
    targets = _targets(args, "verify")
    jobs = [(c.series, c.rank, node, names, budget, args.timings) for c, node in targets]
    reports = [r for chunk in _map(_verify_job, jobs, args.jobs) for r in chunk]
    failed = [r for r in reports if r["status"] == "failed"]
    lines = []
    for r in reports:
        extra = f" ({r['reason']})" if r.get("reason") else ""
        if r["status"] == "failed":
            extra = " " + json.dumps(r.get("counterexample"), sort_keys=True)
        if args.timings and r.get("millis") is not None:
            extra += f" [{r['millis']} ms]"
        lines.append(f"{r['type']} node {r['node']} {r['check']}: {r['status'].upper()}{extra}")
    lines.append(f"{len(reports)} checks, {len(failed)} failed")
    _emit(args, "\n".join(lines), {"reports": reports, "failed": len(failed)})
    return EXIT_FAIL if failed else EXIT_OK


# -- appendix-compare ---------------------------------------------------------

def cmd_appendix_compare(args) -> int:
    cells = [cell for c, node in _targets(args, "compare") for cell in compare(c, node)]
    bad = [x for x in cells if x.status == "mismatch"]
    allowed = [x for x in cells if x.status == "allowlisted"]
    lines = []
    for x in allowed + bad:
        lines.append(f"{x.type} node {x.node} {x.column}: {x.status.upper()} printed {x.printed}, derived {x.derived}")
    lines.append(f"{len(cells)} cells: {len(cells) - len(allowed) - len(bad)} match, "
                 f"{len(allowed)} allowlisted, {len(bad)} unexpected")
    payload = {"cells": [x.to_json() for x in cells], "allowlisted": len(allowed), "unexpected": len(bad)}
    _emit(args, "\n".join(lines), payload)
    return EXIT_FAIL if bad else EXIT_OK


# -- quotient -----------------------------------------------------------------

def cmd_quotient(args) -> int:
    stats = [quotient_stats(c, node) for c, node in _targets(args, "verify")]
    lines = [f"{s['type']} node {s['node']}: {s['count']} representatives (expected {s['expected_count']}), "
             f"{s['edges']} covering edges, max length {s['max_length']}, "
             f"palindromic {s['palindromic']}" for s in stats]
    bad = [s for s in stats if s["count"] != s["expected_count"] or not s["palindromic"]]
    _emit(args, "\n".join(lines), {"quotients": stats})
    return EXIT_FAIL if bad else EXIT_OK


# -- words --------------------------------------------------------------------

def cmd_words(args) -> int:
    targets = _targets(args, "verify")
    out, lines, ok = [], [], True
    for c, node in targets:
        w = canonical_w0_word(c, node)
        seq = coroot_sequence(w)
        entry = {"type": str(c), "node": node, "word": list(w.letters), "canonical": w.canonical,
                 "coroots": [list(v) for v in seq]}
        lines.append(f"{c} node {node}: {w}" + ("" if w.canonical else " (greedy, not canonical)"))
        if args.check_tables:
            expected = table_layout(c, node)
            if expected is None:
                entry["tables"] = "skipped"
                lines.append("  tables: skipped (no layout for this case)")
            else:
                match = expected == seq
                ok &= match
                entry["tables"] = "match" if match else "mismatch"
                lines.append(f"  tables: {entry['tables']}")
        if args.certify_rules:
            if c.series in "ABCD" and c.rank <= 5:
                rep = certify_swap_rules(c, node)
                ok &= rep.ok
                entry["swap_rules"] = rep.to_json()
                lines.append(f"  swap rules: {rep.status}"
                             + (f" {json.dumps(rep.counterexample, sort_keys=True)}" if rep.counterexample else ""))
            else:
                entry["swap_rules"] = "skipped"
                lines.append("  swap rules: skipped (classical rank <= 5 only)")
        out.append(entry)
    _emit(args, "\n".join(lines), {"words": out})
    return EXIT_OK if ok else EXIT_FAIL


# -- eisenstein ---------------------------------------------------------------

def cmd_eisenstein(args) -> int:
    if args.rank is None and args.type not in (None, "F", "G"):
        raise UsageError("eisenstein needs --rank for this type")
    reports = [eisenstein_poles(c, node) for c, node in _targets(args, "verify")]
    lines = []
    for r in reports:
        lines.append(f"{r.type} node {r.node}: d0={r.d0} N={r.n_max} strip |Re s| <= {frac_str(r.strip_bound)} "
                     f"[{r.status.upper()}]")
        for e in r.poles:
            lines.append(f"  Re s = {frac_str(e.real_part)}, character order {e.character_order}, "
                         f"order <= {e.max_order}")
        for v in r.violations:
            lines.append(f"  violated: {v['invariant']} at Re s = {v['pole']['real_part']}")
    _emit(args, "\n".join(lines), {"reports": [r.to_json() for r in reports]})
    return EXIT_FAIL if any(r.violations for r in reports) else EXIT_OK


# -- entry point --------------------------------------------------------------

def _common(p: argparse.ArgumentParser, formats=("text", "json")):
    p.add_argument("--type", choices=list("ABCDEFG"))
    p.add_argument("--rank", type=int)
    p.add_argument("--node", type=int)
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parapoles", description="Parabolic quotient combinatorics and pole data.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("tables", help="level sets L(d) and s_k per node")
    _common(p, ("text", "json", "latex"))
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="exhaustive checks over the quotient")
    _common(p)
    p.add_argument("--checks", default="all")
    p.add_argument("--budget")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="include wall-clock times (not deterministic)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("appendix-compare", help="derived tables against the printed ones")
    _common(p)
    p.set_defaults(func=cmd_appendix_compare)

    p = sub.add_parser("quotient", help="size and covering-graph statistics")
    _common(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("words", help="reduced words for the longest representative")
    _common(p)
    p.add_argument("--check-tables", action="store_true")
    p.add_argument("--certify-rules", action="store_true")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("eisenstein", help="candidate poles and maximal order")
    _common(p)
    p.set_defaults(func=cmd_eisenstein)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
        return args.func(args)
    except UsageError as exc:
        print(f"parapoles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
