"""Command-line entry point.

Exit codes: 0 success, 1 the property under test fails, 2 bad input,
3 budget exceeded.
"""

import argparse
import enum
import json
import sys

from . import __version__
from .amalgam import AmalgamProblem, NoAmalgamCertificate, find_amalgam
from .catalog import ENTRIES, catalog
from .completion import POLICIES, complete_with_loops
from .cuts import nonprincipal_cuts
from .errors import (
    BudgetExceeded,
    FormatError,
    MatroidError,
    PreconditionViolated,
    UnknownCatalogEntry,
    UnsupportedParam,
    ValidationError,
)
from .fileformat import load, serialize
from .lines import Verdict, find_line_arrangements
from .matroid import Matroid, elements_of
from .modularity import (
    PairDefectReport,
    hypermodular_witness,
    is_modular,
    matroid_modular_defect,
    nonmodular_pairs,
)

OK, FAILS, BAD_INPUT, BUDGET = 0, 1, 2, 3

# witnesses that are plain numbers rather than subsets
_NUMERIC_WITNESS = {"RankTooSmall", "WrongRank", "WrongCorank", "BudgetExceeded", "SizeCapExceeded"}


def _plain(x):
    """JSON-ready form; int subsets become sorted index lists."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return elements_of(x)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, Matroid):
        return {"name": x.name, "elements": x.n, "rank": x.rank_total}
    if isinstance(x, PairDefectReport):
        return {"x": elements_of(x.x), "y": elements_of(x.y), "defect": x.defect, "ranks": list(x.ranks)}
    if isinstance(x, (list, tuple, frozenset, set)):
        items = [_plain(v) for v in x]
        return sorted(items) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "__dataclass_fields__"):
        return {k: _plain(getattr(x, k)) for k, f in x.__dataclass_fields__.items() if f.repr}
    return str(x)


def _message(err):
    if isinstance(err, OSError):
        return str(err)
    return str(err.args[0]) if err.args else str(err)


def _error_report(err):
    name = type(err).__name__
    w = getattr(err, "witness", None)
    if name in _NUMERIC_WITNESS and isinstance(w, int):
        witness = w
    else:
        witness = _plain(w)
    out = {"error": name, "message": _message(err), "witness": witness}
    if isinstance(err, FormatError):
        out["line"] = err.line
    return out


def _exit_code(err):
    if isinstance(err, BudgetExceeded):
        return BUDGET
    if isinstance(err, (ValidationError, FormatError, UnknownCatalogEntry, UnsupportedParam, OSError)):
        return BAD_INPUT
    if isinstance(err, (PreconditionViolated, MatroidError)):
        return FAILS
    return BAD_INPUT


def _names(m, mask):
    return "{" + ",".join(m.labels[i] for i in elements_of(mask)) + "}"


def _summary(m):
    return {
        "name": m.name,
        "elements": m.n,
        "labels": list(m.labels),
        "rank": m.rank_total,
        "flats_by_rank": [len(level) for level in m.flats_by_rank],
        "loops": elements_of(m.loops),
    }


def _summary_lines(m):
    return [
        f"matroid {m.name}: {m.n} elements, rank {m.rank_total}",
        "flats by rank: " + " ".join(str(len(level)) for level in m.flats_by_rank),
    ]


# ---------------------------------------------------------------- commands


def cmd_validate(args):
    m = load(args.file)
    return OK, _summary_lines(m) + ["valid"], {"valid": True, "matroid": _summary(m)}


def cmd_analyze(args):
    m = load(args.file)
    lines = _summary_lines(m)
    modular = is_modular(m)
    defect = matroid_modular_defect(m)
    report = {"matroid": _summary(m), "modular": modular, "modular_defect": defect}
    lines.append(f"loops: {_names(m, m.loops) if m.loops else 'none'}")
    lines.append(f"modular: {'yes' if modular else 'no'}")
    lines.append(f"modular defect: {defect}")
    if m.rank_total >= 3:
        w = hypermodular_witness(m)
        report["hypermodular"] = w is None
        report["hypermodular_witness"] = _plain(w)
        if w is None:
            lines.append("hypermodular: yes")
        else:
            lines.append(f"hypermodular: no, {_names(m, w[0])} and {_names(m, w[1])} are not a modular pair")
        if w is None and m.rank_total == 4 and m.is_loopless():
            pairs = nonmodular_pairs(m)
            counts = {}
            for p in pairs:
                counts[p.kind.value] = counts.get(p.kind.value, 0) + 1
            report["nonmodular_pairs"] = counts
            for k in sorted(counts):
                lines.append(f"non-modular {k} pairs: {counts[k]}")
    return OK, lines, report


def cmd_detect_vamos(args):
    m = load(args.file)
    quads = find_line_arrangements(m)
    vamos = [q for q in quads if q.verdict == Verdict.VAMOS]
    anti = [q for q in quads if q.verdict == Verdict.ANTI_VAMOS]
    lines = _summary_lines(m) + [f"vamos quadruples: {len(vamos)}", f"anti-vamos quadruples: {len(anti)}"]
    for q in vamos:
        lines.append(
            "vamos: T0=" + _names(m, q.t0) + " T1=" + _names(m, q.t1)
            + " L0=" + _names(m, q.l0) + " L1=" + _names(m, q.l1)
            + f" r(L0|L1)={m.rank(q.l0 | q.l1)}"
        )
    report = {
        "matroid": _summary(m),
        "vamos": [
            {
                "lines": [elements_of(t) for t in q.lines],
                "labels": [[m.labels[i] for i in elements_of(t)] for t in q.lines],
                "rank_l0_l1": m.rank(q.l0 | q.l1),
            }
            for q in vamos
        ],
        "anti_vamos_count": len(anti),
    }
    return OK, lines, report


def cmd_cuts(args):
    m = load(args.file)
    cuts = nonprincipal_cuts(m)
    lines = _summary_lines(m) + [f"proper non-principal cuts: {len(cuts)}"]
    out = []
    for i, c in enumerate(cuts):
        members = c.sorted_members(m)
        lines.append(f"cut {i}: {len(members)} flats, minimal ones " + " ".join(
            _names(m, f) for f in members if not any(g != f and g & f == g for g in members)
        ))
        out.append({"members": [elements_of(f) for f in members], "kind": c.kind.value})
    return OK, lines, {"matroid": _summary(m), "cuts": out}


def cmd_complete(args):
    m = load(args.file)
    trace = complete_with_loops(m, policy=args.policy, seed=args.seed, fast=args.fast)
    r = trace.result
    lines = _summary_lines(m) + [
        f"policy: {args.policy}",
        f"extensions: {len(trace.steps)}",
        "defect sequence: " + " ".join(map(str, trace.defect_sequence)),
        f"final defect: {trace.defect_sequence[-1]}",
        f"result: {r.n} elements, flats by rank " + " ".join(str(len(level)) for level in r.flats_by_rank),
    ]
    report = {
        "matroid": _summary(m),
        "policy": args.policy,
        "seed": args.seed,
        "extensions": len(trace.steps),
        "defect_sequence": trace.defect_sequence,
        "nonprincipal_cuts": trace.nonprincipal_cut_count,
        "steps": [
            {
                "generating_pair": _plain(s.generating_pair),
                "cut": [elements_of(f) for f in s.cut.sorted_members(s.base)],
                "defect_before": s.defect_before,
                "defect_after": s.defect_after,
            }
            for s in trace.steps
        ],
        "result": _summary(r),
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(serialize(r))
        lines.append(f"wrote {args.output}")
    return OK, lines, report


def cmd_amalgam(args):
    m1, m2 = load(args.file1), load(args.file2)
    p = AmalgamProblem(m1, m2, args.shared)
    res = find_amalgam(p, max_nodes=args.max_nodes, time_limit=args.time_limit)
    if isinstance(res, NoAmalgamCertificate):
        lines = [
            f"no amalgam: search over {res.variables} free subsets finished after {res.nodes} nodes",
        ]
        return FAILS, lines, {"amalgam": None, "certificate": {"variables": res.variables, "nodes": res.nodes}}
    lines = _summary_lines(res) + ["amalgam found"]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(serialize(res))
        lines.append(f"wrote {args.output}")
    report = {"amalgam": _summary(res), "flats": [[elements_of(f) for f in lv] for lv in res.flats_by_rank]}
    return OK, lines, report


def cmd_catalog(args):
    m = catalog(args.name, *args.params)
    text = serialize(m, args.kind)
    return OK, text.rstrip("\n").split("\n"), {"matroid": _summary(m)}


# ---------------------------------------------------------------- parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="write a JSON report to PATH")
    p = argparse.ArgumentParser(prog="kantor", description="Exact matroid analysis and modular completion.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("validate", cmd_validate, "check the matroid axioms"),
        ("analyze", cmd_analyze, "modularity summary"),
        ("detect-vamos", cmd_detect_vamos, "scan rank-2 flats for Vamos arrangements"),
        ("cuts", cmd_cuts, "list proper non-principal modular cuts"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("file")
        s.set_defaults(func=fn)

    s = sub.add_parser("complete", parents=[common], help="extend to a modular matroid")
    s.add_argument("file")
    s.add_argument("--policy", choices=POLICIES, default="lex")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--fast", action="store_true", help="skip per-step verification")
    s.add_argument("--output", metavar="PATH", help="write the completed matroid")
    s.set_defaults(func=cmd_complete)

    s = sub.add_parser("amalgam", parents=[common], help="search for an amalgam of two matroids")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--shared", type=int, required=True, help="number of leading shared elements")
    s.add_argument("--max-nodes", type=int, default=1_000_000)
    s.add_argument("--time-limit", type=float, default=60.0)
    s.add_argument("--output", metavar="PATH")
    s.set_defaults(func=cmd_amalgam)

    s = sub.add_parser("catalog", parents=[common], help="print a named matroid: " + ", ".join(ENTRIES))
    s.add_argument("name")
    s.add_argument("params", nargs="*")
    s.add_argument("--kind", choices=("flats", "bases", "circuits"), default="flats")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code, lines, report = args.func(args)
        report = {"command": args.command, "status": "ok" if code == OK else "fails", **report}
    except (MatroidError, OSError) as err:
        code = _exit_code(err)
        rep = _error_report(err)
        lines = [f"error: {type(err).__name__}: {_message(err)}"]
        if rep["witness"] is not None:
            lines.append(f"witness: {json.dumps(rep['witness'])}")
        report = {"command": args.command, "status": "error", **rep}
    out = sys.stdout if code in (OK, FAILS) and "error" not in report else sys.stderr
    print("\n".join(lines), file=out)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code
