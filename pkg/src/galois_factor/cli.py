"""Command-line interface.

Subcommands: lattice, cn, factor, fn, check, reconstruct.  Exit status 0
on success, 1 on any validation failure, 2 when an enumeration budget is
exceeded.  ``GALOIS_FACTOR_BUDGET`` overrides the default budget;
``--budget`` overrides both.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import factorization as fz
from . import fuzzy as fy
from . import io as fio
from . import oracles
from .contexts import concepts
from .errors import BudgetExceededError, ContextFormatError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BUDGET = 2


class CliError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit codes under our control
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("path", help="input context (.cxt for Boolean, .csv for fuzzy)")
    common.add_argument("--emit", choices=["json", "dot"], default="json")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget")
    common.add_argument("--frame", metavar="NAME:M", help="fuzzy frame, e.g. godel:4")

    parser = _Parser(prog="galois-factor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("lattice", parents=[common], help="concept lattice")
    sub.add_parser("cn", parents=[common], help="necessity-closed pairs and atoms")
    sub.add_parser("factor", parents=[common], help="independent subcontexts and R*")
    sub.add_parser("fn", parents=[common], help="graded necessity-closed pairs")
    check = sub.add_parser("check", parents=[common], help="run proposition checkers")
    check.add_argument(
        "--props",
        default="fp1,fp2,fp3,fp4,fp5",
        help="comma-separated subset of fp1,fp2,fp3,fp4,fp5",
    )
    check.add_argument(
        "--pairs", default="all", help="'all' or comma-separated pair indices"
    )
    sub.add_parser("reconstruct", parents=[common], help="rebuild the relation from blocks")
    return parser


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("GALOIS_FACTOR_BUDGET")
    if env:
        return int(env)
    return fy.DEFAULT_ENUM_BUDGET


def _load_boolean(path: Path):
    return fio.parse_cxt(path.read_text())


def _load_fuzzy(path: Path, frame: str | None):
    if not frame:
        raise CliError("fuzzy input needs --frame (godel:M, lukasiewicz:M or dprod:M1,M2,M3)")
    return fio.parse_fuzzy_csv(path.read_text(), frame)


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit(args, result, oracle_report=None) -> int:
    if args.emit == "dot":
        text = fio.emit_dot(result)
    else:
        payload = fio.to_jsonable(result)
        if oracle_report is not None:
            payload["oracle"] = fio.to_jsonable(oracle_report)
        text = fio.emit_json(payload)
    _write(args, text)
    if oracle_report is not None and not oracle_report.ok:
        print("oracle mismatch detected", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _is_fuzzy_input(path: Path) -> bool:
    if path.suffix == ".cxt":
        return False
    if path.suffix == ".csv":
        return True
    raise CliError(f"cannot tell the input format from {path.suffix!r} (use .cxt or .csv)")


def _cmd_lattice(args) -> int:
    path = Path(args.path)
    if _is_fuzzy_input(path):
        if args.oracle:
            raise CliError("no brute-force oracle exists for fuzzy concept lattices")
        ctx = _load_fuzzy(path, args.frame)
        lattice = fy.fuzzy_concepts(ctx, budget=_budget(args))
        return _emit(args, lattice)
    ctx = _load_boolean(path)
    lattice = concepts(ctx)
    report = oracles.compare_concepts(ctx, lattice) if args.oracle else None
    return _emit(args, lattice, report)


def _cmd_cn(args) -> int:
    ctx = _load_boolean(Path(args.path))
    lattice = fz.cn_enumerate(ctx)
    report = None
    if args.oracle and lattice.materialized:
        report = oracles.compare_cn(ctx, list(lattice))
    return _emit(args, lattice, report)


def _cmd_factor(args) -> int:
    ctx = _load_boolean(Path(args.path))
    result = fz.factorize(ctx)
    payload = fio.to_jsonable(result)
    exact = fz.reassemble(result) == result.core
    payload["reconstruction"] = "exact" if exact else "mismatch"
    try:
        mask = fz.rstar(result.core) if result.core.attributes else None
        payload["rstar"] = (
            None if mask is None else fio.to_jsonable(mask)["mask"]
        )
    except BudgetExceededError:
        payload["rstar"] = None
        payload["rstar_note"] = "too many atoms to cross-check the intersection form"
    report = None
    if args.oracle:
        atom_pairs = [fz.NecessityPair(b.objects, b.attrs) for b in result.blocks]
        report = oracles.compare_atoms(result.core, atom_pairs)
    if args.emit == "dot":
        _write(args, fio.emit_dot(result))
    else:
        if report is not None:
            payload["oracle"] = fio.to_jsonable(report)
        _write(args, fio.emit_json(payload))
    if not exact or (report is not None and not report.ok):
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_fn(args) -> int:
    ctx = _load_fuzzy(Path(args.path), args.frame)
    lattice = fy.fn_enumerate(ctx, budget=_budget(args))
    report = oracles.compare_fn(ctx, list(lattice)) if args.oracle else None
    return _emit(args, lattice, report)


def _cmd_reconstruct(args) -> int:
    ctx = _load_boolean(Path(args.path))
    result = fz.factorize(ctx)
    exact = fz.reassemble(result) == result.core
    payload = {
        "type": "reconstruction",
        "blocks": len(result.blocks),
        "exact": exact,
        "removed": fio.to_jsonable(result)["removed"],
    }
    _write(args, fio.emit_json(payload))
    return EXIT_OK if exact else EXIT_VALIDATION


def _cmd_check(args) -> int:
    ctx = _load_fuzzy(Path(args.path), args.frame)
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    known = {"fp1", "fp2", "fp3", "fp4", "fp5"}
    bad = sorted(set(props) - known)
    if bad:
        raise CliError(f"unknown props {bad}; expected a subset of {sorted(known)}")
    if args.emit == "dot":
        raise CliError("check reports have no DOT form; use --emit json")

    lattice = fy.fn_enumerate(ctx, budget=_budget(args))
    if args.pairs == "all":
        selected = list(range(len(lattice)))
    else:
        try:
            selected = [int(s) for s in args.pairs.split(",") if s.strip()]
        except ValueError:
            raise CliError(f"bad --pairs value {args.pairs!r}") from None
        out_of_range = [i for i in selected if not 0 <= i < len(lattice)]
        if out_of_range:
            raise CliError(f"pair indices out of range: {out_of_range}")

    is_godel = all(t.name.startswith("godel") for t in ctx.triples)
    payload = {
        "type": "check",
        "preconditions": {
            "normalized": fy.is_fuzzy_normalized(ctx),
            "top_normalized_rows": fy.is_top_normalized(ctx, "rows"),
            "top_normalized_columns": fy.is_top_normalized(ctx, "columns"),
            "godel_frame": is_godel,
        },
        "pair_count": len(lattice),
        "rows": [],
    }
    for i in selected:
        pair = lattice[i]
        row = {"pair": i, **fio.to_jsonable(lattice)["pairs"][i]}
        if "fp1" in props:
            row["fp1"] = fy.check_fp1(ctx, pair)
        if "fp2" in props:
            row["fp2"] = fy.check_fp2(ctx, pair)
        if "fp3" in props:
            row["fp3"] = fy.check_fp3(ctx, pair)
        if "fp4" in props:
            rep = fy.check_fp4(ctx, pair)
            row["fp4"] = {
                "strict_hypothesis": list(rep.strict_hypothesis),
                "top_hypothesis": list(rep.top_hypothesis),
                "hypothesis_holds_per_attribute": list(rep.hypothesis_holds_per_attribute),
                "all_hypotheses_hold": rep.all_hypotheses_hold,
                "inequality_holds": rep.inequality_holds,
                "g_up": dict(zip(ctx.attributes, map(str, rep.g_up.as_fractions()))),
                "g_up_pi": dict(zip(ctx.attributes, map(str, rep.g_up_pi.as_fractions()))),
            }
        if "fp5" in props:
            interval = fy.interval_from_pair(ctx, pair)
            row["fp5"] = {
                "lower": {
                    "extent": dict(zip(ctx.objects, map(str, interval.lower.extent.as_fractions()))),
                    "intent": dict(zip(ctx.attributes, map(str, interval.lower.intent.as_fractions()))),
                },
                "upper": {
                    "extent": dict(zip(ctx.objects, map(str, interval.upper.extent.as_fractions()))),
                    "intent": dict(zip(ctx.attributes, map(str, interval.upper.intent.as_fractions()))),
                },
                "ordered": interval.ordered,
            }
        payload["rows"].append(row)
    _write(args, fio.emit_json(payload))
    return EXIT_OK


_COMMANDS = {
    "lattice": _cmd_lattice,
    "cn": _cmd_cn,
    "factor": _cmd_factor,
    "fn": _cmd_fn,
    "check": _cmd_check,
    "reconstruct": _cmd_reconstruct,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CliError, ContextFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
