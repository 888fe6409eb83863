"""Command line interface: ``cigenus bound|profile|sweep|verify|compare``.

Exit codes: 0 success, 1 failed asserted check, 2 invalid input,
3 large-degree hypothesis violated (without --force), 4 infeasible m,
5 output not writable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .bounds import (
    ALL_MODES,
    bms_castelnuovo_bound,
    bms_small_degree_bound,
    build_report,
    ci_curve_genus,
)
from .errors import CigenusError, InfeasibleError, InvalidInput
from .exactnum import ceil_div, rat_approx, rat_str
from .gamma import (
    RELAXED,
    TIGHT,
    CurveInstance,
    SurfaceSpec,
    gamma_envelope,
    gamma_initial,
    threshold_check,
    vanish_index,
)
from .optimize import relaxed_profile, tight_profile
from .verify import ASSERT, Grid, SUITES, run_suites

SCHEMA_VERSION = "1"
CSV_HEADER = ["n", "degrees", "d", "m0", "epsilon", "hypothesis_ok", "closed_form", "relaxed", "tight"]

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INFEASIBLE, EXIT_OUTPUT = range(6)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return vals


def mode_list(text: str) -> list[str]:
    modes = [x.strip() for x in text.split(",") if x.strip()]
    if "all" in modes:
        return list(ALL_MODES)
    bad = [m for m in modes if m not in ALL_MODES]
    if bad or not modes:
        raise argparse.ArgumentTypeError(f"modes must be among {', '.join(ALL_MODES)} or all")
    return modes


def d_range(text: str) -> range:
    try:
        parts = [int(x) for x in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected START:STOP[:STEP], got {text!r}")
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected START:STOP[:STEP], got {text!r}")
    start, stop, step = parts
    if step < 1:
        raise argparse.ArgumentTypeError("step must be >= 1")
    return range(start, stop + 1, step)


def rat_json(x):
    if x is None:
        return None
    return {"exact": rat_str(x), "approx": rat_approx(x)}


def make_instance(n: int, degrees, d: int) -> CurveInstance:
    if d <= 0:
        raise InvalidInput(f"curve degree must be positive, got {d}")
    return CurveInstance.make(n, degrees, d)


# ---------------------------------------------------------------- reports


def report_dict(rep) -> dict:
    inst = rep.instance
    s = inst.surface
    return {
        "n": s.n,
        "degrees": list(s.degrees),
        "d": inst.d,
        "K": s.K,
        "sigma_k": s.sigma_k,
        "threshold": s.threshold,
        "m0": inst.m0,
        "epsilon": inst.epsilon,
        "closed_form": rat_json(rep.closed_form),
        "relaxed": rat_json(rep.relaxed),
        "tight": rat_json(rep.tight),
        "relaxed_m": rep.relaxed_m,
        "tight_m": rep.tight_m,
        "tight_window": list(rep.tight_window) if rep.tight_window else None,
        "leading_terms": {"d2": rat_json(rep.leading[0]), "d1": rat_json(rep.leading[1])},
        "comparisons": {k: rat_json(v) for k, v in sorted(rep.comparisons.items())},
        "checks": [{"name": n, "ok": ok, "detail": det} for n, ok, det in rep.checks],
        "notes": [{"name": n, "ok": ok, "detail": det} for n, ok, det in rep.notes],
        "infeasible": dict(sorted(rep.errors.items())),
    }


def envelope(command: str, inputs: dict, results: dict, hypothesis_ok: bool, discrepancies, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "hypothesis_ok": hypothesis_ok,
        "discrepancies": list(discrepancies),
        "timing": {"ms": round((time.perf_counter() - started) * 1000, 3)},
    }


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def fmt_table(rows, header) -> str:
    cells = [header] + [["" if c is None else str(c) for c in r] for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def fmt_csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def hypothesis_message(inst: CurveInstance) -> str:
    s = inst.surface
    return (
        f"hypothesis violated: d={inst.d} < K*sigma_k = {s.K}*{s.sigma_k} = {s.threshold} "
        f"(threshold {s.threshold})"
    )


# ---------------------------------------------------------------- commands


def cmd_bound(args, out) -> int:
    started = time.perf_counter()
    inst = make_instance(args.n, args.degrees, args.d)
    hyp = threshold_check(inst)
    if not hyp and not args.force:
        print(hypothesis_message(inst) + "; rerun with --force to compute anyway", file=sys.stderr)
        return EXIT_HYPOTHESIS
    rep = build_report(inst, args.mode)
    inputs = {"n": args.n, "degrees": list(inst.surface.degrees), "d": args.d, "mode": list(args.mode), "force": args.force}
    if args.format == "json":
        env = envelope("bound", inputs, report_dict(rep), hyp, [d for _, _, d in rep.discrepancies], started)
        out.write(dump_json(env))
    else:
        rows = [
            ("K", inst.surface.K),
            ("sigma_k", inst.surface.sigma_k),
            ("m0", inst.m0),
            ("epsilon", inst.epsilon),
            ("hypothesis_ok", hyp),
            ("closed_form", rat_str(rep.closed_form) if rep.closed_form is not None else None),
            ("relaxed", rat_str(rep.relaxed) if rep.relaxed is not None else None),
            ("tight", rat_str(rep.tight) if rep.tight is not None else None),
            ("tight_m", rep.tight_m),
        ]
        rows += [(f"infeasible[{k}]", v) for k, v in sorted(rep.errors.items())]
        rows += [(f"check: {n}", "ok" if ok else f"FAILED {det}") for n, ok, det in rep.checks]
        rows += [(f"note: {n}", "holds" if ok else f"does not hold ({det})") for n, ok, det in rep.notes]
        if args.format == "csv":
            out.write(fmt_csv(rows, ["field", "value"]))
        else:
            if not hyp:
                out.write(hypothesis_message(inst) + "\n")
            out.write(fmt_table(rows, ["field", "value"]))
    return EXIT_CHECK if rep.discrepancies else EXIT_OK


def cmd_profile(args, out) -> int:
    inst = make_instance(args.n, args.degrees, args.d)
    m = inst.m0 if args.m is None else args.m
    if m < 1:
        raise InvalidInput("m must be >= 1")
    build = relaxed_profile if args.mode == RELAXED else tight_profile
    try:
        prof = build(inst, m)
    except InfeasibleError as exc:
        hint = exc.smallest_feasible_m
        msg = f"infeasible m={m}: {exc}"
        msg += f"; smallest feasible m is {hint}" if hint is not None else "; no feasible m in the search window"
        print(msg, file=sys.stderr)
        return EXIT_INFEASIBLE
    s = inst.surface
    rows = []
    for i in range(vanish_index(s, m) + 1):
        env = gamma_envelope(s, m, i) if i >= m else None
        rows.append((i, rat_str(prof[i]), env, gamma_initial(s, i)))
    header = ["i", "gamma", "envelope", "initial"]
    if args.format == "csv":
        out.write(fmt_csv(rows, header))
    elif args.format == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "inputs": {"n": s.n, "degrees": list(s.degrees), "d": inst.d, "m": m, "mode": args.mode},
            "hypothesis_ok": threshold_check(inst),
            "objective": rat_json(prof.objective()),
            "genus_bound": rat_json(prof.objective() + 1),
            "rows": [{"i": i, "gamma": rat_json(prof[i]), "envelope": e, "initial": g} for i, _, e, g in rows],
        }
        out.write(dump_json(obj))
    else:
        out.write(f"mode={args.mode} m={m} objective={rat_str(prof.objective())} bound={rat_str(prof.objective() + 1)}\n")
        out.write(fmt_table(rows, header))
    return EXIT_OK


def sweep_row(task):
    n, degrees, d, modes = task
    inst = CurveInstance.make(n, degrees, d)
    rep = build_report(inst, modes)
    cell = lambda v: rat_str(v) if v is not None else ""  # noqa: E731
    return (
        [n, ",".join(map(str, inst.surface.degrees)), d, inst.m0, inst.epsilon,
         str(rep.hypothesis_ok).lower(), cell(rep.closed_form), cell(rep.relaxed), cell(rep.tight)],
        report_dict(rep),
        [det for _, _, det in rep.discrepancies],
    )


def worker_count(ntasks: int) -> int:
    env = os.environ.get("CIGENUS_THREADS")
    if env is not None:
        try:
            cap = int(env)
        except ValueError:
            raise InvalidInput(f"CIGENUS_THREADS must be a positive integer, got {env!r}")
        if cap < 1:
            raise InvalidInput(f"CIGENUS_THREADS must be a positive integer, got {env!r}")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, ntasks))


def compute_sweep(n, degrees, ds, modes):
    tasks = [(n, tuple(degrees), d, tuple(modes)) for d in ds]
    workers = worker_count(len(tasks))
    if workers == 1 or len(tasks) < 32:
        return [sweep_row(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps input order
        return list(pool.map(sweep_row, tasks, chunksize=8))


def cmd_sweep(args, out) -> int:
    started = time.perf_counter()
    ds = args.d_range
    if len(ds) == 0:
        raise InvalidInput("empty d range")
    if ds[0] < 1:
        raise InvalidInput("curve degrees in the sweep must be positive")
    SurfaceSpec(args.n, tuple(args.degrees))
    results = compute_sweep(args.n, args.degrees, ds, args.modes)
    if args.format == "csv":
        text = fmt_csv([r for r, _, _ in results], CSV_HEADER)
    elif args.format == "table":
        text = fmt_table([r for r, _, _ in results], CSV_HEADER)
    else:
        inputs = {
            "n": args.n,
            "degrees": sorted(args.degrees),
            "d_range": [ds.start, ds[-1], ds.step],
            "modes": list(args.modes),
        }
        disc = [f"d={r[2]}: {x}" for r, _, ds_ in results for x in ds_]
        hyp = all(r[5] == "true" for r, _, _ in results)
        text = dump_json(envelope("sweep", inputs, [rep for _, rep, _ in results], hyp, disc, started))
    if args.output and args.output != "-":
        try:
            with open(args.output, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_OUTPUT
    else:
        out.write(text)
    return EXIT_CHECK if any(ds_ for _, _, ds_ in results) else EXIT_OK


def cmd_verify(args, out) -> int:
    grid = Grid(max_n=args.max_n, max_degree=args.max_degree, max_level=args.max_level)
    checks = run_suites([args.suite], grid)
    if args.format == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "suite": args.suite,
            "grid": {"max_n": grid.max_n, "max_degree": grid.max_degree, "max_level": grid.max_level},
            "checks": [
                {"name": c.name, "kind": c.kind, "passed": c.passed, "detail": c.detail,
                 "table": [list(map(str, row)) for row in c.table]}
                for c in checks
            ],
        }
        out.write(dump_json(obj))
    else:
        for c in checks:
            out.write(c.line() + "\n")
            for row in c.table:
                out.write("    " + "  ".join(str(x) for x in row) + "\n")
    failed = [c for c in checks if c.kind == ASSERT and not c.passed]
    return EXIT_CHECK if failed else EXIT_OK


def cmd_compare(args, out) -> int:
    started = time.perf_counter()
    n, tk, d = args.n, list(args.threefold_degrees), args.d
    if n < 4:
        raise InvalidInput("compare needs n >= 4 (a threefold with at least one equation)")
    if len(tk) != n - 3:
        raise InvalidInput(f"a threefold in P^{n} needs {n - 3} degrees, got {len(tk)}")
    if d <= 0:
        raise InvalidInput("curve degree must be positive")
    if any(k < 1 for k in tk):
        raise InvalidInput("threefold degrees must be positive")
    prod_tk = 1
    for k in tk:
        prod_tk *= k
    m = ceil_div(d, prod_tk) if args.m is None else args.m
    if m < 1:
        raise InvalidInput("m must be >= 1")
    inst = make_instance(n, tk + [m], d)
    # low degree is the interesting regime here, so the hypothesis only flags rows
    hyp = threshold_check(inst)
    rep = build_report(inst)
    small, applicable = bms_small_degree_bound(tk, n, d)
    cast = bms_castelnuovo_bound(tk, n, d)
    ci_m = inst.m0
    ci_degrees = list(inst.surface.degrees) + [ci_m]
    ci = ci_curve_genus(n, ci_degrees)
    rep.comparisons.update({"bms_castelnuovo": cast, "bms_small_degree": small, "ci_curve_genus": ci})
    rows = [
        ("closed_form", rat_str(rep.closed_form), ""),
        ("relaxed", rat_str(rep.relaxed) if rep.relaxed is not None else None, rep.errors.get(RELAXED, "")),
        ("tight", rat_str(rep.tight) if rep.tight is not None else None, rep.errors.get(TIGHT, "")),
        ("bms_castelnuovo", rat_str(cast), ""),
        ("bms_small_degree", rat_str(small), "applicable" if applicable else "not applicable (d > prod(k)/2)"),
        ("ci_curve_genus", ci, f"degrees {ci_degrees}, curve degree {inst.surface.K * ci_m}"),
    ]
    if args.format == "json":
        res = report_dict(rep)
        res["bms_small_degree_applicable"] = applicable
        res["surface_m"] = m
        res["ci_degrees"] = ci_degrees
        inputs = {"n": n, "threefold_degrees": tk, "d": d, "m": args.m}
        out.write(dump_json(envelope("compare", inputs, res, hyp, [x for _, _, x in rep.discrepancies], started)))
    else:
        head = f"surface degrees {list(inst.surface.degrees)} (m={m}), d={d}, hypothesis_ok={str(hyp).lower()}\n"
        if args.format == "csv":
            out.write(fmt_csv(rows, ["bound", "value", "note"]))
        else:
            out.write(head)
            if not hyp:
                out.write(hypothesis_message(inst) + "\n")
            out.write(fmt_table(rows, ["bound", "value", "note"]))
    return EXIT_CHECK if rep.discrepancies else EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cigenus", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def surface_args(sp):
        sp.add_argument("--n", type=int, required=True, help="ambient projective dimension")
        sp.add_argument("--degrees", type=int_list, required=True, help="surface degrees, comma separated")
        sp.add_argument("--d", type=int, required=True, help="curve degree")

    fmt = dict(choices=["table", "json", "csv"], default="table")

    b = sub.add_parser("bound", help="genus bounds for one instance")
    surface_args(b)
    b.add_argument("--mode", type=mode_list, default=list(ALL_MODES), help="all|closed-form|relaxed|tight")
    b.add_argument("--format", **fmt)
    b.add_argument("--force", action="store_true", help="compute even below the degree threshold")

    pr = sub.add_parser("profile", help="gamma profile for one m")
    surface_args(pr)
    pr.add_argument("--m", type=int, help="degree of the extra section (default m0)")
    pr.add_argument("--mode", choices=[RELAXED, TIGHT], default=TIGHT)
    pr.add_argument("--format", **fmt)

    sw = sub.add_parser("sweep", help="bounds over a range of curve degrees")
    sw.add_argument("--n", type=int, required=True)
    sw.add_argument("--degrees", type=int_list, required=True)
    sw.add_argument("--d-range", type=d_range, required=True, help="START:STOP[:STEP], inclusive")
    sw.add_argument("--modes", type=mode_list, default=list(ALL_MODES))
    sw.add_argument("--format", choices=["table", "json", "csv"], default="csv")
    sw.add_argument("--output", "-o", help="output path (default stdout)")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    v.add_argument("--max-n", type=int, default=6)
    v.add_argument("--max-degree", type=int, default=4)
    v.add_argument("--max-level", type=int, default=20)
    v.add_argument("--format", choices=["table", "json"], default="table")

    c = sub.add_parser("compare", help="compare with the threefold conjectures")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--threefold-degrees", type=int_list, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--m", type=int, help="degree of the extra surface equation (default ceil(d / prod))")
    c.add_argument("--format", **fmt)
    return p


COMMANDS = {
    "bound": cmd_bound,
    "profile": cmd_profile,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "compare": cmd_compare,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CigenusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
