"""Command-line front end.

One executable, ten subcommands, machine-readable output:

    moments, connected, genus, triple-sum, asympt, intersect,
    mc, density, airy-check, selftest

Exit codes: 0 success, 2 bad usage, 3 enumeration budget exceeded,
4 a numerical or consistency check failed.  Every document starts with
the fully resolved configuration (JSON `config` object, or `#` comment
lines in CSV).  Exact rationals are emitted as decimal strings under
`num`/`den` keys so no precision is lost in transit.  Progress chatter
goes to stderr only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import asymptotics, checks, closed_forms, edge_kernel, intersections, pairings, sampling
from .budget import pairing_budget
from .errors import BudgetError, CheckFailure, UsageError

PROG = "guevertex"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_CHECK = 4


def _rational(value) -> dict:
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(doc: dict, out_path: str | None) -> None:
    _emit(json.dumps(doc, indent=2) + "\n", out_path)


def _emit_csv(config: dict, header: list, rows: list, out_path: str | None) -> None:
    buf = io.StringIO()
    for key, value in config.items():
        buf.write(f"# {key} = {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit(buf.getvalue(), out_path)


def _parse_int_list(text: str, flag: str) -> list:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated integer list, got {text!r}")
    if not values:
        raise UsageError(f"{flag} must not be empty")
    return values


def _status(message: str) -> None:
    print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_moments(args) -> int:
    if args.N is not None and args.symbolic:
        raise UsageError("--N and --symbolic are mutually exclusive")
    result = closed_forms.exact_one_point_moment(args.k)
    config = {
        "command": "moments",
        "k": args.k,
        "mode": "numeric" if args.N is not None else "symbolic",
    }
    doc = {"config": config}
    if args.N is not None:
        config["N"] = args.N
        value = result.value.eval_at(Fraction(1, args.N))
        doc["moment"] = _rational(value)
        doc["float_approx"] = float(value)
    else:
        doc["moment"] = result.value.to_json()
    _emit_json(doc, args.out)
    return EXIT_OK


def _cmd_connected(args) -> int:
    degrees = _parse_int_list(args.degrees, "--degrees")
    moment = pairings.connected_moment(degrees)
    doc = {
        "config": {
            "command": "connected",
            "degrees": degrees,
            "budget": pairing_budget(),
        },
        "moment": moment.to_json(),
    }
    _emit_json(doc, args.out)
    return EXIT_OK


def _cmd_genus(args) -> int:
    degrees = _parse_int_list(args.degrees, "--degrees")
    census = pairings.genus_census(degrees)
    config = {
        "command": "genus",
        "degrees": " ".join(str(d) for d in degrees),
        "budget": pairing_budget(),
    }
    k_list = " ".join(str(d) for d in degrees)
    rows = [(k_list, g, count) for g, count in sorted(census.items())]
    _emit_csv(config, ["k_list", "genus", "count"], rows, args.out)
    return EXIT_OK


def _cmd_triple_sum(args) -> int:
    value = closed_forms.triple_sum_I(args.k1, args.k2, args.k3)
    if args.scaled:
        value = Fraction(closed_forms.triple_sum_scaled(args.k1, args.k2, args.k3))
    doc = {
        "config": {
            "command": "triple-sum",
            "k1": args.k1,
            "k2": args.k2,
            "k3": args.k3,
            "scaled": bool(args.scaled),
        },
        "value_num": str(value.numerator),
        "value_den": str(value.denominator),
        "float_approx": float(value),
    }
    _emit_json(doc, args.out)
    return EXIT_OK


def _asympt_row(k: int, n: int) -> tuple:
    exact = asymptotics.exact_one_point_float(k, n)
    approx = asymptotics.scaling_one_point(k, n)
    rel = abs(exact - approx) / abs(exact)
    return (k, n, f"{exact:.12e}", f"{approx:.12e}", f"{rel:.6e}")


def _cmd_asympt(args) -> int:
    header = ["k", "N", "exact", "asymptotic", "rel_err"]
    if args.mode == "one-point":
        config = {"command": "asympt one-point", "k": args.k, "N": args.N}
        rows = [_asympt_row(args.k, args.N)]
    else:
        n_list = _parse_int_list(args.N_list, "--N-list")
        config = {"command": "asympt compare", "ray": args.ray, "N_list": " ".join(map(str, n_list))}
        rows = []
        for cmp_row in asymptotics.compare_scaling_ray(args.ray, n_list):
            rows.append(
                (
                    cmp_row.k,
                    cmp_row.N,
                    f"{cmp_row.exact_value:.12e}",
                    f"{cmp_row.asymptotic_value:.12e}",
                    f"{cmp_row.relative_error:.6e}",
                )
            )
    _emit_csv(config, header, rows, args.out)
    return EXIT_OK


def _cmd_intersect(args) -> int:
    if args.mode == "one":
        if args.gmax < 1:
            raise UsageError(f"--gmax must be >= 1, got {args.gmax}")
        rows = []
        for g in range(1, args.gmax + 1):
            value = intersections.one_point_tau(g)
            rows.append(
                {
                    "tau": [3 * g - 2],
                    "genus": g,
                    "num": str(value.numerator),
                    "den": str(value.denominator),
                }
            )
        doc = {"config": {"command": "intersect one", "gmax": args.gmax}, "rows": rows}
        _emit_json(doc, args.out)
        return EXIT_OK
    if args.mode == "two":
        table = intersections.two_point_table(args.gmax)
        doc = {
            "config": {"command": "intersect two", "gmax": args.gmax},
            "rows": table.rows(),
        }
        _emit_json(doc, args.out)
        return EXIT_OK
    if args.mode == "kontsevich":
        _status(f"expanding the two-eigenvalue partition function to degree {args.maxdeg} ...")
        expansion = intersections.kontsevich_n2_logz(args.maxdeg, threads=args.threads)
        doc = {
            "config": {
                "command": "intersect kontsevich",
                "maxdeg": args.maxdeg,
                "threads": args.threads,
                "budget": pairing_budget(),
            },
            "rows": expansion.table.rows(),
        }
        _emit_json(doc, args.out)
        return EXIT_OK
    # mode == "check"
    _status(f"cross-checking all routes to degree {args.maxdeg} ...")
    cross = intersections.cross_route_check(args.maxdeg, threads=args.threads)
    determinant = intersections.determinant_route_check(args.maxdeg, threads=args.threads)
    rows = []
    for row in cross.rows:
        rows.append(
            {
                "tau": list(row.indices),
                "genus": row.genus,
                "num": str(row.matrix_model.numerator),
                "den": str(row.matrix_model.denominator),
                "agrees": row.equal,
            }
        )
    ok = cross.ok and determinant.ok
    doc = {
        "config": {
            "command": "intersect check",
            "maxdeg": args.maxdeg,
            "threads": args.threads,
            "budget": pairing_budget(),
        },
        "ok": ok,
        "determinant_route_ok": determinant.ok,
        "rows": rows,
    }
    _emit_json(doc, args.out)
    if not ok:
        raise CheckFailure("intersection number routes disagree; see output rows")
    return EXIT_OK


def _cmd_mc(args) -> int:
    k_list = args.k
    if not k_list:
        raise UsageError("at least one --k is required")
    source = (args.shift,) * args.N if args.shift else None
    cfg = sampling.SampleConfig(
        n=args.N,
        samples=args.samples,
        seed=args.seed,
        chunk=args.chunk,
        source=source,
    )
    _status(
        f"sampling {cfg.samples} matrices of size {cfg.n} "
        f"in {cfg.chunk_count()} chunks (seed {cfg.seed}) ..."
    )
    est = sampling.mc_vertex_estimate(k_list, cfg, connected=args.connected)
    doc = {
        "config": {
            "command": "mc",
            "k": list(k_list),
            "N": cfg.n,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "chunk": cfg.chunk,
            "connected": bool(args.connected),
            "shift": args.shift,
        },
        "mean": est.mean,
        "stderr": est.stderr,
        "samples": est.samples,
    }
    _emit_json(doc, args.out)
    return EXIT_OK


def _cmd_density(args) -> int:
    cfg = sampling.SampleConfig(n=args.N, samples=args.samples, seed=args.seed, chunk=args.chunk)
    _status(
        f"sampling spectra: {cfg.samples} matrices of size {cfg.n} (seed {cfg.seed}) ..."
    )
    result = sampling.density_histogram(cfg, bins=args.bins)
    config = {
        "command": "density",
        "N": cfg.n,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "chunk": cfg.chunk,
        "bins": args.bins,
        "total_mass": f"{result.total_mass:.6f}",
        "bulk_max_abs_dev": f"{result.bulk_max_abs_dev:.6e}",
        "outside_fraction": f"{result.outside_fraction:.6e}",
        "edge_cut": f"{result.edge_cut:.6f}",
    }
    header = ["bin_center", "density", "semicircle", "abs_dev"]
    rows = [
        (f"{c:.8f}", f"{d:.8e}", f"{s:.8e}", f"{a:.8e}")
        for c, d, s, a in result.csv_rows()
    ]
    _emit_csv(config, header, rows, args.csv)
    if args.csv is not None:
        summary = {
            "config": {k: v for k, v in config.items()},
            "csv": args.csv,
        }
        _emit_json(summary, None)
    return EXIT_OK


def _cmd_airy_check(args) -> int:
    value = edge_kernel.edge_ft_quadrature(args.s)
    target = edge_kernel.edge_ft_target(args.s)
    rel = abs(value - target) / target
    ok = rel <= args.tol
    doc = {
        "config": {"command": "airy-check", "s": args.s, "tol": args.tol},
        "quadrature": value,
        "closed_form": target,
        "rel_err": rel,
        "ok": ok,
    }
    _emit_json(doc, args.out)
    if not ok:
        raise CheckFailure(f"airy-check at s={args.s}: relative error {rel:.3e} > {args.tol:.1e}")
    return EXIT_OK


def _cmd_selftest(args) -> int:
    def report(outcome):
        flag = "PASS" if outcome.ok else "FAIL"
        print(
            f"{flag} {outcome.number:2d} {outcome.slug}: {outcome.detail} "
            f"[{outcome.seconds:.1f}s]"
        )

    print(f"# selftest skip_slow={bool(args.skip_slow)} threads={args.threads} budget={pairing_budget()}")
    outcomes = checks.run_all(skip_slow=args.skip_slow, threads=args.threads, progress=report)
    failed = [o for o in outcomes if not o.ok]
    print(f"# {len(outcomes) - len(failed)}/{len(outcomes)} criteria passed")
    if failed:
        raise CheckFailure(f"{len(failed)} criteria failed: {[o.number for o in failed]}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Exact matrix moments, scaling limits, and intersection numbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", default=None, help="write the document here instead of stdout")

    p = sub.add_parser("moments", help="exact one-vertex moment <(1/N) tr M^(2k)>")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, default=None, help="evaluate at this matrix size")
    p.add_argument("--symbolic", action="store_true", help="keep the full nu polynomial (default)")
    add_out(p)
    p.set_defaults(handler=_cmd_moments)

    p = sub.add_parser("connected", help="connected moment of tr M^(k_1) ... tr M^(k_n)")
    p.add_argument("--degrees", required=True, help="comma-separated k list, e.g. 2,2")
    add_out(p)
    p.set_defaults(handler=_cmd_connected)

    p = sub.add_parser("genus", help="per-genus connected pairing counts (CSV)")
    p.add_argument("--degrees", required=True, help="comma-separated k list, e.g. 3,3")
    add_out(p)
    p.set_defaults(handler=_cmd_genus)

    p = sub.add_parser("triple-sum", help="exact three-point coefficient sum")
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--k3", type=int, required=True)
    p.add_argument("--scaled", action="store_true", help="multiply by (2k_i)! factors")
    add_out(p)
    p.set_defaults(handler=_cmd_triple_sum)

    p = sub.add_parser("asympt", help="exact vs asymptotic one-point values (CSV)")
    asub = p.add_subparsers(dest="mode", required=True)
    p1 = asub.add_parser("one-point", help="single (k, N) comparison")
    p1.add_argument("--k", type=int, required=True)
    p1.add_argument("--N", type=int, required=True)
    add_out(p1)
    p1.set_defaults(handler=_cmd_asympt, mode="one-point")
    p2 = asub.add_parser("compare", help="sweep along the ray k = c N^(2/3)")
    p2.add_argument("--ray", type=float, required=True, help="ray constant c")
    p2.add_argument("--N-list", dest="N_list", required=True, help="comma-separated sizes")
    add_out(p2)
    p2.set_defaults(handler=_cmd_asympt, mode="compare")

    p = sub.add_parser("intersect", help="moduli-space intersection numbers")
    isub = p.add_subparsers(dest="mode", required=True)
    p1 = isub.add_parser("one", help="one-insertion values 1/(24^g g!)")
    p1.add_argument("--gmax", type=int, required=True)
    add_out(p1)
    p1.set_defaults(handler=_cmd_intersect, mode="one")
    p2 = isub.add_parser("two", help="all two-insertion values through a genus")
    p2.add_argument("--gmax", type=int, required=True)
    add_out(p2)
    p2.set_defaults(handler=_cmd_intersect, mode="two")
    p3 = isub.add_parser("kontsevich", help="table from the two-eigenvalue matrix model")
    p3.add_argument("--maxdeg", type=int, required=True, help="inverse-eigenvalue degree cutoff")
    p3.add_argument("--threads", type=int, default=None)
    add_out(p3)
    p3.set_defaults(handler=_cmd_intersect, mode="kontsevich")
    p4 = isub.add_parser("check", help="cross-route consistency check")
    p4.add_argument("--maxdeg", type=int, default=6)
    p4.add_argument("--threads", type=int, default=None)
    add_out(p4)
    p4.set_defaults(handler=_cmd_intersect, mode="check")

    p = sub.add_parser("mc", help="Monte Carlo moment estimate")
    p.add_argument("--k", type=int, action="append", help="trace power; repeat for products")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--chunk", type=int, default=100)
    p.add_argument("--connected", action="store_true", help="covariance of exactly two traces")
    p.add_argument("--shift", type=float, default=0.0, help="uniform diagonal source shift")
    add_out(p)
    p.set_defaults(handler=_cmd_mc)

    p = sub.add_parser("density", help="eigenvalue histogram vs the semicircle (CSV)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--bins", type=int, default=80)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--chunk", type=int, default=100)
    p.add_argument("--csv", default=None, help="write the CSV here; stdout gets a JSON summary")
    p.set_defaults(handler=_cmd_density)

    p = sub.add_parser("airy-check", help="edge quadrature vs closed form")
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-6)
    add_out(p)
    p.set_defaults(handler=_cmd_airy_check)

    p = sub.add_parser("selftest", help="run every acceptance criterion")
    p.add_argument("--skip-slow", action="store_true", help="skip the multi-minute criteria")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"{PROG}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"{PROG}: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CheckFailure as exc:
        print(f"{PROG}: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
