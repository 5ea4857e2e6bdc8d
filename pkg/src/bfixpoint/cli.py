"""Command-line front end: run orbits, verify hypotheses, compare theorems.

Exit codes: 0 converged / checks passed, 1 hypothesis or ratio violation,
2 iteration budget exhausted, 3 invalid input. Built-in scenario names
("paper-example", "random-finite") resolve before filesystem paths.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .bspace import AxiomReport, verify_axioms
from .jsonutil import dumps_canonical, format_float
from .orbit import OrbitTrace, cauchy_bound, cauchy_series, chaining_bound, run_orbit
from .quasicontraction import ContractionCertificate, certify, check_hypotheses
from .scenarios import (
    BUILTIN_NAMES,
    Scenario,
    builtin,
    certification_pairs,
    instantiate,
    load,
    sample_points,
    scenario_digest,
)

_MAX_PRINTED_VIOLATIONS = 50


def _resolve(scenario_arg: str, seed: int | None) -> Scenario:
    if scenario_arg in BUILTIN_NAMES:
        return builtin(scenario_arg, seed)
    return load(scenario_arg)


def _point_obj(pt):
    if pt is None:
        return None
    return list(pt) if isinstance(pt, tuple) else pt


def _point_cell(pt) -> str:
    if isinstance(pt, tuple):
        return ";".join(format_float(c) for c in pt)
    return str(pt)


def _cert_obj(cert: ContractionCertificate, sc: Scenario, hyp: dict) -> dict:
    return {
        "scenario_digest": scenario_digest(sc),
        "alpha_min": cert.alpha_min,
        "alpha41_min": cert.alpha41_min,
        "worst_pair": [_point_obj(cert.worst_pair[0]), _point_obj(cert.worst_pair[1])],
        "coverage": cert.coverage,
        "n_pairs": cert.n_pairs,
        "s": cert.s,
        "c": cert.c,
        "q": cert.q,
        "q_conventional_name": "d",
        "alpha_supplied": sc.params.alpha,
        "supplied_alpha_is_valid_certificate": sc.params.alpha >= cert.alpha_min * (1.0 - 1e-12),
        "verdicts": cert.verdicts,
        "assumptions": cert.assumptions,
        "hypotheses": hyp,
    }


def _axiom_obj(report: AxiomReport) -> dict:
    shown = report.violations[:_MAX_PRINTED_VIOLATIONS]
    return {
        "passed": report.passed,
        "violations_total": len(report.violations),
        "violations": [
            {
                "axiom": v.axiom,
                "witness": [_point_obj(w) for w in v.witness],
                "lhs": v.lhs,
                "rhs": v.rhs,
            }
            for v in shown
        ],
    }


def _axiom_tol(space, pts) -> float:
    worst = 0.0
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            worst = max(worst, space.dist(x, y))
    return 1e-12 * worst


def bound_audit(space, trace: OrbitTrace) -> dict:
    """Worst actual/bound ratios over the whole trace.

    Cauchy: d(x_{m+1}, x_{m+k}) against the tail bound at m for every m, k.
    Chaining: d(x_0, x_k) against the dyadic bound for every prefix k.
    """
    pts = trace.points
    steps = trace.steps
    audit = {
        "cauchy_ratio_max": 0.0,
        "chaining_ratio_max": 0.0,
        "cauchy_checks": 0,
        "chaining_checks": 0,
        "violations": 0,
        "ok": True,
    }
    if not steps:
        return audit

    cert = cauchy_series(trace.gamma, space.s, first_step=steps[0])
    bound = cert.first_step * cert.series_sum / (1.0 - cert.gamma)
    for m in range(len(pts) - 1):
        for k in range(1, len(pts) - m):
            actual = space.dist(pts[m + 1], pts[m + k])
            audit["cauchy_checks"] += 1
            if actual == 0.0:
                continue
            if bound == 0.0:
                audit["violations"] += 1
                continue
            audit["cauchy_ratio_max"] = max(audit["cauchy_ratio_max"], actual / bound)
        bound *= cert.gamma

    for k in range(1, len(pts)):
        actual = space.dist(pts[0], pts[k])
        cb = chaining_bound(steps[:k], space.s)
        audit["chaining_checks"] += 1
        if actual == 0.0:
            continue
        if cb == 0.0:
            audit["violations"] += 1
            continue
        audit["chaining_ratio_max"] = max(audit["chaining_ratio_max"], actual / cb)

    slack = 1.0 + 1e-9
    audit["ok"] = (
        audit["violations"] == 0
        and audit["cauchy_ratio_max"] <= slack
        and audit["chaining_ratio_max"] <= slack
    )
    return audit


def _write_trace_csv(path: Path, space, trace: OrbitTrace) -> None:
    cert = None
    if trace.steps:
        cert = cauchy_series(trace.gamma, space.s, first_step=trace.steps[0])
    rows = ["n,point,d_n,ratio,gamma,cauchy_bound_at_n"]
    for n, pt in enumerate(trace.points):
        d_n = format_float(trace.steps[n]) if n < len(trace.steps) else ""
        ratio = ""
        if 0 < n < len(trace.steps) and trace.steps[n - 1] != 0.0:
            ratio = format_float(trace.steps[n] / trace.steps[n - 1])
        bound = format_float(cauchy_bound(n, cert)) if cert is not None else ""
        rows.append(f"{n},{_point_cell(pt)},{d_n},{ratio},{format_float(trace.gamma)},{bound}")
    path.write_text("\n".join(rows) + "\n")


def _write_trace_json(path: Path, space, trace: OrbitTrace) -> None:
    cert = None
    if trace.steps:
        cert = cauchy_series(trace.gamma, space.s, first_step=trace.steps[0])
    rows = []
    for n, pt in enumerate(trace.points):
        rows.append(
            {
                "n": n,
                "point": _point_obj(pt),
                "d_n": trace.steps[n] if n < len(trace.steps) else None,
                "ratio": (
                    trace.steps[n] / trace.steps[n - 1]
                    if 0 < n < len(trace.steps) and trace.steps[n - 1] != 0.0
                    else None
                ),
                "gamma": trace.gamma,
                "cauchy_bound_at_n": cauchy_bound(n, cert) if cert is not None else None,
            }
        )
    path.write_text(dumps_canonical({"rows": rows}) + "\n")


def cmd_run(
    scenario_arg: str,
    out_dir: str,
    tol: float | None = None,
    beta: float | None = None,
    max_iter: int | None = None,
    fmt: str = "csv",
    seed: int | None = None,
) -> int:
    t0 = time.perf_counter()
    try:
        sc = _resolve(scenario_arg, seed)
        space, tmap = instantiate(sc)
        pairs = certification_pairs(sc, space)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    p = sc.params
    run_tol = tol if tol is not None else sc.tol
    run_beta = beta if beta is not None else p.beta
    run_max_iter = max_iter if max_iter is not None else sc.max_iter

    cert = certify(space, tmap, pairs, p.c, p.q)
    hyp = check_hypotheses(cert, space.s, p.c, p.q, p.alpha)

    trace = None
    if not p.alpha >= cert.alpha_min * (1.0 - 1e-12):
        orbit_obj = {
            "status": "hypothesis_violation",
            "reason": f"supplied alpha {p.alpha} below certified alpha_min {cert.alpha_min}",
        }
        exit_code = 1
    else:
        try:
            trace = run_orbit(
                space, tmap, p.c, p.q, p.alpha, sc.x0,
                x1=sc.x1, beta=run_beta, tol=run_tol, max_iter=run_max_iter,
            )
            orbit_obj = {
                "status": trace.status,
                "iterations": len(trace.steps),
                "beta": trace.beta,
                "gamma": trace.gamma,
                "fixed_point": _point_obj(trace.fixed_point),
                "residual": trace.residual,
                "violation_step": trace.violation_step,
                "x0": _point_obj(sc.x0),
                "tol": run_tol,
            }
            exit_code = {"converged": 0, "max_iter": 2, "ratio_violation": 1}[trace.status]
        except ValueError as exc:
            orbit_obj = {"status": "hypothesis_violation", "reason": str(exc)}
            exit_code = 1

    cert_obj = _cert_obj(cert, sc, hyp)
    if trace is not None:
        # the single-step-decay comparison needs the run's gamma
        cert_obj["verdicts"] = dict(cert.verdicts, lemma41=space.s * trace.gamma < 1.0)

    audit = bound_audit(space, trace) if trace is not None else {"ok": False, "violations": 0}
    report = {
        "certificate": cert_obj,
        "orbit": orbit_obj,
        "audit": audit,
        "timing_ms": (time.perf_counter() - t0) * 1000.0,
    }
    (out / "report.json").write_text(dumps_canonical(report) + "\n")
    if trace is not None:
        if fmt == "json":
            _write_trace_json(out / "trace.json", space, trace)
        else:
            _write_trace_csv(out / "trace.csv", space, trace)
    else:
        (out / "trace.csv").write_text("n,point,d_n,ratio,gamma,cauchy_bound_at_n\n")

    print(f"{orbit_obj.get('status')}: report written to {out / 'report.json'}")
    return exit_code


def cmd_verify(scenario_arg: str, seed: int | None = None) -> int:
    try:
        sc = _resolve(scenario_arg, seed)
        space, tmap = instantiate(sc)
        pts = sample_points(sc, space)
        pairs = certification_pairs(sc, space)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    axioms = verify_axioms(space, pts, tol=_axiom_tol(space, pts))
    cert = certify(space, tmap, pairs, sc.params.c, sc.params.q)
    hyp = check_hypotheses(cert, space.s, sc.params.c, sc.params.q, sc.params.alpha)
    print(dumps_canonical({"axioms": _axiom_obj(axioms), "certificate": _cert_obj(cert, sc, hyp)}))
    return 0 if axioms.passed and hyp["thm33"]["applicable"] else 1


def cmd_compare(scenario_arg: str, seed: int | None = None) -> int:
    try:
        sc = _resolve(scenario_arg, seed)
        space, tmap = instantiate(sc)
        pairs = certification_pairs(sc, space)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    cert = certify(space, tmap, pairs, sc.params.c, sc.params.q)
    hyp = check_hypotheses(cert, space.s, sc.params.c, sc.params.q, sc.params.alpha)
    rows = []
    for name in ("thm33", "thm41"):
        v = hyp[name]
        rel = "<" if name == "thm33" else "<="
        ok = v["applicable"]
        rel_shown = rel if v["value"] <= v["threshold"] else ">"
        rows.append(
            (
                name,
                "YES" if ok else "NO",
                v["condition"],
                f"{format_float(v['value'])} {rel_shown} {format_float(v['threshold'])}",
            )
        )
    headers = ("theorem", "applicable", "condition", "values")
    widths = [max(len(headers[i]), max(len(r[i]) for r in rows)) for i in range(3)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)) + "  " + headers[3])
    for r in rows:
        print("  ".join(v.ljust(w) for v, w in zip(r, widths)) + "  " + r[3])
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bfixpoint",
        description="Fixed-point engine for set-valued contractions in b-metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_run_flags: bool):
        sp.add_argument(
            "--scenario",
            required=True,
            help=f"scenario JSON path or builtin name ({', '.join(BUILTIN_NAMES)})",
        )
        sp.add_argument("--seed", type=int, default=None, help="seed for generated builtins")
        if with_run_flags:
            sp.add_argument("--out", required=True, help="output directory for trace and report")
            sp.add_argument("--tol", type=float, default=None, help="override scenario tolerance")
            sp.add_argument("--beta", type=float, default=None, help="override selection margin beta")
            sp.add_argument("--max-iter", type=int, default=None, help="override iteration budget")
            sp.add_argument("--format", choices=("csv", "json"), default="csv", help="trace format")

    add_common(sub.add_parser("run", help="run an orbit, write trace and report"), True)
    add_common(sub.add_parser("verify", help="check axioms and contraction certificate"), False)
    add_common(sub.add_parser("compare", help="compare the two applicability conditions"), False)

    args = parser.parse_args(argv)
    if args.command == "run":
        return cmd_run(
            args.scenario, args.out,
            tol=args.tol, beta=args.beta, max_iter=args.max_iter,
            fmt=args.format, seed=args.seed,
        )
    if args.command == "verify":
        return cmd_verify(args.scenario, seed=args.seed)
    return cmd_compare(args.scenario, seed=args.seed)


if __name__ == "__main__":
    sys.exit(main())
