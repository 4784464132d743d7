"""Command-line front-end for the distillation engine.

Subcommands
    tables      weight distribution and pair-weight classes of a code
    map         the exact accept / x_out polynomials of a code
    sweep       CSV of p, p_out, delta, accept over a p-grid
    threshold   fixed-point table and threshold of a code or comparator map
    classify    region report for a Bloch vector "x,y,z"
    reduce      measurement script for a non-stabilizer state file
    thresholds  known threshold constants as JSON (for the plotting layer)
    verify      randomized engine-vs-oracle cross-checks

Exit codes: 0 success, 1 domain error (bad flags, bad files, guard
violations), 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import analysis, codes, distill, knownmaps
from .bloch import BlochVector, F_H_STAR, bloch_to_density, classify_region
from .oracle import dense_overlaps, load_state
from .ratpoly import RationalPolynomial, ratio_str
from .stabreduce import (
    MeasurementStep,
    is_stabilizer_state,
    random_nonstabilizer_state,
    random_stabilizer_state,
    reduce_state,
    verify_script,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2

DEFAULT_GRID = (0.0, 0.25, 251)

_COMPARATOR_MAPS = {
    "bk15": knownmaps.bk15_pout,
    "t5": knownmaps.t5_map,
}


# ===== 1. configuration ==============================================


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: one subcommand plus its knobs."""

    subcommand: str
    code: str | None = None
    map_name: str | None = None
    grid: tuple[float, float, int] = DEFAULT_GRID
    out: str | None = None
    seed: int = 0
    jobs: int = 1
    target: str | None = None  # classify "x,y,z" / reduce "@file"


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be min:max:count, got {text!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 2:
        raise ValueError(f"grid needs at least 2 points, got {count}")
    if not (0.0 <= lo < hi <= 0.5):
        raise ValueError(f"grid range must satisfy 0 <= min < max <= 0.5, got {text!r}")
    return lo, hi, count


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; we reserve 2 for
    verification failures, so turn usage errors into domain errors."""

    def error(self, message):
        raise ValueError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="magicdist",
        description="Exact magic-state distillation maps, thresholds and "
        "stabilizer reduction.",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("tables", help="weight distribution and pair-weight classes")
    p.add_argument("--code", default="golay")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("map", help="exact accept / x_out polynomials")
    p.add_argument("--code", default="steane")

    p = sub.add_parser("sweep", help="CSV of p,p_out,delta,accept over a grid")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--code")
    grp.add_argument("--map", dest="map_name", choices=sorted(_COMPARATOR_MAPS))
    p.add_argument("--grid", default="0:0.25:251")
    p.add_argument("--out")

    p = sub.add_parser("threshold", help="fixed points and threshold")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--code")
    grp.add_argument("--map", dest="map_name", choices=sorted(_COMPARATOR_MAPS))

    p = sub.add_parser("classify", help="region report for a Bloch vector")
    p.add_argument("target", metavar="x,y,z")

    p = sub.add_parser("reduce", help="measurement script for a state file")
    p.add_argument("target", metavar="@statefile")
    p.add_argument("--out")

    p = sub.add_parser("thresholds", help="known threshold constants as JSON")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="randomized engine-vs-oracle cross-checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    return ap


def parse_args(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    grid = _parse_grid(ns.grid) if getattr(ns, "grid", None) else DEFAULT_GRID
    return RunConfig(
        subcommand=ns.subcommand,
        code=getattr(ns, "code", None),
        map_name=getattr(ns, "map_name", None),
        grid=grid,
        out=getattr(ns, "out", None),
        seed=getattr(ns, "seed", 0),
        jobs=getattr(ns, "jobs", 1),
        target=getattr(ns, "target", None),
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


# ===== 2. report subcommands =========================================


def _cmd_tables(config: RunConfig) -> int:
    S = codes.resolve_code(config.code)
    wd = codes.weight_distribution(S)
    lines = [f"code {config.code}: n={S.n}, dim={S.dim}, |S|={len(S.words)}"]
    lines.append("weight distribution (|a| : count):")
    for w in sorted(wd.counts):
        lines.append(f"  {w:>3} : {wd.counts[w]}")
    table = codes.pair_weight_table(S, jobs=config.jobs)
    lines.append("pair-weight classes ((|a|, |b|, |a^b|) : count):")
    for key in sorted(table.counts):
        wa, wb, wc = key
        lines.append(f"  ({wa:>3}, {wb:>3}, {wc:>3}) : {table.counts[key]}")
    print("\n".join(lines))
    return EXIT_OK


def _cmd_map(config: RunConfig) -> int:
    S = codes.resolve_code(config.code)
    m = distill.distillation_map(S)
    one = RationalPolynomial.one()
    print(f"code {config.code}: n={S.n}, |S|={len(S.words)}")
    print(f"accept = {ratio_str(m.accept, one)}")
    print(f"x_out = {ratio_str(m.xout_num, m.accept)}")
    if not m.hline_symmetric:
        print(f"z_out = {ratio_str(m.zout_num, m.accept)}")
        print("note: map is not symmetric about the x = z line;")
        print("      sweeps for this code run along its own magic axis")
    return EXIT_OK


def _csv_text(rows: list[distill.SweepRow]) -> str:
    lines = ["p,p_out,delta,accept"]
    for r in rows:
        lines.append(
            f"{r.p:.12g},{r.p_out:.12g},{r.delta:.12g},{r.accept:.12g}"
        )
    return "\n".join(lines) + "\n"


def _cmd_sweep(config: RunConfig) -> int:
    lo, hi, count = config.grid
    p_grid = [float(p) for p in np.linspace(lo, hi, count)]
    if config.map_name is not None:
        f = _COMPARATOR_MAPS[config.map_name]
        rows = [
            distill.SweepRow(p, f(p), f(p) - p, float("nan")) for p in p_grid
        ]
    else:
        S = codes.resolve_code(config.code)
        rows = distill.sweep_code(S, p_grid)
    _emit(_csv_text(rows), config.out)
    return EXIT_OK


def _cmd_threshold(config: RunConfig) -> int:
    if config.map_name is not None:
        f = _COMPARATOR_MAPS[config.map_name]
        points = analysis.scan_map_fixed_points(f)
        print(f"fixed points of p_out(p) for map {config.map_name}:")
        print(f"{'p*':<18}{'f-prime(p*)':<18}class")
        for pt in points:
            print(f"{pt.p_star:<18.12g}{pt.derivative:<18.12g}{pt.stability.name}")
        thr = analysis.scan_map_threshold(f)
        print(f"threshold: p* = {thr:.12g}" if thr is not None else "threshold: none")
        return EXIT_OK
    S = codes.resolve_code(config.code)
    m = distill.distillation_map(S)
    points = analysis.fixed_points(m)
    print(f"fixed points of the axis map for code {config.code}:")
    print(f"{'x*':<18}{'p*':<18}{'f-prime(x*)':<18}class")
    for pt in points:
        print(
            f"{pt.x_star:<18.12g}{pt.p_star:<18.12g}"
            f"{pt.derivative:<18.12g}{pt.stability.name}"
        )
    report = analysis.threshold_report(m)
    if report is None:
        print("threshold: none (no unstable fixed point with p* > 0)")
    else:
        print(f"threshold: p* = {report.p_threshold:.12g} at x* = {report.x_threshold:.12g}")
        if report.attractor_x is not None:
            where = (
                "the magic axis point"
                if report.attractor_is_target
                else "short of the magic axis point"
            )
            print(f"attractor: x = {report.attractor_x:.12g} ({where})")
    return EXIT_OK


def _cmd_classify(config: RunConfig) -> int:
    v = BlochVector.parse(config.target)
    report = classify_region(v)
    print(report.label.name)
    print(f"bloch = ({v.x:.12g}, {v.y:.12g}, {v.z:.12g})  |r| = {v.norm():.12g}")
    print(f"F = {report.fidelity:.12g}  (F_H* = {F_H_STAR:.12g})")
    print(f"h_dot = {report.h_dot:.12g}  t_dot = {report.t_dot:.12g}")
    print(
        f"simulable={'yes' if report.simulable else 'no'} "
        f"h_new={'yes' if report.h_distillable_new else 'no'} "
        f"h_bk={'yes' if report.h_distillable_bk else 'no'} "
        f"t={'yes' if report.t_distillable else 'no'}"
    )
    return EXIT_OK


def _cmd_reduce(config: RunConfig) -> int:
    if not config.target.startswith("@"):
        raise ValueError(f"reduce expects @statefile, got {config.target!r}")
    state = load_state(config.target[1:])
    script, bloch = reduce_state(state)
    probability, replayed = verify_script(state, script)
    text = script.to_text()
    if config.out is not None:
        _emit(text, config.out)
    sys.stdout.write(text)
    print(f"replay probability = {probability:.12g}")
    print(f"final qubit = {script.final_qubit}")
    print(f"final bloch = ({replayed.x:.12g}, {replayed.y:.12g}, {replayed.z:.12g})")
    return EXIT_OK


def _cmd_thresholds(config: RunConfig) -> int:
    payload = knownmaps.known_thresholds()
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _emit(text, config.out)
    return EXIT_OK


# ===== 3. the randomized verification suite ==========================


def verify_oracle_equivalence(seed: int = 0, trials: int = 100) -> tuple[bool, str]:
    """Criterion: engine overlaps match the dense oracle on random densities."""
    rng = random.Random(seed)
    S = codes.steane_S()
    worst = 0.0
    for _ in range(trials):
        while True:
            x, y, z = (rng.uniform(-1, 1) for _ in range(3))
            if x * x + y * y + z * z <= 1.0:
                break
        rho = bloch_to_density(BlochVector(x, y, z))
        a = distill.overlap_general(S, rho)
        b = dense_overlaps(S, rho)
        worst = max(
            worst,
            abs(a.a00 - b.a00),
            abs(a.a11 - b.a11),
            abs(a.a01 - b.a01),
        )
    ok = worst < 1e-10
    return ok, f"{trials} random densities, max |engine - oracle| = {worst:.3e} (tol 1e-10)"


def verify_certificates(seed: int = 0, extra_supports: int = 20) -> tuple[bool, str]:
    """Criterion: identity sums vanish and instability verdicts are consistent."""
    rng = random.Random(seed)
    supports = [codes.steane_S(), codes.golay_S(), codes.rm15_S()]
    supports += [
        codes.random_code_support(rng.randint(3, 8), rng) for _ in range(extra_supports)
    ]
    bad = 0
    for S in supports:
        rep = analysis.instability_report(S)
        if rep.identity_sum != 0 or not rep.consistent:
            bad += 1
    steane_half = analysis.instability_report(codes.steane_S()).polynomial_derivative_at_half
    exact = steane_half == Fraction(7, 5)
    ok = bad == 0 and exact
    return ok, (
        f"{len(supports)} supports: identity sums all zero and verdicts consistent"
        f" ({bad} failures); steane f'(1/2) == 7/5: {exact}"
    )


def verify_reduction(seed: int = 0, per_n: int = 200) -> tuple[bool, str]:
    """Criterion: random non-stabilizer states reduce; stabilizer states detect."""
    rng = random.Random(seed)
    reduced = detected = failures = 0
    for n in range(2, 6):
        for _ in range(per_n):
            state = random_nonstabilizer_state(n, rng)
            try:
                script, _ = reduce_state(state)
                probability, bloch = verify_script(state, script)
            except (ValueError, AssertionError):
                failures += 1
                continue
            msteps = [s for s in script.steps if isinstance(s, MeasurementStep)]
            commuting = all(
                a.operator.commutes_with(b.operator)
                for i, a in enumerate(msteps)
                for b in msteps[:i]
            )
            if (
                script.measurement_count != n - 1
                or not commuting
                or probability <= 0
                or max(abs(bloch.x), abs(bloch.y), abs(bloch.z)) >= 1 - 1e-6
            ):
                failures += 1
            else:
                reduced += 1
        for _ in range(per_n):
            if is_stabilizer_state(random_stabilizer_state(n, rng)) is None:
                failures += 1
            else:
                detected += 1
    ok = failures == 0
    return ok, (
        f"{reduced} reductions and {detected} detections across n=2..5"
        f" ({failures} failures)"
    )


def verify_suite(seed: int = 0, jobs: int = 1) -> list[tuple[str, bool, str]]:
    del jobs  # the suite is fast enough single-threaded
    results = []
    for name, fn in (
        ("oracle-overlaps", verify_oracle_equivalence),
        ("certificates", verify_certificates),
        ("reduction", verify_reduction),
    ):
        start = time.perf_counter()
        ok, detail = fn(seed)
        results.append((name, ok, f"{detail} [{time.perf_counter() - start:.1f}s]"))
    return results


def _cmd_verify(config: RunConfig) -> int:
    results = verify_suite(config.seed, config.jobs)
    all_ok = True
    for name, ok, detail in results:
        print(f"{'ok  ' if ok else 'FAIL'} {name:<16} {detail}")
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_VERIFY


# ===== 4. dispatch ===================================================

_HANDLERS = {
    "tables": _cmd_tables,
    "map": _cmd_map,
    "sweep": _cmd_sweep,
    "threshold": _cmd_threshold,
    "classify": _cmd_classify,
    "reduce": _cmd_reduce,
    "thresholds": _cmd_thresholds,
    "verify": _cmd_verify,
}


def run(config: RunConfig) -> int:
    """Execute one parsed invocation; domain errors become exit code 1."""
    handler = _HANDLERS[config.subcommand]
    try:
        return handler(config)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_args(argv)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
