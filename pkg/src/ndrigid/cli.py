"""Command-line interface: ``ndrigid <command> --config FILE``."""
from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import analyze
from .config import ConfigError, RunConfig, load_config
from .diagram import Status, build_diagram, stability_verdict
from .dynamics import IntegratorConfig, integrate, perturbation_probe
from .errors import NegativeN, RigidBodyError, StepOverflow
from .lie_class import classify_all
from .reporting import dumps, emit_report, num, render_svg, rotation_input
from .spectrum import compare_spectra
from .sweep import run_sweep

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_UNSTABLE = 10
EXIT_INCONCLUSIVE = 20

VERDICT_EXIT = {Status.STABLE: EXIT_OK, Status.UNSTABLE: EXIT_UNSTABLE, Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}
DEFAULT_STABLE_BOUND = 10.0
DRIFT_TOL = 1e-6


class Context:
    def __init__(self, args: argparse.Namespace, cfg: RunConfig):
        self.args = args
        self.cfg = cfg
        out = cfg.section("output")
        self.out_dir = Path(args.out or out.get("dir", "."))
        self.svg = out.get("svg", True) if args.svg is None else args.svg
        self.name = out.get("name", Path(args.config).stem)
        self.seed = args.seed if args.seed is not None else cfg.seed
        self.jobs = args.jobs or os.cpu_count() or 1

    def path(self, suffix: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self.out_dir / f"{self.name}{suffix}"

    def say(self, text: str) -> None:
        if not self.args.quiet:
            print(text)

    def write_json(self, suffix: str, obj: dict) -> Path:
        p = self.path(suffix)
        p.write_text(dumps(obj), encoding="utf-8")
        return p


def _header(ctx: Context, command: str) -> dict:
    return {
        "schema_version": "1.0",
        "tool": {"name": "ndrigid", "version": __version__},
        "command": command,
        "seed": ctx.seed,
        "input": rotation_input(ctx.cfg.rotation()),
    }


# --------------------------------------------------------------------------
# commands


def cmd_analyze(ctx: Context) -> int:
    rot = ctx.cfg.rotation()
    a = analyze(rot, ctx.cfg.tolerances)
    ctx.path(".report.json").write_text(emit_report(a, ctx.seed, {"command": "analyze"}), encoding="utf-8")
    if ctx.svg:
        ctx.path(".svg").write_text(render_svg(a.diagram), encoding="utf-8")
    ctx.say(f"verdict: {a.verdict.status.value}")
    for z in a.verdict.witnesses:
        ctx.say(f"  witness {z.participants[0]}-{z.participants[1]} {z.kind.value} at x={z.abscissa}")
    for w in a.warnings:
        ctx.say(f"  warning: {w}")
    return VERDICT_EXIT[a.verdict.status]


def cmd_spectrum(ctx: Context) -> int:
    rot = ctx.cfg.rotation()
    rep = compare_spectra(rot, ctx.cfg.tolerances.class_tol)
    out = _header(ctx, "spectrum")
    out["spectrum"] = {
        "formula": [num(z) for z in rep.formula_eigs],
        "oracle": [num(z) for z in rep.oracle_eigs],
        "max_mismatch": num(rep.max_mismatch),
        "tolerance": num(rep.tolerance),
        "nondiagonalizable": rep.nondiagonalizable,
        "zero_modes": rep.zero_modes,
    }
    ctx.write_json(".spectrum.json", out)
    ctx.say(f"max mismatch {rep.max_mismatch:.3e} (tolerance {rep.tolerance:.3e})")
    for z in sorted(rep.formula_eigs, key=lambda z: (-z.real, z.imag)):
        ctx.say(f"  {z.real:+.12f} {z.imag:+.12f}i")
    return EXIT_OK if rep.agrees else EXIT_MISMATCH


def cmd_simulate(ctx: Context) -> int:
    rot = ctx.cfg.rotation()
    sec = ctx.cfg.section("integrator")
    init = sec.pop("initial_state", None)
    icfg = IntegratorConfig(
        dt=sec.get("dt", 1e-3),
        T=sec.get("T", 100.0),
        lam_samples=tuple(sec["lam_samples"]) if "lam_samples" in sec else None,
        powers=tuple(sec.get("powers", (2, 4))),
        record_every=sec.get("record_every", 1),
    )
    if init is None:
        M0 = np.array(rot.M)
    else:
        n = rot.n
        if len(init) != n * (n - 1) // 2:
            raise ConfigError(f"field integrator.initial_state: expected {n * (n - 1) // 2} entries, got {len(init)}")
        M0 = np.zeros((n, n))
        iu = np.triu_indices(n, 1)
        M0[iu] = init
        M0 = M0 - M0.T
    try:
        rec = integrate(M0, rot.body, icfg)
        overflow = None
    except StepOverflow as exc:
        rec, overflow = exc.record, str(exc)
    rec.to_csv(ctx.path(".trajectory.csv"))
    drift = rec.drift()
    out = _header(ctx, "simulate")
    out["integrator"] = {"dt": icfg.dt, "T": icfg.T, "lam_samples": list(rec.lam_samples), "powers": list(rec.powers)}
    out["drift"] = [
        {"lambda": num(lam), "k": k, "relative_drift": num(drift[a, b])}
        for a, lam in enumerate(rec.lam_samples)
        for b, k in enumerate(rec.powers)
    ]
    out["energy_drift"] = num(rec.energy_drift())
    out["overflow"] = overflow
    ctx.write_json(".simulate.json", out)
    worst = float(drift.max())
    ctx.say(f"max relative invariant drift {worst:.3e} over T={icfg.T:g} (dt={icfg.dt:g})")
    return EXIT_OK if worst < DRIFT_TOL and overflow is None else EXIT_MISMATCH


def _probe_one(args):
    rot_input, kwargs = args
    from .body import rotation

    rot = rotation(*rot_input)
    return perturbation_probe(rot, **kwargs)


def cmd_probe(ctx: Context) -> int:
    rot = ctx.cfg.rotation()
    sec = ctx.cfg.section("probe")
    eps_list = sec.pop("epsilons", None) or [sec.pop("epsilon", 1e-4)]
    sec.pop("epsilon", None)
    sec.pop("seed", None)
    status = stability_verdict(build_diagram(rot, ctx.cfg.tolerances.class_tol)).status
    if status is Status.STABLE:
        sec.setdefault("bound_constant", DEFAULT_STABLE_BOUND)
    rot_input = (ctx.cfg.eigenvalues, ctx.cfg.planes, ctx.cfg.tolerances.asymmetry_tol)
    tasks = [(rot_input, dict(sec, epsilon=eps, seed=ctx.seed)) for eps in eps_list]
    if ctx.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(ctx.jobs, len(tasks))) as pool:
            results = list(pool.map(_probe_one, tasks))
    else:
        results = [_probe_one(t) for t in tasks]
    out = _header(ctx, "probe")
    out["verdict"] = status.value
    out["probes"] = [
        {
            "epsilon": num(p.epsilon),
            "trials": p.trials,
            "seed": p.seed,
            "max_deviation": num(p.max_deviation),
            "deviation_ratio": num(p.ratio),
            "measured_growth_rate": num(p.measured_growth_rate),
            "predicted_rate": num(p.predicted_rate),
            "escaped": p.escaped,
            "verdict_consistent": p.verdict_consistent,
        }
        for p in results
    ]
    ctx.write_json(".probe.json", out)
    for p in results:
        ctx.say(
            f"eps={p.epsilon:g}: max deviation {p.max_deviation:.3e} ({p.ratio:.2f} eps), "
            f"rate {p.measured_growth_rate:.5f} vs predicted {p.predicted_rate:.5f}, consistent={p.verdict_consistent}"
        )
    if status is Status.INCONCLUSIVE:
        return EXIT_OK
    return EXIT_OK if all(p.verdict_consistent for p in results) else EXIT_MISMATCH


def cmd_classify(ctx: Context) -> int:
    rot = ctx.cfg.rotation()
    d = build_diagram(rot, ctx.cfg.tolerances.class_tol)
    try:
        classes = classify_all(d, ctx.cfg.tolerances.rank_tol)
    except NegativeN as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    out = _header(ctx, "classify")
    out["lie_classes"] = [
        {"lambda": num(c.lam), "case": c.case, "class": c.canonical(), "dim": c.total_dim,
         "kernel_dim": c.kernel_dim, "N": c.N, "warnings": c.warnings}
        for c in classes
    ]
    ctx.write_json(".classify.json", out)
    for c in classes:
        lam = c.lam if not isinstance(c.lam, complex) else f"{c.lam.real:.6g}{c.lam.imag:+.6g}i"
        ctx.say(f"lambda={lam}: {c.canonical()}  (dim {c.total_dim})")
    return EXIT_OK


def cmd_sweep(ctx: Context) -> int:
    sec = ctx.cfg.section("sweep")
    a = ctx.args
    parameter = a.parameter or sec.get("parameter")
    value_range = a.range or sec.get("range")
    steps = a.steps or sec.get("steps", 50)
    if parameter is None or value_range is None:
        raise ConfigError("sweep needs a parameter and a range (config field sweep or --parameter/--range)")
    res = run_sweep(ctx.cfg.eigenvalues, ctx.cfg.planes, parameter, value_range, steps,
                    sec.get("rel_width", 1e-6), ctx.cfg.tolerances.class_tol, ctx.jobs)
    with open(ctx.path(".sweep.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([parameter, "verdict"])
        for v, s in zip(res.values, res.statuses):
            w.writerow([repr(float(v)), s.value])
    out = _header(ctx, "sweep")
    out["sweep"] = {
        "parameter": parameter,
        "range": [num(x) for x in value_range],
        "steps": steps,
        "transitions": [
            {"lo": num(t.lo), "hi": num(t.hi), "from": t.status_lo.value, "to": t.status_hi.value}
            for t in res.transitions
        ],
    }
    ctx.write_json(".sweep.json", out)
    for t in res.transitions:
        ctx.say(f"{parameter} in [{t.lo:.9g}, {t.hi:.9g}]: {t.status_lo.value} -> {t.status_hi.value}")
    if not res.transitions:
        ctx.say("no verdict change over the range")
    return EXIT_OK


COMMANDS = {
    "analyze": (cmd_analyze, "stability verdict, spectra, certificates and Lie classes"),
    "spectrum": (cmd_spectrum, "closed-form versus directly linearized spectrum"),
    "simulate": (cmd_simulate, "integrate the Euler equations and report invariant drift"),
    "probe": (cmd_probe, "perturbation experiment against the verdict"),
    "classify": (cmd_classify, "kernel Lie algebras at every spectral point"),
    "sweep": (cmd_sweep, "verdict table over one angular velocity"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON run configuration")
    common.add_argument("--out", help="output directory (default: config output.dir or .)")
    common.add_argument("--svg", dest="svg", action="store_true", default=None, help="write the diagram SVG")
    common.add_argument("--no-svg", dest="svg", action="store_false")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")

    parser = argparse.ArgumentParser(prog="ndrigid", description=__doc__)
    parser.add_argument("--version", action="version", version=f"ndrigid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "sweep":
            p.add_argument("--parameter", help="omegaK, the angular velocity of plane K")
            p.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"))
            p.add_argument("--steps", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config)
        ctx = Context(args, cfg)
        return COMMANDS[args.command][0](ctx)
    except (ConfigError, RigidBodyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
