"""Command-line front end.

Subcommands
-----------
check-metric NAME     axiom harness for a fuzzy metric
check-tnorm NAME      axiom harness for a t-norm
reproduce CASE        scripted scenario with an encoded expected verdict
shadow                tracing-witness search over an orbit file
chain                 chain search (and length spectrum) between two states
mix                   image-intersection probe between two balls
density               prefix-density report for a construction or orbit file
sweep                 tabulate orbit validity and witness verdicts over
                      (eps, delta, t0) combinations

Exit codes: 0 for found/pass, 1 for a negative verdict, 2 for usage errors.
Reports are deterministic JSON (no timestamps); stdout carries one summary
line per run.  Map graphs are emitted as self-contained SVG.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fuzzy_metric as fm
from . import orbits, shadowing, systems, tnorm
from .reports import json_text

REPRODUCE_CASES = (
    "example-4.1",
    "remark-4.2",
    "example-4.3a",
    "example-4.3b",
    "example-4.3c",
    "example-4.3d",
    "example-4.4",
    "theorem-3.3-density",
)


@dataclass
class RunConfig:
    """Bag of run parameters shared by the wrapper commands."""

    map_spec: str | None = None
    metric: str | None = None
    tnorm: str = "product"
    eps: float | None = None
    delta: float | None = None
    t0: float = 1.0
    grid: float | None = None
    seed: int = 0
    n_max: int = 64
    out: str = "out"
    lo: float = 0.0
    hi: float = 1.0
    lo_open: bool = False


# -- small helpers ---------------------------------------------------------------


def _build_metric(cfg: RunConfig) -> fm.FuzzyMetric:
    t = tnorm.TNorm(cfg.tnorm)
    return fm.metric_from_name(cfg.metric, t, cfg.lo, cfg.hi, cfg.lo_open)


def _default_grid(cfg: RunConfig) -> float:
    return cfg.grid if cfg.grid is not None else shadowing.DEFAULT_FUZZY_GRID


def _write(outdir: str, name: str, text: str) -> Path:
    path = Path(outdir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / name
    target.write_text(text)
    return target


def _write_report(outdir: str, name: str, payload: dict) -> Path:
    return _write(outdir, name, json_text(payload))


def _density_csv(report: orbits.DensityReport) -> str:
    lines = ["n,density"]
    lines += [f"{n},{repr(d)}" for n, d in report.points]
    return "\n".join(lines) + "\n"


# -- SVG rendering -----------------------------------------------------------------


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c")


def render_map_svg(entries, size: int = 520, margin: int = 45,
                   samples_per_piece: int = 1000) -> str:
    """Self-contained SVG graph of one or more interval maps over their domain.

    Each map is drawn as one polyline per affine piece (kinks stay exact) on a
    framed unit box with the diagonal dashed for reference.
    """
    lo = min(e[1].domain_lo for e in entries)
    hi = max(e[1].domain_hi for e in entries)
    span = hi - lo
    inner = size - 2 * margin

    def px(x: float) -> float:
        return margin + (x - lo) / span * inner

    def py(y: float) -> float:
        return size - margin - (y - lo) / span * inner

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{inner}" height="{inner}" '
        'fill="none" stroke="#444444" stroke-width="1"/>',
        f'<line x1="{px(lo):.2f}" y1="{py(lo):.2f}" x2="{px(hi):.2f}" y2="{py(hi):.2f}" '
        'stroke="#999999" stroke-width="1" stroke-dasharray="5,4"/>',
    ]
    for k, (label, m) in enumerate(entries):
        color = _SVG_COLORS[k % len(_SVG_COLORS)]
        for piece in m.pieces:
            xs = np.linspace(float(piece.lo), float(piece.hi), samples_per_piece)
            ys = m.eval_array(np.clip(xs, m.domain_lo + 1e-12 if m.lo_open else m.domain_lo,
                                      m.domain_hi))
            pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
            parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                         'stroke-width="1.6"/>')
        parts.append(f'<text x="{margin + 8}" y="{margin + 16 + 15 * k}" '
                     f'font-family="monospace" font-size="12" fill="{color}">{label}</text>')
    for value in (lo, hi):
        parts.append(f'<text x="{px(value):.2f}" y="{size - margin + 16}" '
                     f'font-family="monospace" font-size="11" fill="#444444" '
                     f'text-anchor="middle">{value:g}</text>')
        parts.append(f'<text x="{margin - 8}" y="{py(value) + 4:.2f}" '
                     f'font-family="monospace" font-size="11" fill="#444444" '
                     f'text-anchor="end">{value:g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- reproduce cases -----------------------------------------------------------------

# Shared scenario constants.  Derivations live next to their uses; every PASS
# below is recomputed from the library primitives on each run.
_EPS_FIFTH = 0.2
_CROSSING_DELTA = 0.01


def _case_example_4_1(seed: int) -> tuple[bool, dict, dict]:
    f = systems.tent(2.0)
    metric = fm.StandardFuzzyMetric()
    horizon = fm.uniform_horizon(metric, 0.1, resolution=1e-2)
    orbit = orbits.perturbed_orbit(f, x0=0.3, n=1000, noise=0.05, seed=seed)
    valid = orbits.validate_f_pseudo_orbit(orbit, f, metric, 0.01, horizon).is_empty
    verdict = shadowing.shadow_search(orbit, f, metric, eps=0.1, t0=horizon)
    chain = orbits.chain_mixing_check(0.2, 0.8, f, metric, delta=0.1, t0=1.0,
                                      resolution=1e-3, n_max=64)
    # exact float trajectories of the slope-2 tent map degenerate after ~53
    # doublings (finite binary mantissas), so the image probe stops at 48
    probe = shadowing.topological_mixing_probe(
        f, fm.Ball(0.2, 0.1, 1.0), fm.Ball(0.8, 0.1, 1.0), metric,
        n_max=48, resolution=1e-3)
    passed = (horizon is not None and valid and verdict.found
              and chain.n0 is not None and probe.n0 is not None)
    result = {
        "uniform_horizon": horizon,
        "pseudo_orbit_valid": valid,
        "shadow": verdict.to_dict(),
        "chain_mixing": chain.to_dict(),
        "topological_mixing": probe.to_dict(),
        "expected": "witness found and both mixing probes cofinite",
    }
    return passed, result, {"svg": [("tent:2", f)]}


def _case_remark_4_2(seed: int) -> tuple[bool, dict, dict]:
    metric = fm.StandardFuzzyMetric()
    betas = {"sqrt2": 2.0**0.5, "1.6": 1.6, "2": 2.0}
    per_beta = {}
    passed = True
    entries = []
    for label, beta in betas.items():
        f = systems.tent(beta)
        horizon = fm.uniform_horizon(metric, 0.1, resolution=1e-2)
        orbit = orbits.perturbed_orbit(f, x0=0.3, n=1000, noise=0.05, seed=seed)
        verdict = shadowing.shadow_search(orbit, f, metric, eps=0.1, t0=horizon)
        ok = horizon is not None and abs(horizon - 9.0) <= 9.0 and verdict.found
        passed = passed and ok
        per_beta[label] = {
            "uniform_horizon": horizon,
            "witness": verdict.witness,
            "ok": ok,
        }
        entries.append((f"tent:{label}", f))
    result = {"per_beta": per_beta,
              "expected": "uniform horizon near 9 and a witness for every slope"}
    return passed, result, {"svg": entries}


def _case_example_4_3a(seed: int) -> tuple[bool, dict, dict]:
    f = systems.example43_map()
    seq = shadowing.build_nonshadowable_orbit(_CROSSING_DELTA)
    valid = orbits.classical_validate(seq, f, _CROSSING_DELTA).is_empty
    verdict = shadowing.classical_shadow_search(seq, f, eps=0.125, resolution=1e-5)
    passed = valid and not verdict.found
    result = {
        "orbit_length": len(seq),
        "classically_valid": valid,
        "shadow": verdict.to_dict(),
        "expected": "valid crossing pseudo-orbit with no classical witness at eps=1/8",
    }
    return passed, result, {"svg": [("example43", f)]}


def _case_example_4_3b(seed: int) -> tuple[bool, dict, dict]:
    f = systems.example43_map()
    metric = fm.StandardFuzzyMetric(lo=0.0, hi=1.0, lo_open=True)
    horizon = fm.uniform_horizon(metric, _EPS_FIFTH, resolution=1e-2)
    seq = shadowing.build_nonshadowable_orbit(_CROSSING_DELTA)
    verdict = shadowing.shadow_search(seq, f, metric, eps=_EPS_FIFTH, t0=horizon)
    passed = horizon is not None and verdict.found
    result = {
        "uniform_horizon": horizon,
        "shadow": verdict.to_dict(),
        "expected": "the same crossing orbit is traced once the horizon flattens "
                    "the whole space",
    }
    return passed, result, {}


def _case_example_4_3c(seed: int) -> tuple[bool, dict, dict]:
    f = systems.example43_map()
    metric = fm.RatioPhiFuzzyMetric()
    modulus = fm.check_ratio_modulus(f, factor=0.1, resolution=1e-3)
    cert = fm.certify_fuzzy_continuity(metric, f, eps=_EPS_FIFTH, t=1.0, resolution=1e-2)
    seq = shadowing.build_nonshadowable_orbit(_CROSSING_DELTA)
    valid = orbits.validate_f_pseudo_orbit(seq, f, metric, _CROSSING_DELTA, 1.0).is_empty
    searches = {}
    none_everywhere = True
    for t0 in (1.0, 2.0, 10.0):
        verdict = shadowing.shadow_search(seq, f, metric, eps=_EPS_FIFTH, t0=t0,
                                          resolution=1e-4)
        searches[f"t0={t0:g}"] = verdict.to_dict()
        none_everywhere = none_everywhere and not verdict.found
    passed = modulus.passed and cert.holds and valid and none_everywhere
    result = {
        "ratio_modulus": modulus.to_dict(),
        "continuity": cert.to_dict(),
        "pseudo_orbit_valid": valid,
        "shadow": searches,
        "expected": "continuity modulus holds but no witness traces the crossing orbit",
    }
    return passed, result, {"svg": [("example43", f)]}


def _case_example_4_3d(seed: int) -> tuple[bool, dict, dict]:
    f = systems.example43_map()
    metric = fm.RatioFuzzyMetric()
    cert = fm.certify_fuzzy_continuity(metric, f, eps=_EPS_FIFTH, t=1.0, resolution=1e-2)
    seq = shadowing.build_nonshadowable_orbit(_CROSSING_DELTA)
    valid = orbits.validate_f_pseudo_orbit(seq, f, metric, _CROSSING_DELTA, 1.0).is_empty
    verdict = shadowing.shadow_search(seq, f, metric, eps=_EPS_FIFTH, t0=1.0,
                                      resolution=1e-4)
    passed = cert.holds and valid and not verdict.found
    result = {
        "continuity": cert.to_dict(),
        "pseudo_orbit_valid": valid,
        "shadow": verdict.to_dict(),
        "expected": "no witness under the bare ratio metric either",
    }
    return passed, result, {}


def _case_example_4_4(seed: int) -> tuple[bool, dict, dict]:
    alpha = 1.0 / 256.0
    f = systems.example43_map()
    g = systems.perturbation_g(alpha)
    metric = fm.RatioFuzzyMetric()
    xs = g.grid(1e-5)
    sup_gap = float(np.max(np.abs(f.eval_array(xs) - g.eval_array(xs))))
    fixed = g.eval(0.5) == 0.5 and g.eval(1.0) == 1.0
    domination = fm.check_metric_domination(metric, g, f, factor=0.5, t=1.0,
                                            resolution=1e-3)
    seq = shadowing.build_nonshadowable_orbit(_CROSSING_DELTA, g)
    valid = orbits.validate_f_pseudo_orbit(seq, g, metric, _CROSSING_DELTA, 1.0).is_empty
    verdict = shadowing.shadow_search(seq, g, metric, eps=_EPS_FIFTH, t0=1.0,
                                      resolution=1e-4)
    passed = (fixed and sup_gap < alpha and domination.passed and valid
              and not verdict.found)
    result = {
        "alpha": alpha,
        "fixed_points_kept": fixed,
        "sup_gap": sup_gap,
        "domination": domination.to_dict(),
        "pseudo_orbit_valid": valid,
        "shadow": verdict.to_dict(),
        "expected": "perturbation stays within alpha, dominates at factor 1/2, "
                    "and still has no witness",
    }
    return passed, result, {"svg": [("example43", f), (f"g:{alpha:g}", g)]}


def _case_theorem_3_3_density(seed: int) -> tuple[bool, dict, dict]:
    n_total = 10**6
    skeleton = orbits.transitivity_skeleton(n_total)
    iset = orbits.IndexSet(skeleton, universe=n_total)
    report = orbits.density(iset)
    density_100 = iset.count_below(100) / 100
    density_final = report.final_density

    f = systems.tent(2.0)
    metric = fm.StandardFuzzyMetric()
    orbit = orbits.build_transitivity_orbit(0.3, 0.7, f, length=10**5)
    npo = orbits.npo_set(orbit, f, metric, delta=0.01, t0=1.0)
    subset = npo.issubset(orbits.transitivity_skeleton(len(orbit)))
    npo_report = orbits.density(npo)

    passed = (density_100 == 0.19 and density_final <= 0.003 and subset
              and report.plausibly_zero and npo_report.plausibly_zero)
    result = {
        "skeleton_density_100": density_100,
        "skeleton_density_final": density_final,
        "skeleton_report": report.to_dict(),
        "interleaved_npo_subset_of_skeleton": subset,
        "interleaved_report": npo_report.to_dict(),
        "expected": "skeleton density 0.19 at 100, below 0.003 at 1e6, and all "
                    "interleaving violations confined to the skeleton",
    }
    return passed, result, {"csv": report}


_CASE_HANDLERS = {
    "example-4.1": _case_example_4_1,
    "remark-4.2": _case_remark_4_2,
    "example-4.3a": _case_example_4_3a,
    "example-4.3b": _case_example_4_3b,
    "example-4.3c": _case_example_4_3c,
    "example-4.3d": _case_example_4_3d,
    "example-4.4": _case_example_4_4,
    "theorem-3.3-density": _case_theorem_3_3_density,
}


# -- command handlers ------------------------------------------------------------------


def _cmd_check_metric(args) -> int:
    t = tnorm.TNorm(args.tnorm)
    metric = fm.metric_from_name(args.name, t)
    report = fm.check_axioms(metric, samples=args.samples, seed=args.seed)
    payload = {"command": "check-metric", "report": report.to_dict()}
    path = _write_report(args.out, f"check-metric-{args.name}.json", payload)
    status = "PASS" if report.all_passed else f"FAIL {report.failing()}"
    print(f"check-metric {args.name}: {status} ({path})")
    return 0 if report.all_passed else 1


def _cmd_check_tnorm(args) -> int:
    report = tnorm.check_axioms(tnorm.TNorm(args.name), samples=args.samples,
                                seed=args.seed)
    payload = {"command": "check-tnorm", "report": report.to_dict()}
    path = _write_report(args.out, f"check-tnorm-{args.name}.json", payload)
    status = "PASS" if report.all_passed else f"FAIL {report.failing()}"
    print(f"check-tnorm {args.name}: {status} ({path})")
    return 0 if report.all_passed else 1


def _cmd_reproduce(args) -> int:
    handler = _CASE_HANDLERS[args.case]
    passed, result, artifacts = handler(args.seed)
    payload = {
        "command": "reproduce",
        "case": args.case,
        "seed": args.seed,
        "passed": passed,
        "result": result,
    }
    paths = [_write_report(args.out, f"{args.case}.json", payload)]
    if "svg" in artifacts:
        paths.append(_write(args.out, f"{args.case}.svg",
                            render_map_svg(artifacts["svg"])))
    if "csv" in artifacts:
        paths.append(_write(args.out, f"{args.case}-density.csv",
                            _density_csv(artifacts["csv"])))
    print(f"reproduce {args.case}: {'PASS' if passed else 'FAIL'} "
          f"({', '.join(str(p) for p in paths)})")
    return 0 if passed else 1


def _load_orbit(path: str) -> orbits.OrbitSequence:
    return orbits.OrbitSequence.from_csv(path)


def _cmd_shadow(args) -> int:
    cfg = _config_from(args)
    f = systems.map_from_spec(cfg.map_spec)
    metric = _build_metric(cfg)
    seq = _load_orbit(args.orbit)
    verdict = shadowing.shadow_search(seq, f, metric, eps=cfg.eps, t0=cfg.t0,
                                      resolution=_default_grid(cfg))
    payload = {
        "command": "shadow",
        "map": cfg.map_spec,
        "metric": cfg.metric,
        "delta": cfg.delta,
        "orbit": args.orbit,
        **verdict.to_dict(),
    }
    path = _write_report(cfg.out, "shadow.json", payload)
    print(f"shadow {cfg.map_spec}/{cfg.metric}: "
          f"{'witness ' + repr(verdict.witness) if verdict.found else 'no witness'} ({path})")
    return 0 if verdict.found else 1


def _cmd_chain(args) -> int:
    cfg = _config_from(args)
    f = systems.map_from_spec(cfg.map_spec)
    metric = _build_metric(cfg)
    chain = orbits.chain_search(args.src, args.dst, f, metric, delta=cfg.delta,
                                t0=cfg.t0, resolution=cfg.grid or 1e-3)
    mixing = None
    if args.lengths:
        mixing = orbits.chain_mixing_check(args.src, args.dst, f, metric,
                                           delta=cfg.delta, t0=cfg.t0,
                                           resolution=cfg.grid or 1e-3,
                                           n_max=cfg.n_max)
    payload = {
        "command": "chain",
        "map": cfg.map_spec,
        "metric": cfg.metric,
        "from": args.src,
        "to": args.dst,
        "delta": cfg.delta,
        "t0": cfg.t0,
        "grid": cfg.grid or 1e-3,
        "found": chain is not None,
        "length": None if chain is None else len(chain),
        "states": None if chain is None else chain.states.tolist(),
        "length_spectrum": None if mixing is None else mixing.to_dict(),
    }
    path = _write_report(cfg.out, "chain.json", payload)
    print(f"chain {args.src:g}->{args.dst:g}: "
          f"{'length ' + str(len(chain)) if chain is not None else 'none'} ({path})")
    return 0 if chain is not None else 1


def _cmd_mix(args) -> int:
    cfg = _config_from(args)
    f = systems.map_from_spec(cfg.map_spec)
    metric = _build_metric(cfg)
    u = fm.Ball(args.u_center, args.u_radius, cfg.t0)
    v = fm.Ball(args.v_center, args.v_radius, cfg.t0)
    report = shadowing.topological_mixing_probe(f, u, v, metric, n_max=cfg.n_max,
                                                resolution=cfg.grid or 1e-3)
    payload = {
        "command": "mix",
        "map": cfg.map_spec,
        "metric": cfg.metric,
        "t0": cfg.t0,
        "grid": cfg.grid or 1e-3,
        "u": {"center": args.u_center, "radius": args.u_radius},
        "v": {"center": args.v_center, "radius": args.v_radius},
        **report.to_dict(),
    }
    path = _write_report(cfg.out, "mix.json", payload)
    print(f"mix: {len(report.present)} step counts hit, onset {report.n0} ({path})")
    return 0 if report.present else 1


def _cmd_density(args) -> int:
    cfg = _config_from(args)
    if args.construction is not None:
        if args.construction != "theorem-3.3":
            raise ValueError(f"unknown construction {args.construction!r}")
        skeleton = orbits.transitivity_skeleton(args.n)
        report = orbits.density(orbits.IndexSet(skeleton, universe=args.n))
        source = {"construction": args.construction, "n": args.n}
    else:
        if args.orbit is None:
            raise ValueError("density needs --construction or --orbit")
        if cfg.delta is None:
            raise ValueError("density --orbit needs --delta")
        f = systems.map_from_spec(cfg.map_spec)
        metric = _build_metric(cfg)
        seq = _load_orbit(args.orbit)
        iset = orbits.npo_set(seq, f, metric, delta=cfg.delta, t0=cfg.t0)
        report = orbits.density(iset)
        source = {"orbit": args.orbit, "map": cfg.map_spec, "metric": cfg.metric,
                  "delta": cfg.delta, "t0": cfg.t0}
    payload = {"command": "density", **source, "report": report.to_dict()}
    path = _write_report(cfg.out, "density.json", payload)
    _write(cfg.out, "density.csv", _density_csv(report))
    print(f"density: final {report.final_density!r}, "
          f"{'plausibly zero' if report.plausibly_zero else 'not vanishing'} ({path})")
    return 0 if report.plausibly_zero else 1


def _cmd_sweep(args) -> int:
    cfg = _config_from(args)
    f = systems.map_from_spec(cfg.map_spec)
    metric = _build_metric(cfg)
    seq = _load_orbit(args.orbit)
    rows = []
    for delta in args.deltas:
        for t0 in args.t0s:
            valid = orbits.validate_f_pseudo_orbit(seq, f, metric, delta, t0).is_empty
            for eps in args.epss:
                verdict = shadowing.shadow_search(seq, f, metric, eps=eps, t0=t0,
                                                  resolution=_default_grid(cfg))
                rows.append({
                    "delta": delta, "t0": t0, "eps": eps,
                    "orbit_valid": valid, "witness": verdict.witness,
                })
    payload = {"command": "sweep", "map": cfg.map_spec, "metric": cfg.metric,
               "orbit": args.orbit, "grid": _default_grid(cfg), "rows": rows}
    path = _write_report(cfg.out, "sweep.json", payload)
    lines = ["delta,t0,eps,orbit_valid,witness"]
    lines += [f"{r['delta']!r},{r['t0']!r},{r['eps']!r},{int(r['orbit_valid'])},"
              f"{'' if r['witness'] is None else repr(r['witness'])}" for r in rows]
    _write(cfg.out, "sweep.csv", "\n".join(lines) + "\n")
    print(f"sweep: {len(rows)} rows ({path})")
    return 0


def _config_from(args) -> RunConfig:
    cfg = RunConfig()
    for name in ("map_spec", "metric", "tnorm", "eps", "delta", "t0", "grid",
                 "seed", "n_max", "out", "lo", "hi", "lo_open"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    return cfg


# -- parser ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, *, metric_required: bool = True) -> None:
    p.add_argument("--map", dest="map_spec", required=metric_required,
                   help='map spec: "tent:<beta>" | "example43" | "g:<alpha>"')
    p.add_argument("--metric", required=metric_required,
                   choices=fm.METRIC_NAMES, help="fuzzy metric name")
    p.add_argument("--tnorm", default="product", choices=tnorm.KINDS)
    p.add_argument("--lo", type=float, default=0.0, help="standard-metric lower bound")
    p.add_argument("--hi", type=float, default=1.0, help="standard-metric upper bound")
    p.add_argument("--lo-open", dest="lo_open", action="store_true",
                   help="exclude the lower bound from the standard-metric space")
    p.add_argument("--grid", type=float, default=None, help="search grid resolution")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out", help="artifact directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyshadow",
        description="Fuzzy-metric shadowing diagnostics for interval maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-metric", help="axiom harness for a fuzzy metric")
    p.add_argument("name", help="metric name")
    p.add_argument("--tnorm", default="product", choices=tnorm.KINDS)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=_cmd_check_metric)

    p = sub.add_parser("check-tnorm", help="axiom harness for a t-norm")
    p.add_argument("name", help="t-norm name")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=_cmd_check_tnorm)

    p = sub.add_parser("reproduce", help="run a scripted scenario")
    p.add_argument("case", choices=REPRODUCE_CASES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("shadow", help="tracing-witness search over an orbit file")
    _add_common(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float, default=None, help="recorded in the report")
    p.add_argument("--t0", type=float, default=1.0)
    p.add_argument("--orbit", required=True, help='orbit CSV with header "index,value"')
    p.set_defaults(func=_cmd_shadow)

    p = sub.add_parser("chain", help="chain search between two states")
    _add_common(p)
    p.add_argument("--from", dest="src", type=float, required=True)
    p.add_argument("--to", dest="dst", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--t0", type=float, default=1.0)
    p.add_argument("--n-max", dest="n_max", type=int, default=64)
    p.add_argument("--lengths", action="store_true",
                   help="also report which chain lengths exist")
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("mix", help="ball-to-ball image intersection probe")
    _add_common(p)
    p.add_argument("--u-center", type=float, required=True)
    p.add_argument("--u-radius", type=float, required=True)
    p.add_argument("--v-center", type=float, required=True)
    p.add_argument("--v-radius", type=float, required=True)
    p.add_argument("--t0", type=float, default=1.0)
    p.add_argument("--n-max", dest="n_max", type=int, default=64)
    p.set_defaults(func=_cmd_mix)

    p = sub.add_parser("density", help="prefix-density report")
    _add_common(p, metric_required=False)
    p.add_argument("--construction", choices=("theorem-3.3",), default=None)
    p.add_argument("--n", type=int, default=10**6, help="construction universe length")
    p.add_argument("--orbit", default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--t0", type=float, default=1.0)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("sweep", help="tabulate verdicts over parameter combinations")
    _add_common(p)
    p.add_argument("--orbit", required=True)
    p.add_argument("--eps-list", dest="epss", type=_float_list, required=True)
    p.add_argument("--delta-list", dest="deltas", type=_float_list, required=True)
    p.add_argument("--t0-list", dest="t0s", type=_float_list, default=[1.0])
    p.set_defaults(func=_cmd_sweep)

    return parser


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad float list {text!r}") from None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, systems.ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
