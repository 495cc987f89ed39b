"""Witness searches for tracing properties, plus mixing probes.

All searches are exhaustive over an explicit grid of candidate start points.
A "no witness" verdict is therefore certified only relative to the stated
grid resolution, which every verdict records; refining the grid is the
validation knob.  Witness verdicts are re-verified index by index before
being returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fuzzy_metric import Ball, FuzzyMetric, ball_members
from .orbits import (
    DensityReport,
    MixingReport,
    OrbitSequence,
    _cofinite_onset,
    density,
    ns_set,
)
from .systems import ConstructionError, example43_map

DEFAULT_FUZZY_GRID = 1e-4
DEFAULT_CLASSICAL_GRID = 1e-5


class EmptyBallError(ValueError):
    """A probe ball contains no grid point."""


@dataclass
class ShadowingVerdict:
    """Outcome of a tracing search.

    ``witness`` is the smallest-valued tracing start point, or None.  The
    worst index/value describe the reported candidate: for a witness, its
    weakest tracing step; otherwise the best near-miss seen before each
    candidate was eliminated.  ``mode`` states which comparison the values
    use: fuzzy verdicts store a nearness (larger is better), classical ones
    a distance (smaller is better).
    """

    witness: float | None
    worst_index: int
    worst_value: float
    grid: float
    candidates: int
    eps: float
    t0: float | None
    mode: str = "fuzzy"
    near_miss: float | None = None

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "verdict": "witness-found" if self.found else "no-witness",
            "witness": self.witness,
            "worst_index": self.worst_index,
            "worst_value": self.worst_value,
            "grid": self.grid,
            "candidates": self.candidates,
            "eps": self.eps,
            "t0": self.t0,
            "mode": self.mode,
            "near_miss": self.near_miss,
        }


def shadow_search(seq: OrbitSequence, f, m: FuzzyMetric, eps: float, t0: float,
                  resolution: float = DEFAULT_FUZZY_GRID) -> ShadowingVerdict:
    """Exhaustive search for a point whose orbit stays eps-near the sequence.

    Every grid point is advanced alongside the sequence and eliminated at its
    first index with M(f^i(x), x_i, t0) <= 1 - eps.  Survivors are witnesses;
    the smallest-valued one is returned and re-verified.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    states = seq.states
    cands = m.grid(resolution)
    total = cands.size
    target = 1.0 - eps

    X = cands.copy()
    idx = np.arange(total)
    run_min = np.ones(total)
    run_arg = np.zeros(total, dtype=np.int64)

    best_val = -np.inf
    best_cand = float(cands[0])
    best_arg = 0

    def absorb(values, args, candidates):
        nonlocal best_val, best_cand, best_arg
        if values.size == 0:
            return
        j = int(np.argmax(values))
        if values[j] > best_val:
            best_val = float(values[j])
            best_cand = float(candidates[j])
            best_arg = int(args[j])

    for i, target_state in enumerate(states):
        vals = np.asarray(m.eval_array(X, target_state, t0), dtype=float)
        improved = vals < run_min[idx]
        run_min[idx[improved]] = vals[improved]
        run_arg[idx[improved]] = i
        dead = vals <= target
        if dead.any():
            gone = idx[dead]
            absorb(run_min[gone], run_arg[gone], cands[gone])
            keep = ~dead
            idx = idx[keep]
            X = X[keep]
            if idx.size == 0:
                break
        if i + 1 < states.size:
            X = np.asarray(f.eval_array(X), dtype=float)

    if idx.size:
        w = int(idx[0])
        witness = float(cands[w])
        _verify_fuzzy_witness(witness, seq, f, m, eps, t0)
        return ShadowingVerdict(witness, int(run_arg[w]), float(run_min[w]),
                                resolution, total, eps, t0)
    return ShadowingVerdict(None, best_arg, best_val, resolution, total, eps, t0,
                            near_miss=best_cand)


def _verify_fuzzy_witness(x: float, seq: OrbitSequence, f, m, eps: float, t0: float) -> None:
    v = x
    for i, s in enumerate(seq.states):
        if not m.eval_array(v, float(s), t0) > 1.0 - eps:
            raise AssertionError(f"witness re-verification failed at index {i}")
        if i + 1 < len(seq):
            v = f.eval(v)


def classical_shadow_search(seq: OrbitSequence, f, eps: float,
                            resolution: float = DEFAULT_CLASSICAL_GRID) -> ShadowingVerdict:
    """Distance-based twin of shadow_search: candidates survive an index when
    d(f^i(x), x_i) < eps.  Worst values are distances."""
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    states = seq.states
    cands = f.grid(resolution)
    total = cands.size

    X = cands.copy()
    idx = np.arange(total)
    run_max = np.zeros(total)
    run_arg = np.zeros(total, dtype=np.int64)

    best_val = np.inf
    best_cand = float(cands[0])
    best_arg = 0

    def absorb(values, args, candidates):
        nonlocal best_val, best_cand, best_arg
        if values.size == 0:
            return
        j = int(np.argmin(values))
        if values[j] < best_val:
            best_val = float(values[j])
            best_cand = float(candidates[j])
            best_arg = int(args[j])

    for i, target_state in enumerate(states):
        dist = np.abs(X - target_state)
        worse = dist > run_max[idx]
        run_max[idx[worse]] = dist[worse]
        run_arg[idx[worse]] = i
        dead = dist >= eps
        if dead.any():
            gone = idx[dead]
            absorb(run_max[gone], run_arg[gone], cands[gone])
            keep = ~dead
            idx = idx[keep]
            X = X[keep]
            if idx.size == 0:
                break
        if i + 1 < states.size:
            X = np.asarray(f.eval_array(X), dtype=float)

    if idx.size:
        w = int(idx[0])
        witness = float(cands[w])
        v = witness
        for i, s in enumerate(states):
            if not abs(v - float(s)) < eps:
                raise AssertionError(f"witness re-verification failed at index {i}")
            if i + 1 < states.size:
                v = f.eval(v)
        return ShadowingVerdict(witness, int(run_arg[w]), float(run_max[w]),
                                resolution, total, eps, None, mode="classical")
    return ShadowingVerdict(None, best_arg, best_val, resolution, total, eps, None,
                            mode="classical", near_miss=best_cand)


def build_nonshadowable_orbit(delta: float, f=None) -> OrbitSequence:
    """Pseudo-orbit that crosses the repelling side of the 1/2 fixed point.

    Rides the true orbit upward from 1/4 until one ratio-step below 1/2,
    hops onto 1/2, hops just above it, then rides the true orbit up to 1
    (appended exactly).  Under the ratio metrics every transition keeps
    min/max nearness above 1 - delta, yet no single orbit can trace both the
    1/4 and the 1 entries: orbits starting at or below 1/2 never leave
    (0, 1/2], and orbits starting above never come back down.
    """
    if not 0.0 < delta < 0.5:
        raise ConstructionError("crossing construction needs delta in (0, 1/2)")
    if f is None:
        f = example43_map()
    states = [0.25]
    v = 0.25
    # ascend toward 1/2 until the hop onto 1/2 is a valid ratio step
    while not f.eval(v) > (1.0 - delta) / 2.0:
        v = f.eval(v)
        states.append(v)
    states.append(0.5)
    hop = 0.5 / (1.0 - delta / 2.0)
    states.append(hop)
    v = hop
    # ascend toward the fixed point at 1, then land on it exactly
    while v < 1.0 - 1e-9 or not f.eval(v) > 1.0 - delta:
        v = f.eval(v)
        states.append(v)
        if v == 1.0:
            break
    states.append(1.0)
    return OrbitSequence(np.array(states), provenance="constructed")


def ergodic_shadow_search(seq: OrbitSequence, f, m: FuzzyMetric, eps: float, t0: float,
                          resolution: float = 1e-2) -> tuple[float, DensityReport]:
    """Candidate minimizing the final tracing-violation density, with its curve.

    Candidates are the metric grid plus the sequence start.  The returned
    report's plausibly_zero flag is the tracing verdict at the package-wide
    density threshold.
    """
    states = seq.states
    cands = np.unique(np.concatenate([m.grid(resolution), [float(states[0])]]))
    target = 1.0 - eps

    X = cands.copy()
    counts = np.zeros(cands.size, dtype=np.int64)
    for i, s in enumerate(states):
        vals = np.asarray(m.eval_array(X, float(s), t0), dtype=float)
        counts += vals <= target
        if i + 1 < states.size:
            X = np.asarray(f.eval_array(X), dtype=float)

    best = int(np.argmin(counts))  # ties break toward the smaller state value
    candidate = float(cands[best])
    report = density(ns_set(seq, candidate, f, m, eps, t0))
    return candidate, report


def topological_mixing_probe(f, U: Ball, V: Ball, m: FuzzyMetric, n_max: int = 64,
                             resolution: float = 1e-3) -> MixingReport:
    """Step counts n <= n_max after which some grid point of U lands in V.

    Grid points inside U are iterated exactly; membership of their images in
    V uses the ball's own comparison.  Raises EmptyBallError when either ball
    captures no grid point.
    """
    pts = m.grid(resolution)
    u_mask = ball_members(m, U, pts)
    v_mask = ball_members(m, V, pts)
    if not u_mask.any():
        raise EmptyBallError("no grid point inside the source ball")
    if not v_mask.any():
        raise EmptyBallError("no grid point inside the target ball")

    X = pts[u_mask]
    present: set[int] = set()
    for n in range(1, n_max + 1):
        X = np.asarray(f.eval_array(X), dtype=float)
        if ball_members(m, V, X).any():
            present.add(n)
    ordered = tuple(sorted(present))
    return MixingReport(present=ordered, n_max=n_max, n0=_cofinite_onset(present, n_max))
