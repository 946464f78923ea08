"""Counterexample scans, eigenpath tracking, crossing refinement, and
hull-spectrum experiments.

The drivers shard embarrassingly parallel work (one task per block of pair
classes or tuples) across a process pool, merge results in deterministic
block order, and optionally append per-block checkpoints so an interrupted
scan resumes without recomputation and still produces byte-identical
reports.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations as _arrangements
from typing import Iterator, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial import ConvexHull, cKDTree

from .permgroup import (
    CycleType,
    PairCensus,
    Permutation,
    all_cycle_types,
    canonical_cycle_form,
)
from .region import RegionPM, pm_contains_many, pm_signed_distance_many
from .spectra import (
    EigenPoint,
    ScanConfig,
    batched_eigenvalues,
    compositions,
    pair_grid_spectra,
    pair_mesh,
    standard_rep,
    tuple_grid_spectra,
)

DEFAULT_BLOCK = 512
WORKERS_ENV = "DSREGION_WORKERS"


class NoCrossingError(RuntimeError):
    """The tracked eigenpath never leaves the region."""


class CheckpointMismatchError(RuntimeError):
    """Checkpoint file was written under a different configuration."""


@dataclass(frozen=True)
class CrossingReport:
    """Every weight grid of one class/tuple with an exterior eigenvalue."""

    class_index: object
    tuple_order: int
    violating_weights: tuple[tuple[float, ...], ...]
    max_violation: float
    witness: EigenPoint

    def to_record(self) -> dict:
        return {
            "classIndex": self.class_index,
            "tupleOrder": self.tuple_order,
            "violatingWeights": [list(w) for w in self.violating_weights],
            "maxViolation": self.max_violation,
            "witness": {
                "re": self.witness.value.real,
                "im": self.witness.value.imag,
                "weights": list(self.witness.weights),
            },
        }


@dataclass(frozen=True)
class RefinedInterval:
    """Maximal weight interval over which a branch stays outside PM_n."""

    class_index: object
    t_low: float
    t_high: float
    tolerance: float


def resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _exterior_report(
    source: object,
    tuple_order: int,
    weights: np.ndarray,
    eigs: np.ndarray,
    region: RegionPM,
) -> CrossingReport | None:
    """Build a report if any upper-half-plane eigenvalue lies outside PM_n.

    ``weights`` has one row per grid point, ``eigs`` the matching eigenvalue
    rows.  Real-axis and lower-half-plane points are skipped (conjugate
    symmetry and the segment [-1, 1] make them irrelevant).
    """
    keep = eigs.imag >= 1e-12
    if not keep.any():
        return None
    rows, cols = np.nonzero(keep)
    pts = eigs[rows, cols]
    outside = ~pm_contains_many(region, pts)
    if not outside.any():
        return None
    rows, pts = rows[outside], pts[outside]
    sd = pm_signed_distance_many(region, pts)
    positive = sd > 0.0
    if not positive.any():
        return None
    rows, pts, sd = rows[positive], pts[positive], sd[positive]
    seen: set[int] = set()
    violating = []
    for r in rows:
        if int(r) not in seen:
            seen.add(int(r))
            violating.append(tuple(float(w) for w in weights[r]))
    best = int(np.argmax(sd))
    witness = EigenPoint(
        complex(pts[best]),
        source,
        tuple(float(w) for w in weights[rows[best]]),
    )
    return CrossingReport(
        class_index=source,
        tuple_order=tuple_order,
        violating_weights=tuple(violating),
        max_violation=float(sd[best]),
        witness=witness,
    )


# ---------------------------------------------------------------------------
# Parallel scan driver.
#
# Workers inherit their task payloads through module state set before the
# pool forks; tasks then reference blocks by index only.
# ---------------------------------------------------------------------------

_POOL_STATE: dict = {}


def _run_pair_block(args: tuple[int, int, int]) -> tuple[int, list[dict], list | None]:
    block_id, lo, hi = args
    pairs: list = _POOL_STATE["pairs"]
    n: int = _POOL_STATE["n"]
    m: int = _POOL_STATE["mesh"]
    emit_cloud: bool = _POOL_STATE["emit_cloud"]
    region = RegionPM(n)
    t = pair_mesh(m)
    weights = np.column_stack([t, 1.0 - t])
    reports: list[dict] = []
    cloud: list | None = [] if emit_cloud else None
    for idx in range(lo, hi):
        sigma_imgs, tau_imgs = pairs[idx]
        ds = standard_rep(Permutation(sigma_imgs))
        dt = standard_rep(Permutation(tau_imgs))
        mats = t[:, None, None] * ds + (1.0 - t)[:, None, None] * dt
        eigs = batched_eigenvalues(mats)
        rep = _exterior_report(idx, 2, weights, eigs, region)
        if rep is not None:
            reports.append(rep.to_record())
        if cloud is not None:
            keep = eigs.imag >= 0.0
            rows, cols = np.nonzero(keep)
            cloud.append(
                np.column_stack(
                    [
                        np.full(rows.shape, idx, dtype=float),
                        t[rows],
                        eigs[rows, cols].real,
                        eigs[rows, cols].imag,
                    ]
                )
            )
    return block_id, reports, cloud


def _blocks(count: int, block: int) -> list[tuple[int, int, int]]:
    return [
        (bid, lo, min(lo + block, count))
        for bid, lo in enumerate(range(0, count, block))
    ]


def _config_digest(payload: dict) -> str:
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


class _Checkpoint:
    """Append-only JSONL checkpoint: a header line, then one line per block."""

    def __init__(self, path: str, digest: str):
        self.path = path
        self.digest = digest
        self.done: dict[int, list[dict]] = {}
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                header = fh.readline()
                if header:
                    head = json.loads(header)
                    if head.get("config") != digest:
                        raise CheckpointMismatchError(
                            f"checkpoint {path} was written under a different "
                            f"configuration; refusing to resume"
                        )
                    for line in fh:
                        if not line.strip():
                            continue
                        rec = json.loads(line)
                        self.done[rec["block"]] = rec["reports"]
        if not self.done and not os.path.exists(path):
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps({"config": digest}) + "\n")

    def record(self, block_id: int, reports: list[dict]) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({"block": block_id, "reports": reports}) + "\n")
        self.done[block_id] = reports


def _run_blocks_parallel(
    task_fn,
    blocks: list[tuple[int, int, int]],
    workers: int,
    checkpoint: _Checkpoint | None,
    cloud_sink=None,
) -> dict[int, list[dict]]:
    """Run blocks on a pool, merging results keyed by block id.

    With a cloud sink the blocks are written in order as results arrive, so
    completed blocks are held only until their turn comes.
    """
    results: dict[int, list[dict]] = {}
    pending = []
    for blk in blocks:
        if checkpoint is not None and blk[0] in checkpoint.done:
            results[blk[0]] = checkpoint.done[blk[0]]
        else:
            pending.append(blk)
    clouds: dict[int, list] = {}

    def consume(block_id: int, reports: list[dict], cloud) -> None:
        results[block_id] = reports
        if checkpoint is not None:
            checkpoint.record(block_id, reports)
        if cloud_sink is not None and cloud is not None:
            clouds[block_id] = cloud

    if workers <= 1 or len(pending) <= 1:
        for blk in pending:
            consume(*task_fn(blk))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for block_id, reports, cloud in pool.map(
                task_fn, pending, chunksize=1
            ):
                consume(block_id, reports, cloud)
    if cloud_sink is not None:
        for bid in sorted(clouds):
            for arr in clouds[bid]:
                cloud_sink(arr)
    return results


def _merge_reports(results: dict[int, list[dict]]) -> list[CrossingReport]:
    out: list[CrossingReport] = []
    for bid in sorted(results):
        for rec in results[bid]:
            out.append(
                CrossingReport(
                    class_index=rec["classIndex"],
                    tuple_order=rec["tupleOrder"],
                    violating_weights=tuple(
                        tuple(w) for w in rec["violatingWeights"]
                    ),
                    max_violation=rec["maxViolation"],
                    witness=EigenPoint(
                        complex(rec["witness"]["re"], rec["witness"]["im"]),
                        rec["classIndex"],
                        tuple(rec["witness"]["weights"]),
                    ),
                )
            )
    return out


def scan_census(
    census: PairCensus,
    cfg: ScanConfig,
    *,
    workers: int | None = None,
    checkpoint_path: str | None = None,
    cloud_sink=None,
    block_size: int = DEFAULT_BLOCK,
) -> list[CrossingReport]:
    """Scan every pair class; report each class with exterior eigenvalues.

    An empty list means no counterexample to PM_n = DS_n at this mesh.
    """
    if cfg.tuple_order != 2:
        raise ValueError("scan_census handles pairs; use scan_tuples for k >= 3")
    global _POOL_STATE
    _POOL_STATE = {
        "pairs": [(c.sigma.images, c.tau.images) for c in census.classes],
        "n": census.n,
        "mesh": cfg.mesh_size,
        "emit_cloud": cloud_sink is not None,
    }
    digest = _config_digest(
        {"kind": "pairs", "n": census.n, "mesh": cfg.mesh_size, "count": census.count_total}
    )
    checkpoint = (
        _Checkpoint(checkpoint_path, digest) if checkpoint_path is not None else None
    )
    blocks = _blocks(census.count_total, block_size)
    results = _run_blocks_parallel(
        _run_pair_block, blocks, resolve_workers(workers), checkpoint, cloud_sink
    )
    return _merge_reports(results)


# ---------------------------------------------------------------------------
# Tuple scans.
# ---------------------------------------------------------------------------

def _tuple_tasks_exhaustive(n: int, k: int) -> tuple[list, list]:
    """Task payloads for exhaustive tuples: canonical first element per cycle
    type, remaining k-1 elements an unordered multiset over S_n.

    Enumerating multisets rather than ordered tails loses nothing because
    every weight composition is applied to each tuple.  One task covers one
    (type, second element) slice; the worker loops the trailing multiset.
    """
    elements = [tuple(p) for p in _arrangements(range(n))]
    canon = [canonical_cycle_form(t).images for t in all_cycle_types(n)]
    if k != 3:
        raise ValueError("exhaustive tuple scans support k == 3")
    tasks = []
    for ti in range(len(canon)):
        for qi in range(len(elements)):
            tasks.append((ti, qi))
    return tasks, [canon, elements]


def _run_triple_block(args: tuple[int, int, int]) -> tuple[int, list[dict], list | None]:
    block_id, lo, hi = args
    tasks = _POOL_STATE["tasks"]
    canon, elements = _POOL_STATE["payload"]
    n: int = _POOL_STATE["n"]
    m: int = _POOL_STATE["mesh"]
    region = RegionPM(n)
    weights = compositions(m, 3) / m
    reps_cache = [standard_rep(Permutation(e)) for e in elements]
    reports: list[dict] = []
    for task_idx in range(lo, hi):
        ti, qi = tasks[task_idx]
        d_first = standard_rep(Permutation(canon[ti]))
        d_q = reps_cache[qi]
        for ri in range(qi, len(elements)):
            stack = np.stack([d_first, d_q, reps_cache[ri]])
            mats = np.tensordot(weights, stack, axes=(1, 0))
            eigs = batched_eigenvalues(mats)
            rep = _exterior_report((ti, qi, ri), 3, weights, eigs, region)
            if rep is not None:
                rep = CrossingReport(
                    class_index=list(rep.class_index),
                    tuple_order=3,
                    violating_weights=rep.violating_weights,
                    max_violation=rep.max_violation,
                    witness=rep.witness,
                )
                reports.append(rep.to_record())
    return block_id, reports, None


def _run_sampled_tuple_block(args: tuple[int, int, int]) -> tuple[int, list[dict], list | None]:
    block_id, lo, hi = args
    tuples = _POOL_STATE["tuples"]
    n: int = _POOL_STATE["n"]
    m: int = _POOL_STATE["mesh"]
    k: int = _POOL_STATE["k"]
    region = RegionPM(n)
    weights = compositions(m, k) / m
    reports: list[dict] = []
    for idx in range(lo, hi):
        perms = [Permutation(imgs) for imgs in tuples[idx]]
        stack = np.stack([standard_rep(p) for p in perms])
        mats = np.tensordot(weights, stack, axes=(1, 0))
        eigs = batched_eigenvalues(mats)
        rep = _exterior_report(idx, k, weights, eigs, region)
        if rep is not None:
            reports.append(rep.to_record())
    return block_id, reports, None


def scan_tuples(
    n: int,
    k: int,
    m: int,
    sampling: str = "exhaustive",
    *,
    samples: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
    checkpoint_path: str | None = None,
    block_size: int = 16,
) -> list[CrossingReport]:
    """Scan k-tuples of permutations over the weight grid of granularity 1/m.

    ``exhaustive`` fixes the first element to each cycle type's canonical
    form (k == 3 only); ``random`` draws ``samples`` uniform k-tuples and
    requires a seed.
    """
    if k < 3:
        raise ValueError("scan_tuples handles k >= 3; use scan_census for pairs")
    global _POOL_STATE
    if sampling == "exhaustive":
        tasks, payload = _tuple_tasks_exhaustive(n, k)
        _POOL_STATE = {
            "tasks": tasks,
            "payload": payload,
            "n": n,
            "mesh": m,
        }
        digest = _config_digest({"kind": "triples", "n": n, "mesh": m, "k": k})
        blocks = _blocks(len(tasks), block_size)
        fn = _run_triple_block
    elif sampling == "random":
        if seed is None:
            raise ValueError("random sampling requires a seed")
        if samples is None:
            raise ValueError("random sampling requires a sample count")
        rng = np.random.default_rng(seed)
        elements = [tuple(p) for p in _arrangements(range(n))]
        idx = rng.integers(0, len(elements), size=(samples, k))
        tuples = [[elements[j] for j in row] for row in idx]
        _POOL_STATE = {"tuples": tuples, "n": n, "mesh": m, "k": k}
        digest = _config_digest(
            {"kind": "sampled", "n": n, "mesh": m, "k": k, "seed": seed, "samples": samples}
        )
        blocks = _blocks(len(tuples), max(block_size, 64))
        fn = _run_sampled_tuple_block
    else:
        raise ValueError(f"unknown sampling strategy {sampling!r}")
    checkpoint = (
        _Checkpoint(checkpoint_path, digest) if checkpoint_path is not None else None
    )
    results = _run_blocks_parallel(fn, blocks, resolve_workers(workers), checkpoint)
    return _merge_reports(results)


# ---------------------------------------------------------------------------
# Eigenpath tracking and crossing refinement.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenPath:
    """One eigenvalue branch along a pair segment."""

    t_grid: np.ndarray
    values: np.ndarray
    ambiguous_steps: tuple[int, ...]


def track_eigenpath(
    sigma: Permutation, tau: Permutation, t_grid: Sequence[float]
) -> list[EigenPath]:
    """Partition eigenvalues along the segment into continuous branches.

    Consecutive slices are matched by globally optimal assignment on
    |difference|; steps where some swapped matching would cost within 1e-12
    of the optimum are flagged ambiguous on every branch.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 2 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be sorted and have at least two points")
    ds = standard_rep(sigma)
    dt = standard_rep(tau)
    mats = t_grid[:, None, None] * ds + (1.0 - t_grid)[:, None, None] * dt
    eigs = batched_eigenvalues(mats)
    d = eigs.shape[1]
    branches = np.empty_like(eigs)
    order = np.lexsort((eigs[0].imag, eigs[0].real))
    branches[0] = eigs[0][order]
    ambiguous: list[int] = []
    for s in range(1, len(t_grid)):
        cost = np.abs(branches[s - 1][:, None] - eigs[s][None, :])
        rows, cols = linear_sum_assignment(cost)
        assign = cols[np.argsort(rows)]
        branches[s] = eigs[s][assign]
        chosen = cost[np.arange(d), assign]
        for a in range(d):
            for b in range(a + 1, d):
                delta = (
                    cost[a, assign[b]] + cost[b, assign[a]] - chosen[a] - chosen[b]
                )
                if abs(delta) < 1e-12:
                    ambiguous.append(s)
                    break
            else:
                continue
            break
    amb = tuple(ambiguous)
    return [EigenPath(t_grid, branches[:, b].copy(), amb) for b in range(d)]


def _branch_eig(
    sigma_rep: np.ndarray, tau_rep: np.ndarray, t: float, ref: complex
) -> complex:
    mat = t * sigma_rep + (1.0 - t) * tau_rep
    eigs = np.linalg.eigvals(mat)
    return complex(eigs[np.argmin(np.abs(eigs - ref))])


def refine_crossing(
    sigma: Permutation,
    tau: Permutation,
    branch_hint: complex | None = None,
    tol: float = 1e-9,
    *,
    coarse: int = 1001,
    class_index: object = None,
) -> RefinedInterval:
    """Bisect the boundary crossings of the branch that leaves PM_n.

    The maximal exterior run of a coarse scan brackets the two crossings;
    each is bisected on the signed distance of the branch eigenvalue until
    the t-bracket is below ``tol``.  ``branch_hint`` picks the branch nearest
    a given point when several leave the region.
    """
    if tol < 1e-12:
        raise ValueError("tolerance below 1e-12 is not resolvable in doubles")
    n = sigma.n
    region = RegionPM(n)
    t_grid = pair_mesh(coarse)
    paths = track_eigenpath(sigma, tau, t_grid)
    sds = [pm_signed_distance_many(region, p.values) for p in paths]
    exiting = [b for b, sd in enumerate(sds) if sd.max() > 0.0]
    if not exiting:
        raise NoCrossingError("no eigenpath leaves the region on the coarse grid")
    if branch_hint is not None:
        b = min(exiting, key=lambda b: np.min(np.abs(paths[b].values - branch_hint)))
    else:
        b = max(exiting, key=lambda b: sds[b].max())
    sd = sds[b]
    peak = int(np.argmax(sd))
    lo = peak
    while lo > 0 and sd[lo - 1] > 0.0:
        lo -= 1
    hi = peak
    while hi < len(t_grid) - 1 and sd[hi + 1] > 0.0:
        hi += 1
    if lo == 0 or hi == len(t_grid) - 1:
        raise NoCrossingError("exterior run is not bracketed inside (0, 1)")
    ds = standard_rep(sigma)
    dt = standard_rep(tau)

    def bisect(t_in: float, t_out: float, ref: complex) -> float:
        # Keeps sd(t_out) > 0 >= sd(t_in); tracks the branch by proximity.
        while abs(t_out - t_in) > tol:
            mid = 0.5 * (t_in + t_out)
            lam = _branch_eig(ds, dt, mid, ref)
            ref = lam
            if pm_signed_distance_many(region, np.array([lam]))[0] > 0.0:
                t_out = mid
            else:
                t_in = mid
        return 0.5 * (t_in + t_out)

    t_low = bisect(t_grid[lo - 1], t_grid[lo], complex(paths[b].values[lo]))
    t_high = bisect(t_grid[hi + 1], t_grid[hi], complex(paths[b].values[hi]))
    return RefinedInterval(class_index, float(t_low), float(t_high), tol)


# ---------------------------------------------------------------------------
# Hull spectra of subgroups.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HullExteriorPoint:
    """A tuple eigenvalue outside the convex hull of the pair cloud."""

    perms: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]
    value: complex
    hull_distance: float


@dataclass
class HullScanResult:
    """Pair/tuple point clouds plus two exteriority measures.

    ``exterior`` lists tuple eigenvalues beyond the pair cloud's convex hull
    (the certified notion).  ``max_pair_gap`` is the largest Euclidean
    distance from a tuple eigenvalue to its nearest pair eigenvalue: a large
    gap flags tuple points in regions the pair curves never reach even when
    the hull certificate comes up empty.
    """

    group: str
    n: int
    tuple_order: int
    mesh: int
    pair_points: np.ndarray
    tuple_points: np.ndarray
    exterior: list[HullExteriorPoint]
    max_pair_gap: float = 0.0
    gap_witness: complex = 0j


def _group_elements(group: str, n: int) -> list[Permutation]:
    if group == "symmetric":
        return [Permutation(p) for p in _arrangements(range(n))]
    if group == "alternating":
        return [
            Permutation(p) for p in _arrangements(range(n)) if Permutation(p).is_even()
        ]
    raise ValueError(f"unsupported subgroup {group!r}; use symmetric or alternating")


def _pair_cloud(elements: list[Permutation], m: int) -> np.ndarray:
    pts = []
    for a in range(len(elements)):
        for b in range(a, len(elements)):
            _, eigs = pair_grid_spectra(elements[a], elements[b], m + 1)
            pts.append(eigs.ravel())
    return np.concatenate(pts)


def hull_spectrum_scan(
    group: str,
    n: int,
    k: int,
    m: int,
    *,
    pair_mesh_size: int | None = None,
    sampling: str = "exhaustive",
    samples: int | None = None,
    seed: int | None = None,
    hull_tol: float = 1e-6,
) -> HullScanResult:
    """Scan k-tuples of subgroup elements against the pair-generated cloud.

    For k == 2 this is just the pair cloud.  For k == 3 the first element
    runs over the subgroup's canonical cycle forms and the rest over
    unordered multisets (or uniform samples); eigenvalues whose distance
    beyond the pair cloud's convex hull exceeds ``hull_tol`` are reported.
    The facet-violation distance used is a lower bound on the true Euclidean
    distance to the hull, so every report is certified exterior.
    """
    elements = _group_elements(group, n)
    pm = pair_mesh_size if pair_mesh_size is not None else m
    pair_pts = _pair_cloud(elements, pm)
    if k == 2:
        return HullScanResult(group, n, k, m, pair_pts, pair_pts[:0], [])
    if k != 3:
        raise ValueError("hull scans support k in {2, 3}")

    xy = np.unique(
        np.column_stack([pair_pts.real, pair_pts.imag]).round(12), axis=0
    )
    hull = ConvexHull(xy)
    eqs = hull.equations

    even_types = [
        t for t in all_cycle_types(n) if group == "symmetric" or t.is_even()
    ]
    firsts = [canonical_cycle_form(t) for t in even_types]
    if sampling == "exhaustive":
        tails = [
            (qi, ri)
            for qi in range(len(elements))
            for ri in range(qi, len(elements))
        ]
        triples = [(f, elements[qi], elements[ri]) for f in firsts for qi, ri in tails]
    elif sampling == "random":
        if seed is None or samples is None:
            raise ValueError("random sampling requires seed and samples")
        rng = np.random.default_rng(seed)
        triples = []
        for _ in range(samples):
            f = firsts[rng.integers(len(firsts))]
            q = elements[rng.integers(len(elements))]
            r = elements[rng.integers(len(elements))]
            triples.append((f, q, r))
    else:
        raise ValueError(f"unknown sampling strategy {sampling!r}")

    weights = compositions(m, 3) / m
    tree = cKDTree(np.column_stack([pair_pts.real, pair_pts.imag]))
    exterior: list[HullExteriorPoint] = []
    tuple_pts_chunks = []
    max_gap = 0.0
    gap_witness = 0j
    for f, q, r in triples:
        stack = np.stack([standard_rep(f), standard_rep(q), standard_rep(r)])
        mats = np.tensordot(weights, stack, axes=(1, 0))
        eigs = batched_eigenvalues(mats)
        tuple_pts_chunks.append(eigs.ravel())
        flat = np.column_stack([eigs.ravel().real, eigs.ravel().imag])
        viol = (flat @ eqs[:, :2].T + eqs[:, 2]).max(axis=1)
        gaps, _ = tree.query(flat, k=1)
        far = int(np.argmax(gaps))
        if gaps[far] > max_gap:
            max_gap = float(gaps[far])
            gap_witness = complex(eigs.ravel()[far])
        mask = viol > hull_tol
        if mask.any():
            rows = np.nonzero(mask.reshape(eigs.shape).any(axis=1))[0]
            for row in rows:
                for col in range(eigs.shape[1]):
                    flat_idx = row * eigs.shape[1] + col
                    if viol[flat_idx] > hull_tol:
                        exterior.append(
                            HullExteriorPoint(
                                perms=(f.images, q.images, r.images),
                                weights=tuple(float(w) for w in weights[row]),
                                value=complex(eigs[row, col]),
                                hull_distance=float(viol[flat_idx]),
                            )
                        )
    tuple_pts = (
        np.concatenate(tuple_pts_chunks) if tuple_pts_chunks else pair_pts[:0]
    )
    return HullScanResult(
        group, n, k, m, pair_pts, tuple_pts, exterior, max_gap, gap_witness
    )


# ---------------------------------------------------------------------------
# Serialization helpers shared with the CLI.
# ---------------------------------------------------------------------------

def reports_document(
    reports: Sequence[CrossingReport], *, n: int, mesh: int, tuple_order: int
) -> dict:
    return {
        "n": n,
        "meshSize": mesh,
        "tupleOrder": tuple_order,
        "reportCount": len(reports),
        "reports": [r.to_record() for r in reports],
    }


def dump_reports(path: str, document: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=2, sort_keys=True)
        fh.write("\n")
