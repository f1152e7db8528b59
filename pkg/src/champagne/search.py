"""Level-by-level search over feasible 2-colorings.

Level k holds, up to isomorphism, every 2-coloring of K_k with no forbidden
monochromatic induced subgraph.  Level k+1 is produced by attaching one new
vertex to each level-k coloring in all 2^k ways, keeping the extensions that
stay clean, then canonicalizing, deduplicating and sorting.  Any clean
coloring of K_{k+1} restricts to a clean coloring of K_k, so no survivor is
missed.

The extension filter never re-scans the whole graph: for each parent it
collects the "critical" vertex subsets whose induced coloring is one vertex
away from a forbidden pattern, and tests all 2^k neighbor masks against
those subsets as numpy vectors.

A direct enumeration oracle over all labeled colorings (n <= 7) provides an
independent check of both emptiness verdicts and per-level class sets.
"""

from __future__ import annotations

import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import multiprocessing
import numpy as np

from .forbidden import ForbiddenFamily, induced_code, is_forbidden
from .graphs import Graph, canonical_form, pair_count, pair_slot

DEFAULT_SURVIVOR_CAP = 50_000_000


class SearchCapExceeded(RuntimeError):
    """A level outgrew the configured survivor cap; carries partial results."""

    def __init__(self, report):
        super().__init__(
            f"survivor cap exceeded at level {report.levels[-1]['k']}"
        )
        self.report = report


@dataclass(frozen=True)
class FeasibleLevel:
    """All clean colorings of K_k, canonical and sorted by code."""

    k: int
    graphs: tuple[Graph, ...]

    @property
    def count(self) -> int:
        return len(self.graphs)

    def codes(self) -> tuple[int, ...]:
        return tuple(g.bits for g in self.graphs)

    def validate(self, fam: ForbiddenFamily) -> None:
        codes = self.codes()
        if list(codes) != sorted(set(codes)):
            raise AssertionError(f"level {self.k} codes not strictly increasing")
        for g in self.graphs:
            if g.n != self.k:
                raise AssertionError(f"level {self.k} holds a graph on {g.n} vertices")
            if canonical_form(g).code != g.bits:
                raise AssertionError(f"level {self.k} graph not canonical: {g}")
            if is_forbidden(g, fam):
                raise AssertionError(f"level {self.k} graph is forbidden: {g}")


@dataclass
class SearchOptions:
    jobs: int = 1
    cap: int = DEFAULT_SURVIVOR_CAP
    collect_witnesses: bool = False
    witness_path: str | None = None
    progress: bool = False
    keep_levels: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.cap < 1:
            raise ValueError("cap must be >= 1")


@dataclass
class SearchReport:
    """Machine-readable outcome of a run; serializes to JSON."""

    family: list
    n_max: int
    jobs: int
    cap: int
    seed: int
    levels: list = field(default_factory=list)
    verdict: dict | None = None
    witnesses: dict | None = None
    feasible_levels: list | None = field(default=None, repr=False)

    def to_json_obj(self, with_timing: bool = True) -> dict:
        """Full report; with_timing=False drops the run-environment fields
        (per-level seconds and the worker count), leaving exactly the bytes
        that are guaranteed identical across runs and worker counts."""
        levels = [dict(level) for level in self.levels]
        obj = {
            "family": self.family,
            "n_max": self.n_max,
            "jobs": self.jobs,
            "cap": self.cap,
            "seed": self.seed,
            "levels": levels,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }
        if not with_timing:
            for level in levels:
                level.pop("seconds", None)
            obj.pop("jobs")
        return obj

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_json_obj(with_timing), indent=2, sort_keys=True)


def _critical_subsets(rows, k: int, fam: ForbiddenFamily):
    """Subsets of the k parent vertices one vertex short of a forbidden
    pattern, grouped by pattern size.

    Returns [(m, [(subset, completion_mask), ...]), ...] where bit c of
    completion_mask is set when joining the new vertex to exactly the subset
    members selected by c completes a forbidden pattern.
    """
    out = []
    for m in fam.sizes:
        if m - 1 > k:
            break
        prefixes = fam.prefix_map[m]
        crit = []
        for subset in itertools.combinations(range(k), m - 1):
            mask = prefixes.get(induced_code(rows, subset))
            if mask:
                crit.append((subset, mask))
        if crit:
            out.append((m, crit))
    return out


@lru_cache(maxsize=65536)
def _mask_table(mask: int, bits: int) -> np.ndarray:
    nbytes = ((1 << bits) + 7) // 8
    table = np.unpackbits(
        np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8),
        bitorder="little",
    )
    return table[: 1 << bits].astype(bool)


def _clean_extensions(parent: Graph, fam: ForbiddenFamily) -> list[int]:
    """Neighbor masks M for which parent + new vertex (adjacent to M) is clean."""
    k = parent.n
    rows = parent.rows()
    masks = np.arange(1 << k, dtype=np.uint32)
    for m, crit in _critical_subsets(rows, k, fam):
        width = m - 1
        for subset, completion in crit:
            if not masks.size:
                return []
            selected = np.zeros(masks.size, dtype=np.uint32)
            for i, s in enumerate(subset):
                selected |= (masks >> np.uint32(s) & np.uint32(1)) << np.uint32(i)
            masks = masks[~_mask_table(completion, width)[selected]]
    return [int(m) for m in masks]


def _expand_chunk(args):
    parent_codes, k, fam = args
    shift = pair_count(k)
    kept = 0
    child_codes = set()
    for bits in parent_codes:
        parent = Graph(k, bits)
        for mask in _clean_extensions(parent, fam):
            kept += 1
            child_codes.add(canonical_form(Graph(k + 1, bits | mask << shift)).code)
    return child_codes, kept


def extend_level(
    level: FeasibleLevel, fam: ForbiddenFamily, jobs: int = 1
) -> FeasibleLevel:
    new_level, _, _ = _extend_level_stats(level, fam, jobs)
    return new_level


def _extend_level_stats(level, fam, jobs):
    k = level.k
    if k >= 16:
        raise ValueError("levels beyond 16 vertices are unsupported")
    parent_codes = level.codes()
    expanded = level.count * (1 << k)
    if jobs == 1 or level.count < 2 * jobs:
        chunks = [parent_codes] if parent_codes else []
        results = [_expand_chunk((c, k, fam)) for c in chunks]
    else:
        bounds = np.linspace(0, len(parent_codes), jobs + 1).astype(int)
        chunks = [
            parent_codes[bounds[i] : bounds[i + 1]]
            for i in range(jobs)
            if bounds[i] < bounds[i + 1]
        ]
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            results = list(pool.map(_expand_chunk, [(c, k, fam) for c in chunks]))
    codes: set[int] = set()
    kept = 0
    for chunk_codes, chunk_kept in results:
        codes |= chunk_codes
        kept += chunk_kept
    graphs = tuple(Graph(k + 1, code) for code in sorted(codes))
    return FeasibleLevel(k + 1, graphs), expanded, kept


def run_search(
    fam: ForbiddenFamily, n_max: int, opts: SearchOptions | None = None
) -> SearchReport:
    """Grow feasible levels from the 1-vertex coloring up to n_max vertices.

    Stops early once a level is empty.  The verdict, level counts and any
    witness output are deterministic for any worker count; only the timing
    fields vary run to run.
    """
    if not 1 <= n_max <= 16:
        raise ValueError("n_max must be in 1..16")
    opts = opts or SearchOptions()
    report = SearchReport(
        family=fam.describe(),
        n_max=n_max,
        jobs=opts.jobs,
        cap=opts.cap,
        seed=opts.seed,
    )
    start = time.perf_counter()
    level = FeasibleLevel(1, (Graph(1, 0),))
    report.levels.append(
        {"k": 1, "count": 1, "expanded": 1, "kept": 1, "seconds": 0.0}
    )
    levels = [level]
    while level.k < n_max and level.count > 0:
        t0 = time.perf_counter()
        level, expanded, kept = _extend_level_stats(level, fam, opts.jobs)
        report.levels.append(
            {
                "k": level.k,
                "count": level.count,
                "expanded": expanded,
                "kept": kept,
                "seconds": round(time.perf_counter() - t0, 3),
            }
        )
        if opts.progress:
            print(
                f"level={level.k} expanded={expanded} kept={kept} "
                f"deduped={level.count} elapsed={time.perf_counter() - start:.2f}",
                file=sys.stderr,
            )
        levels.append(level)
        if max(kept, level.count) > opts.cap:
            report.verdict = {"kind": "cap-exceeded", "k": level.k}
            raise SearchCapExceeded(report)
    if level.count == 0:
        report.verdict = {"kind": "empty-at-k", "k": level.k}
    else:
        report.verdict = {
            "kind": "feasible-survivors",
            "k": level.k,
            "count": level.count,
        }
    final = next(lv for lv in reversed(levels) if lv.count > 0)
    if opts.collect_witnesses or opts.witness_path:
        lines = [g.to_graph6() for g in final.graphs]
        report.witnesses = {"k": final.k, "count": final.count}
        if opts.witness_path:
            with open(opts.witness_path, "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")
            report.witnesses["path"] = opts.witness_path
        if opts.collect_witnesses:
            report.witnesses["graph6"] = lines
    if opts.keep_levels:
        report.feasible_levels = levels
    return report


# -- direct enumeration oracle ----------------------------------------------


def _forbidden_mask(fam: ForbiddenFamily, n: int) -> np.ndarray:
    """Boolean mask over all 2^(n(n-1)/2) labeled colorings of K_n."""
    total = 1 << pair_count(n)
    codes_all = np.arange(total, dtype=np.uint32)
    bad = np.zeros(total, dtype=bool)
    for m in fam.sizes:
        if m > n:
            break
        patterns = np.array(sorted(fam.bad_codes[m]), dtype=np.uint32)
        for subset in itertools.combinations(range(n), m):
            slots = [
                pair_slot(subset[i], subset[j])
                for j in range(1, m)
                for i in range(j)
            ]
            induced = np.zeros(total, dtype=np.uint32)
            for idx, slot in enumerate(slots):
                induced |= (codes_all >> np.uint32(slot) & np.uint32(1)) << np.uint32(
                    idx
                )
            bad |= np.isin(induced, patterns)
    return bad


def brute_force_check(fam: ForbiddenFamily, n: int) -> bool:
    """True iff every labeled coloring of K_n is forbidden (n <= 7 only)."""
    if n > 7:
        raise ValueError("direct enumeration is capped at n <= 7")
    if n < 1:
        raise ValueError("n must be >= 1")
    return bool(_forbidden_mask(fam, n).all())


def _slot_permutation(perm, n):
    table = [0] * pair_count(n)
    for v in range(n):
        for u in range(v):
            table[pair_slot(u, v)] = pair_slot(perm[u], perm[v])
    return table


def brute_force_level_codes(fam: ForbiddenFamily, n: int) -> tuple[int, ...]:
    """Canonical codes of all clean colorings of K_n, by direct enumeration.

    Enumerates every labeled coloring, filters, then walks the clean set
    marking whole relabeling orbits so each isomorphism class is
    canonicalized exactly once.
    """
    if n > 7:
        raise ValueError("direct enumeration is capped at n <= 7")
    clean = np.flatnonzero(~_forbidden_mask(fam, n))
    tables = [
        _slot_permutation(perm, n)
        for perm in itertools.permutations(range(n))
    ]
    marked = np.zeros(1 << pair_count(n), dtype=bool)
    codes = []
    for bits in clean:
        bits = int(bits)
        if marked[bits]:
            continue
        codes.append(canonical_form(Graph(n, bits)).code)
        on = [i for i in range(pair_count(n)) if bits >> i & 1]
        for table in tables:
            image = 0
            for i in on:
                image |= 1 << table[i]
            marked[image] = True
    return tuple(sorted(codes))
