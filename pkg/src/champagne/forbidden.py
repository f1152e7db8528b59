"""Forbidden monochromatic induced subgraphs in a 2-coloring.

A coloring is a Graph (edges red, non-edges blue).  A family entry is a
pattern graph plus a color scope: "red" forbids the pattern as an induced
subgraph of the coloring, "blue" forbids it in the complement, "both"
forbids either.  Patterns are small (2..8 vertices), so each entry is
compiled to the set of edge-bitset codes of all its labeled copies; an
induced-containment test is then subset enumeration plus set membership.

For the level-by-level search there is also a prefix map per pattern size:
bad code -> (bits among the first m-1 vertices, bits of the last vertex's
column).  Because the slot order groups pairs by their larger endpoint,
checking all extensions of a clean graph by one new (largest) vertex
reduces to dictionary lookups on already-induced prefixes.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache

from . import catalog
from .graphs import Graph, complement, pair_count, permute

SCOPES = ("both", "red", "blue")

DEFAULT_PATTERN_NAMES = ("K4", "K3,2", "K6-C5", "K6-H6", "K7-H7")


class FamilyError(ValueError):
    pass


@lru_cache(maxsize=256)
def labeled_copies(pattern: Graph) -> frozenset[int]:
    """Edge bitsets of every relabeling of `pattern` on its own vertex set."""
    return frozenset(
        permute(pattern, perm).bits
        for perm in itertools.permutations(range(pattern.n))
    )


def induced_code(rows, subset) -> int:
    """Edge bitset of the subgraph induced on `subset` (given ascending)."""
    code = 0
    for j in range(1, len(subset)):
        row = rows[subset[j]]
        base = j * (j - 1) // 2
        for i in range(j):
            if row >> subset[i] & 1:
                code |= 1 << (base + i)
    return code


class ForbiddenFamily:
    """Immutable compiled family of (pattern, scope) entries."""

    def __init__(self, entries, names=None):
        entries = tuple((g, scope) for g, scope in entries)
        for g, scope in entries:
            if scope not in SCOPES:
                raise FamilyError(f"scope must be one of {SCOPES}, got {scope!r}")
            if not 2 <= g.n <= 8:
                raise FamilyError(
                    f"patterns must have 2..8 vertices, got one with {g.n}"
                )
        self.entries = entries
        self._names = tuple(names) if names is not None else None
        bad: dict[int, set[int]] = {}
        for g, scope in entries:
            codes = bad.setdefault(g.n, set())
            if scope in ("red", "both"):
                codes |= labeled_copies(g)
            if scope in ("blue", "both"):
                codes |= labeled_copies(complement(g))
        self.bad_codes = {m: frozenset(c) for m, c in sorted(bad.items())}
        self.sizes = tuple(sorted(self.bad_codes))
        self.prefix_map: dict[int, dict[int, int]] = {}
        for m, codes in self.bad_codes.items():
            shift = pair_count(m - 1)
            prefixes: dict[int, int] = {}
            for code in codes:
                low = code & ((1 << shift) - 1)
                prefixes[low] = prefixes.get(low, 0) | 1 << (code >> shift)
            self.prefix_map[m] = prefixes

    def describe(self) -> list[dict]:
        out = []
        for idx, (g, scope) in enumerate(self.entries):
            if self._names and self._names[idx]:
                pattern = self._names[idx]
            else:
                pattern = g.to_json_obj()
            out.append({"pattern": pattern, "scope": scope})
        return out

    def __repr__(self):
        return f"ForbiddenFamily({self.describe()})"


def default_family() -> ForbiddenFamily:
    """The five-pattern family, each forbidden in both colors."""
    return ForbiddenFamily(
        [(catalog.get(name), "both") for name in DEFAULT_PATTERN_NAMES],
        names=DEFAULT_PATTERN_NAMES,
    )


def ramsey_family(r: int, b: int) -> ForbiddenFamily:
    """Family whose search emptiness at n certifies the Ramsey bound R(r,b) <= n."""
    return ForbiddenFamily(
        [(Graph.complete(r), "red"), (Graph.complete(b), "blue")],
        names=(f"K{r}", f"K{b}"),
    )


def family_from_json(obj) -> ForbiddenFamily:
    """Entries as [{"pattern": <catalog name or graph object>, "scope": ...}]."""
    if not isinstance(obj, list):
        raise FamilyError("family JSON must be a list of entries")
    graphs, scopes, names = [], [], []
    for entry in obj:
        if not isinstance(entry, dict) or "pattern" not in entry:
            raise FamilyError(f"bad family entry: {entry!r}")
        pattern = entry["pattern"]
        if isinstance(pattern, str):
            try:
                graphs.append(catalog.get(pattern))
            except KeyError as exc:
                raise FamilyError(str(exc)) from None
            names.append(pattern)
        else:
            graphs.append(Graph.from_json_obj(pattern))
            names.append(None)
        scopes.append(entry.get("scope", "both"))
    return ForbiddenFamily(zip(graphs, scopes), names=names)


def load_family(path: str) -> ForbiddenFamily:
    with open(path, encoding="utf-8") as fh:
        return family_from_json(json.load(fh))


def contains_induced(g: Graph, pattern: Graph) -> bool:
    """Does g contain an induced subgraph isomorphic to `pattern`?"""
    m = pattern.n
    if m > g.n:
        return False
    codes = labeled_copies(pattern)
    rows = g.rows()
    return any(
        induced_code(rows, subset) in codes
        for subset in itertools.combinations(range(g.n), m)
    )


def is_forbidden(g: Graph, fam: ForbiddenFamily) -> bool:
    """Does some entry occur induced in its scoped color of the coloring g?"""
    rows = g.rows()
    for m in fam.sizes:
        if m > g.n:
            break
        codes = fam.bad_codes[m]
        for subset in itertools.combinations(range(g.n), m):
            if induced_code(rows, subset) in codes:
                return True
    return False


def is_forbidden_incremental(g: Graph, fam: ForbiddenFamily, v_new: int) -> bool:
    """is_forbidden(g, fam), assuming g minus v_new is already clean.

    Only subsets through v_new are enumerated, which is what makes the
    one-vertex-at-a-time search filter affordable.
    """
    if not 0 <= v_new < g.n:
        raise ValueError(f"vertex {v_new} outside 0..{g.n - 1}")
    rows = g.rows()
    others = [v for v in range(g.n) if v != v_new]
    for m in fam.sizes:
        if m > g.n:
            break
        codes = fam.bad_codes[m]
        for rest in itertools.combinations(others, m - 1):
            subset = sorted(rest + (v_new,))
            if induced_code(rows, subset) in codes:
                return True
    return False
