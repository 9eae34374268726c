"""Bound tables, exact tiny-n threshold search, link-configuration
classification, and partition recovery.

``c2_exact`` computes, by exhaustion, the largest minimum codegree among
n-vertex hosts in which some vertex lies in no copy of the pattern.  Two
engines share the contract: a vectorized full scan of all edge bitmaps
(n <= 6) and a depth-first search over bitmap prefixes with per-pair
counters and descending-target pruning (n <= 7, budget-bounded).  Reported
values and witnesses are identical across engines, worker counts, and
pruning toggles; witnesses are the numerically least edge bitmap among
optimal ones.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Optional

import numpy as np

from .core import Hypergraph3, canonical_key, triple_rank, pair_rank
from .constructions import ConstructionClaims, Tripartition
from .patterns import Pattern, embed_covering, greedy_cover_bound, uncovered_vertices

__all__ = [
    "BoundBracket",
    "SyClass",
    "SearchReport",
    "RecoveredPartition",
    "PartitionDiagnostics",
    "CheckResult",
    "VerificationReport",
    "PAIR_SLOTS",
    "SY_SETS",
    "SY_TRIANGLES",
    "c2_bounds",
    "c2_exact",
    "classify_sy",
    "recover_partition",
    "verify_construction",
    "DEFAULT_SLACK",
]


# -- closed-form bound tables ------------------------------------------------


@dataclass(frozen=True)
class BoundBracket:
    """Lower/upper bounds on the covering codegree threshold at one n."""

    lower: int
    upper: int
    exact: Optional[int] = None
    provenance: Optional[str] = None  # "theorem" or "exhaustive"

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"bracket inverted: [{self.lower}, {self.upper}]")
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise ValueError(f"exact value {self.exact} outside [{self.lower}, {self.upper}]")


def c2_bounds(pat: Pattern, n: int) -> BoundBracket:
    """Best known bracket for the covering codegree threshold of the pattern.

    The exact field is populated only where a closed form pins the value:
    for K4 at n > 98, n === 0 (mod 3) with n >= 6, or n === 1 (mod 3) (the
    bracket collapses); for K4- when n mod 6 is 1, 2 or 5.
    """
    if n < pat.f:
        raise ValueError(f"need n >= {pat.f}")
    name = pat.name
    if name == "K4":
        lower, upper = (2 * n - 5) // 3, (2 * n - 3) // 3
        exact = lower if (n > 98 or n % 3 == 1 or (n % 3 == 0 and n >= 6)) else None
        if exact is not None:
            return BoundBracket(exact, exact, exact, "theorem")
        return BoundBracket(lower, upper)
    if name == "K4-":
        if n >= 7:
            m, r = divmod(n, 6)
            lower = 2 * m - 1 if r == 0 else (2 * m + 1 if r == 5 else 2 * m)
            exact = lower if r in (1, 2, 5) else None
            if exact is not None:
                return BoundBracket(exact, exact, exact, "theorem")
            return BoundBracket(lower, n // 3)
        return BoundBracket(0, n // 3)
    if name == "C5":
        return BoundBracket((n - 3) // 2, n // 2)
    if name == "K5-":
        return BoundBracket((2 * n - 5) // 3, (2 * n - 2) // 3)
    if name == "Fano":
        return BoundBracket(n // 2, (2 * n) // 3)
    if name == "F32":
        return BoundBracket(n // 3 - 1, greedy_cover_bound(pat, n))
    if name.startswith("K") and not name.endswith("-"):
        t = pat.f
        cands = [(2 * n - 5) // 3]
        if (n - 1) % (t - 1) == 0:
            cands.append((t - 2) * ((n - 1) // (t - 1)) - 1)
        s = 2 * t - 5
        if s % 6 in (1, 3) and (n - 1) % s == 0:
            cands.append((2 * t - 6) * ((n - 1) // s) - 1)
        return BoundBracket(max(cands), greedy_cover_bound(pat, n))
    if name.startswith("K") and name.endswith("-"):
        return BoundBracket((2 * n - 5) // 3, greedy_cover_bound(pat, n))
    return BoundBracket(0, greedy_cover_bound(pat, n))


# -- link configurations around a covered triangle ---------------------------

PAIR_SLOTS = ("ab", "ac", "bc", "ax", "bx", "cx")

SY_SETS = {
    "S1a": frozenset({"bx", "cx", "ab", "ac"}),
    "S1b": frozenset({"ax", "cx", "ab", "bc"}),
    "S1c": frozenset({"ax", "bx", "ac", "bc"}),
    "S2a": frozenset({"ab", "ac", "bc", "ax"}),
    "S2b": frozenset({"ab", "ac", "bc", "bx"}),
    "S2c": frozenset({"ab", "ac", "bc", "cx"}),
    "S3": frozenset({"ax", "bx", "cx"}),
}

# adding y on top of any of these completes a K4 through x
SY_TRIANGLES = (
    frozenset({"ab", "ax", "bx"}),
    frozenset({"ac", "ax", "cx"}),
    frozenset({"bc", "bx", "cx"}),
)


@dataclass(frozen=True)
class SyClass:
    """Classification of one outside vertex against an anchored 4-set."""

    label: str
    pairs: frozenset


def _sy_pairs(g: Hypergraph3, a: int, b: int, c: int, x: int, y: int) -> frozenset:
    slot_pairs = {
        "ab": (a, b), "ac": (a, c), "bc": (b, c),
        "ax": (a, x), "bx": (b, x), "cx": (c, x),
    }
    return frozenset(s for s, (p, q) in slot_pairs.items() if g.contains(p, q, y))


def classify_sy(g: Hypergraph3, quad: tuple[int, int, int, int], y: int) -> SyClass:
    """Classify which pairs of the anchored 4-set S={a,b,c,x} make edges with y.

    Preconditions: abx, bcx, acx are edges, abc is not, and y is a fifth
    vertex.  The label is VIOLATION exactly when the observed pair set is not
    contained in any of the seven admissible sets (equivalently, when it
    contains a K4-forcing triangle through x); a full match of one of the
    seven sets earns that set's name, anything smaller is SUBSET_ONLY.
    """
    a, b, c, x = quad
    if len({a, b, c, x, y}) != 5:
        raise ValueError("a, b, c, x, y must be five distinct vertices")
    for v in (a, b, c, x, y):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    if not (g.contains(a, b, x) and g.contains(b, c, x) and g.contains(a, c, x)):
        raise ValueError("the three pairs of {a,b,c} must all make edges with x")
    if g.contains(a, b, c):
        raise ValueError("abc must not be an edge")
    sy = _sy_pairs(g, a, b, c, x, y)
    if not any(sy <= s for s in SY_SETS.values()):
        return SyClass("VIOLATION", sy)
    for label, s in SY_SETS.items():
        if sy == s:
            return SyClass(label, sy)
    return SyClass("SUBSET_ONLY", sy)


# -- exact exhaustive search --------------------------------------------------


@dataclass(frozen=True)
class SearchReport:
    """Result of an exhaustive (or budget-truncated) threshold search."""

    pattern: str
    n: int
    value: Optional[int]
    witness: Optional[Hypergraph3]
    uncovered_vertex: Optional[int]
    graphs_scanned: int
    exhaustive: bool
    engine: str
    wall_ms: Optional[float] = None
    note: Optional[str] = None


_POP16: Optional[np.ndarray] = None


def _pop16() -> np.ndarray:
    global _POP16
    if _POP16 is None:
        _POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)
    return _POP16


def _cover_masks(n: int, pat: Pattern) -> list[list[int]]:
    # masks[x]: every edge bitmap whose presence puts a pattern copy through x
    edge_list = pat.edge_list()
    masks: list[set[int]] = [set() for _ in range(n)]
    for img in permutations(range(n), pat.f):
        m = 0
        for e in edge_list:
            m |= 1 << triple_rank(img[e[0]], img[e[1]], img[e[2]])
        for v in img:
            masks[v].add(m)
    return [sorted(s) for s in masks]


def _pair_triple_masks(n: int) -> list[int]:
    masks = [0] * comb(n, 2)
    for t in combinations(range(n), 3):
        r = triple_rank(*t)
        for u, v in combinations(t, 2):
            masks[pair_rank(u, v)] |= 1 << r
    return masks


def _scan_chunk(lo: int, hi: int, n: int, pair_masks, cover_masks):
    pop = _pop16()
    vals = np.arange(lo, hi, dtype=np.int64)
    mincod = np.full(vals.shape, 255, dtype=np.uint8)
    for pm in pair_masks:
        t = vals & pm
        pc = pop[t & 0xFFFF] + pop[(t >> 16) & 0xFFFF]
        np.minimum(mincod, pc, out=mincod)
    uncovered = np.zeros(vals.shape, dtype=bool)
    for x in range(n):
        cov = np.zeros(vals.shape, dtype=bool)
        for m in cover_masks[x]:
            cov |= (vals & m) == m
        uncovered |= ~cov
    if not uncovered.any():
        return None
    best = int(mincod[uncovered].max())
    first = int(np.nonzero(uncovered & (mincod == best))[0][0])
    return best, lo + first


def _scan_engine(pat: Pattern, n: int, workers: int, deadline: Optional[float]):
    m = comb(n, 3)
    total = 1 << m
    pair_masks = _pair_triple_masks(n)
    cover_masks = _cover_masks(n, pat)
    chunk = min(total, 1 << 18)
    ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]

    results = []
    scanned = 0
    timed_out = False
    if workers > 1 and len(ranges) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_scan_chunk, lo, hi, n, pair_masks, cover_masks) for lo, hi in ranges]
            for (lo, hi), fut in zip(ranges, futs):
                if deadline is not None and time.monotonic() > deadline:
                    timed_out = True
                    for rest in futs:
                        rest.cancel()
                    break
                results.append(fut.result())
                scanned += hi - lo
    else:
        for lo, hi in ranges:
            if deadline is not None and time.monotonic() > deadline:
                timed_out = True
                break
            results.append(_scan_chunk(lo, hi, n, pair_masks, cover_masks))
            scanned += hi - lo

    best_val, best_bits = None, None
    for res in results:
        if res is None:
            continue
        val, bits = res
        if best_val is None or val > best_val or (val == best_val and bits < best_bits):
            best_val, best_bits = val, bits
    return best_val, best_bits, scanned, not timed_out


class _BudgetExceeded(Exception):
    pass


class _DfsStats:
    __slots__ = ("nodes", "leaves")

    def __init__(self):
        self.nodes = 0
        self.leaves = 0


def _first_uncovered(g: Hypergraph3, pat: Pattern) -> Optional[int]:
    for x in range(g.n):
        if embed_covering(g, x, pat) is None:
            return x
    return None


def _dfs_feasible(pat, n, target, deadline, iso_cache, stats):
    # visits exactly the bitmaps whose every pair reaches the target codegree,
    # in increasing numeric order; returns the first with an uncovered vertex
    m = comb(n, 3)
    pair_ids: list[tuple[int, ...]] = [()] * m
    for t in combinations(range(n), 3):
        pair_ids[triple_rank(*t)] = tuple(pair_rank(u, v) for u, v in combinations(t, 2))
    counts = [0] * comb(n, 2)
    remaining = [n - 2] * comb(n, 2)

    def rec(rank: int, bits: int) -> Optional[int]:
        stats.nodes += 1
        if deadline is not None and stats.nodes % 4096 == 0 and time.monotonic() > deadline:
            raise _BudgetExceeded
        if rank < 0:
            stats.leaves += 1
            g = Hypergraph3(n, bits)
            if iso_cache is None:
                feasible = _first_uncovered(g, pat) is not None
            else:
                key = canonical_key(g)
                feasible = iso_cache.get(key)
                if feasible is None:
                    feasible = _first_uncovered(g, pat) is not None
                    iso_cache[key] = feasible
            return bits if feasible else None
        ps = pair_ids[rank]
        ok = True
        for p in ps:
            remaining[p] -= 1
            if counts[p] + remaining[p] < target:
                ok = False
        found = rec(rank - 1, bits) if ok else None
        if found is not None:
            for p in ps:
                remaining[p] += 1
            return found
        for p in ps:
            counts[p] += 1
        found = rec(rank - 1, bits | (1 << rank))
        for p in ps:
            counts[p] -= 1
            remaining[p] += 1
        return found

    return rec(m - 1, 0)


def _dfs_engine(pat: Pattern, n: int, prune_iso: bool, deadline: Optional[float]):
    iso_cache: Optional[dict] = {} if prune_iso else None
    stats = _DfsStats()
    for target in range(n - 2, -1, -1):
        try:
            bits = _dfs_feasible(pat, n, target, deadline, iso_cache, stats)
        except _BudgetExceeded:
            note = f"budget exhausted while testing target {target}; value <= {target}"
            return None, None, stats.leaves, False, note
        if bits is not None:
            return target, bits, stats.leaves, True, None
    raise RuntimeError("descent fell through; the empty host is always feasible")


def c2_exact(
    pat: Pattern,
    n: int,
    budget_seconds: Optional[float] = None,
    workers: int = 1,
    prune_iso: Optional[bool] = None,
    engine: str = "auto",
) -> SearchReport:
    """Exact covering codegree threshold at one n, by exhaustion.

    Raw scan mode handles hosts whose bitmap fits in 20 bits (n <= 6); n = 7
    runs the pruned depth-first engine, subject to the budget.  A budget
    overrun yields a report flagged non-exhaustive, never presented as exact.
    """
    if n < pat.f:
        raise ValueError(f"need n >= {pat.f}")
    if engine == "auto":
        engine = "scan" if comb(n, 3) <= 20 else "dfs"
    if engine == "scan" and comb(n, 3) > 20:
        raise ValueError("scan engine handles at most 20 triples (n <= 6)")
    if engine == "dfs" and n > 7:
        raise ValueError("dfs engine handles n <= 7")
    if engine not in ("scan", "dfs"):
        raise ValueError(f"unknown engine {engine!r}")
    if prune_iso is None:
        prune_iso = engine == "dfs" and n == 7

    t0 = time.monotonic()
    deadline = t0 + budget_seconds if budget_seconds is not None else None
    note = None
    if engine == "scan":
        value, bits, scanned, exhaustive = _scan_engine(pat, n, workers, deadline)
        if not exhaustive:
            note = "budget exhausted during scan"
    else:
        value, bits, scanned, exhaustive, note = _dfs_engine(pat, n, prune_iso, deadline)
    wall_ms = (time.monotonic() - t0) * 1000.0

    witness = None
    uncovered_vertex = None
    if bits is not None:
        witness = Hypergraph3(n, bits)
        unc = uncovered_vertices(witness, pat)
        if not unc or witness.min_codegree() != value:
            raise RuntimeError("internal error: witness failed re-verification")
        uncovered_vertex = unc[0]
    return SearchReport(
        pattern=pat.name,
        n=n,
        value=value if exhaustive else (value if bits is not None else None),
        witness=witness,
        uncovered_vertex=uncovered_vertex,
        graphs_scanned=scanned,
        exhaustive=exhaustive,
        engine=engine,
        wall_ms=wall_ms,
        note=note,
    )


# -- partition recovery -------------------------------------------------------

DEFAULT_SLACK = Fraction(1, 429)


@dataclass(frozen=True)
class PartitionDiagnostics:
    """Measured violation counts against the stability conditions."""

    within_part_link: int        # (i)  apex triples inside one part
    missing_cross_link: int      # (ii) absent apex triples across parts
    tripartite_edges: int        # (iii) present all-three-parts triples
    missing_two_part: int        # (iv) absent two-parts triples
    sizes: tuple[int, ...]
    max_size_deviation: Fraction  # (v) max | |V_i| - (n-1)/3 |


@dataclass(frozen=True)
class RecoveredPartition:
    partition: Tripartition
    seed_triangle: tuple[int, int, int]
    bucket_sizes: tuple[int, int, int]
    diagnostics: PartitionDiagnostics
    slack: Fraction
    guarantee_applies: bool


def recover_partition(
    g: Hypergraph3, x: int, slack: Fraction = DEFAULT_SLACK
) -> Optional[RecoveredPartition]:
    """Recover a planted apex tripartition from the link structure at x.

    Takes the lexicographically first triangle {ab, bc, ac} in the link of x,
    buckets outside vertices by exact matches of the three size-4 link
    configurations, then reads off the parts as the vertices whose joint
    neighbourhood with x avoids one bucket.  Returns None when no triangle
    exists or the three candidate sets fail to partition the non-apex
    vertices.  Diagnostics are measured, not assumed.
    """
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    link = g.link_graph(x)
    tri = link.first_triangle()
    if tri is None:
        return None
    a, b, c = tri
    buckets = {"S1a": {a}, "S1b": {b}, "S1c": {c}}
    for y in range(g.n):
        if y in (a, b, c, x):
            continue
        sy = _sy_pairs(g, a, b, c, x, y)
        for label in ("S1a", "S1b", "S1c"):
            if sy == SY_SETS[label]:
                buckets[label].add(y)
                break
    masks = {k: sum(1 << v for v in vs) for k, vs in buckets.items()}
    parts: list[list[int]] = [[], [], []]
    for y in range(g.n):
        if y == x:
            continue
        hits = [
            i
            for i, label in enumerate(("S1a", "S1b", "S1c"))
            if g.pair_mask(x, y) & masks[label] == 0
        ]
        if len(hits) != 1:
            return None
        parts[hits[0]].append(y)
    part_tuple = tuple(tuple(p) for p in parts)
    diagnostics = _measure_partition(g, x, part_tuple)
    dmin = Fraction(g.min_codegree())
    guarantee = slack <= DEFAULT_SLACK and dmin >= (Fraction(2, 3) - slack) * g.n
    return RecoveredPartition(
        partition=Tripartition(apex=x, parts=part_tuple),
        seed_triangle=(a, b, c),
        bucket_sizes=tuple(len(buckets[k]) for k in ("S1a", "S1b", "S1c")),
        diagnostics=diagnostics,
        slack=slack,
        guarantee_applies=guarantee,
    )


def _measure_partition(g: Hypergraph3, x: int, parts) -> PartitionDiagnostics:
    within = 0
    for part in parts:
        for u, v in combinations(part, 2):
            if g.contains(x, u, v):
                within += 1
    missing_cross = 0
    for i, j in combinations(range(3), 2):
        for u in parts[i]:
            for v in parts[j]:
                if not g.contains(x, u, v):
                    missing_cross += 1
    tripartite = 0
    for u in parts[0]:
        for v in parts[1]:
            for w in parts[2]:
                if g.contains(u, v, w):
                    tripartite += 1
    missing_two = 0
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            for u, v in combinations(parts[i], 2):
                for w in parts[j]:
                    if not g.contains(u, v, w):
                        missing_two += 1
    sizes = tuple(len(p) for p in parts)
    third = Fraction(g.n - 1, 3)
    dev = max(abs(Fraction(s) - third) for s in sizes) if sizes else Fraction(0)
    return PartitionDiagnostics(
        within_part_link=within,
        missing_cross_link=missing_cross,
        tripartite_edges=tripartite,
        missing_two_part=missing_two,
        sizes=sizes,
        max_size_deviation=dev,
    )


# -- claims verification ------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: object
    measured: object
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    ok: bool

    def as_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "expected": c.expected,
                    "measured": c.measured,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
        }


def verify_construction(
    g: Hypergraph3, claims: ConstructionClaims, pat: Pattern
) -> VerificationReport:
    """Re-measure every claim the generator made: codegree, coverage, layout."""
    checks = []
    measured = g.min_codegree()
    checks.append(
        CheckResult("min_codegree", claims.min_codegree, measured, measured == claims.min_codegree)
    )
    seen = set()
    valid_layout = claims.n == g.n
    for part in claims.partition.parts:
        for v in part:
            valid_layout &= 0 <= v < g.n and v not in seen
            seen.add(v)
    if claims.partition.apex is not None:
        valid_layout &= claims.partition.apex not in seen
        seen.add(claims.partition.apex)
    valid_layout &= len(seen) == g.n
    checks.append(
        CheckResult("partition", "valid", "valid" if valid_layout else "invalid", valid_layout)
    )
    for v in claims.uncovered:
        covered = embed_covering(g, v, pat) is not None
        checks.append(
            CheckResult(f"uncovered:{v}", "uncovered", "covered" if covered else "uncovered", not covered)
        )
    return VerificationReport(tuple(checks), all(c.passed for c in checks))
