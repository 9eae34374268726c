"""Generators for the lower-bound families.

Every generator returns a graph together with a :class:`ConstructionClaims`
record stating the intended minimum codegree, the vertices the construction
leaves uncovered for its target pattern, and the planted partition.  Claims
are never trusted downstream: the analysis module re-measures all of them.

Layout convention: parts are contiguous index ranges starting at 0 and the
apex (when one exists) is vertex n-1, so planted partitions are recoverable
in tests and serializations are stable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .core import Hypergraph3

__all__ = [
    "Tripartition",
    "AdmissiblePairSet",
    "ConstructionClaims",
    "VARIANT_CASES",
    "f1",
    "f1_variant",
    "admissible_sample",
    "f2",
    "f3",
    "f4",
    "steiner",
    "blow_up",
    "fano_bipartite",
    "f32_tripartite",
]


@dataclass(frozen=True)
class Tripartition:
    """A labeled split of the vertex set: optional apex plus disjoint parts."""

    apex: Optional[int]
    parts: tuple[tuple[int, ...], ...]

    def part_of(self, v: int) -> int:
        for i, p in enumerate(self.parts):
            if v in p:
                return i
        raise ValueError(f"vertex {v} is in no part")

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def as_json(self) -> dict:
        return {"apex": self.apex, "parts": [list(p) for p in self.parts]}


# per-vertex pair-multiplicity caps, by case tag and part index
VARIANT_CASES = {
    "0": (2, 1, 1),
    "1": (1, 1, 1),
    "2": (2, 2, 1),
    "2p": (3, 1, 1),
}

_CASE_RESIDUE = {"0": 0, "1": 1, "2": 2, "2p": 2}


@dataclass(frozen=True)
class AdmissiblePairSet:
    """Cross-part pairs with per-vertex multiplicity caps given by the case."""

    case: str
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.case not in VARIANT_CASES:
            raise ValueError(f"unknown case {self.case!r}; expected one of {sorted(VARIANT_CASES)}")
        object.__setattr__(
            self, "pairs", frozenset(tuple(sorted(p)) for p in self.pairs)
        )

    def validate(self, partition: Tripartition) -> None:
        """Raise ValueError unless every pair is cross-part and under the caps."""
        caps = VARIANT_CASES[self.case]
        counts: dict[int, int] = {}
        for u, v in self.pairs:
            pu, pv = partition.part_of(u), partition.part_of(v)
            if pu == pv:
                raise ValueError(f"pair {(u, v)} joins two vertices of the same part")
            counts[u] = counts.get(u, 0) + 1
            counts[v] = counts.get(v, 0) + 1
        for v, c in counts.items():
            cap = caps[partition.part_of(v)]
            if c > cap:
                raise ValueError(
                    f"vertex {v} occurs in {c} pairs, cap for its part is {cap}"
                )


@dataclass(frozen=True)
class ConstructionClaims:
    """What a generator promises; verified by the analysis module, never assumed."""

    name: str
    n: int
    min_codegree: int
    uncovered: tuple[int, ...]
    partition: Tripartition
    pattern_hint: Optional[str] = None
    params: tuple[tuple[str, int], ...] = ()

    def as_json(self) -> dict:
        return {
            "schema": 1,
            "construction": self.name,
            "n": self.n,
            "min_codegree": self.min_codegree,
            "uncovered": list(self.uncovered),
            "partition": self.partition.as_json(),
            "pattern_hint": self.pattern_hint,
            "params": dict(self.params),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionClaims":
        part = data["partition"]
        return cls(
            name=data["construction"],
            n=data["n"],
            min_codegree=data["min_codegree"],
            uncovered=tuple(data["uncovered"]),
            partition=Tripartition(
                apex=part["apex"], parts=tuple(tuple(p) for p in part["parts"])
            ),
            pattern_hint=data.get("pattern_hint"),
            params=tuple(sorted(data.get("params", {}).items())),
        )


def _contiguous_parts(sizes: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    parts = []
    start = 0
    for s in sizes:
        parts.append(tuple(range(start, start + s)))
        start += s
    return tuple(parts)


def _ascending_sizes(total: int, k: int) -> list[int]:
    base, extra = divmod(total, k)
    return [base] * (k - extra) + [base + 1] * extra


def _descending_sizes(total: int, k: int) -> list[int]:
    base, extra = divmod(total, k)
    return [base + 1] * extra + [base] * (k - extra)


def _part_index(parts: tuple[tuple[int, ...], ...], n: int) -> list[int]:
    idx = [-1] * n
    for i, p in enumerate(parts):
        for v in p:
            idx[v] = i
    return idx


def f1(n: int) -> tuple[Hypergraph3, ConstructionClaims]:
    """Apex over three near-equal parts; nothing completes the apex to a K4.

    The apex link is every cross-part pair; away from the apex every triple
    touching at most two parts is an edge.  Minimum codegree floor((2n-5)/3),
    attained by cross pairs into the two smallest parts.
    """
    if n < 4:
        raise ValueError("f1 needs n >= 4")
    apex = n - 1
    parts = _contiguous_parts(_ascending_sizes(n - 1, 3))
    idx = _part_index(parts, n - 1)
    triples = []
    for a, b, c in combinations(range(n - 1), 3):
        if len({idx[a], idx[b], idx[c]}) <= 2:
            triples.append((a, b, c))
    for i, j in combinations(range(3), 2):
        for u in parts[i]:
            for v in parts[j]:
                triples.append((u, v, apex))
    g = Hypergraph3.from_triples(n, triples)
    claims = ConstructionClaims(
        name="f1",
        n=n,
        min_codegree=(2 * n - 5) // 3,
        uncovered=(apex,),
        partition=Tripartition(apex=apex, parts=parts),
        pattern_hint="K4",
    )
    return g, claims


def _variant_partition(case: str, n: int) -> Tripartition:
    if case not in VARIANT_CASES:
        raise ValueError(f"unknown case {case!r}")
    if n % 3 != _CASE_RESIDUE[case]:
        raise ValueError(f"case {case!r} needs n === {_CASE_RESIDUE[case]} (mod 3), got n={n}")
    m = n // 3
    sizes = {
        "0": (m - 1, m, m),
        "1": (m, m, m),
        "2": (m, m, m + 1),
        "2p": (m - 1, m + 1, m + 1),
    }[case]
    if sizes[0] < 1:
        raise ValueError(f"n={n} too small for case {case!r}")
    return Tripartition(apex=n - 1, parts=_contiguous_parts(sizes))


def f1_variant(
    case: str, pair_set: AdmissiblePairSet, n: int
) -> tuple[Hypergraph3, ConstructionClaims]:
    """The f1 family perturbed by an admissible cross-part pair set.

    For every pair uv in the set, the apex triple through uv is deleted and
    every tripartite triple uvw is added instead.  Admissibility keeps the
    minimum codegree at the f1 value while the apex stays K4-uncovered.
    """
    if pair_set.case != case:
        raise ValueError(f"pair set was built for case {pair_set.case!r}, not {case!r}")
    part = _variant_partition(case, n)
    pair_set.validate(part)
    apex = n - 1
    idx = _part_index(part.parts, n - 1)
    edges = set()
    for a, b, c in combinations(range(n - 1), 3):
        if len({idx[a], idx[b], idx[c]}) <= 2:
            edges.add((a, b, c))
    for i, j in combinations(range(3), 2):
        for u in part.parts[i]:
            for v in part.parts[j]:
                edges.add(tuple(sorted((u, v, apex))))
    for u, v in pair_set.pairs:
        edges.discard(tuple(sorted((u, v, apex))))
        third = 3 - idx[u] - idx[v]
        for w in part.parts[third]:
            edges.add(tuple(sorted((u, v, w))))
    g = Hypergraph3.from_triples(n, edges)
    claims = ConstructionClaims(
        name="f1e" if case != "2p" else "f1p",
        n=n,
        min_codegree=(2 * n - 5) // 3,
        uncovered=(apex,),
        partition=part,
        pattern_hint="K4",
        params=(("pairs", len(pair_set.pairs)),),
    )
    return g, claims


def admissible_sample(case: str, n: int, seed: int = 0) -> AdmissiblePairSet:
    """A seeded random admissible pair set (maximal or a truncation of one)."""
    part = _variant_partition(case, n)
    caps = VARIANT_CASES[case]
    idx = _part_index(part.parts, n - 1)
    rng = random.Random(seed)
    candidates = [
        (u, v)
        for u, v in combinations(range(n - 1), 2)
        if idx[u] != idx[v]
    ]
    rng.shuffle(candidates)
    counts = [0] * (n - 1)
    chosen = []
    for u, v in candidates:
        if counts[u] < caps[idx[u]] and counts[v] < caps[idx[v]]:
            chosen.append((u, v))
            counts[u] += 1
            counts[v] += 1
    keep = rng.randint(0, len(chosen))
    return AdmissiblePairSet(case=case, pairs=frozenset(chosen[:keep]))


def f2(n: int) -> tuple[Hypergraph3, ConstructionClaims]:
    """Apex whose link is the blow-up of a 6-cycle; no K4-minus-an-edge at the apex.

    Away from the apex, a triple is an edge unless its parts form one of the
    consecutive runs (i,i,i+1), (i,i+1,i+1) or (i,i+1,i+2) around the cycle.
    The residue-table codegree claims hold once n >= 12.
    """
    if n < 7:
        raise ValueError("f2 needs n >= 7")
    apex = n - 1
    parts = _contiguous_parts(_descending_sizes(n - 1, 6))
    idx = _part_index(parts, n - 1)
    forbidden = set()
    for i in range(6):
        j, k = (i + 1) % 6, (i + 2) % 6
        forbidden.add(tuple(sorted((i, i, j))))
        forbidden.add(tuple(sorted((i, j, j))))
        forbidden.add(tuple(sorted((i, j, k))))
    triples = []
    for a, b, c in combinations(range(n - 1), 3):
        if tuple(sorted((idx[a], idx[b], idx[c]))) not in forbidden:
            triples.append((a, b, c))
    for i in range(6):
        j = (i + 1) % 6
        for u in parts[i]:
            for v in parts[j]:
                triples.append(tuple(sorted((u, v, apex))))
    g = Hypergraph3.from_triples(n, triples)
    if n >= 12:
        m, r = divmod(n, 6)
        claimed = (2 * m - 1) if r == 0 else (2 * m + 1) if r == 5 else 2 * m
    else:
        claimed = g.min_codegree()
    claims = ConstructionClaims(
        name="f2",
        n=n,
        min_codegree=claimed,
        uncovered=(apex,),
        partition=Tripartition(apex=apex, parts=parts),
        pattern_hint="K4-",
    )
    return g, claims


def f3(n: int) -> tuple[Hypergraph3, ConstructionClaims]:
    """Apex whose link is two disjoint cliques; no tight 5-cycle at the apex.

    Away from the apex every triple meeting both halves is an edge.  Minimum
    codegree floor((n-3)/2), attained by the apex with a smallest-part vertex.
    """
    if n < 5:
        raise ValueError("f3 needs n >= 5")
    apex = n - 1
    parts = _contiguous_parts(_ascending_sizes(n - 1, 2))
    idx = _part_index(parts, n - 1)
    triples = []
    for a, b, c in combinations(range(n - 1), 3):
        if len({idx[a], idx[b], idx[c]}) == 2:
            triples.append((a, b, c))
    for part in parts:
        for u, v in combinations(part, 2):
            triples.append((u, v, apex))
    g = Hypergraph3.from_triples(n, triples)
    claims = ConstructionClaims(
        name="f3",
        n=n,
        min_codegree=(n - 3) // 2,
        uncovered=(apex,),
        partition=Tripartition(apex=apex, parts=parts),
        pattern_hint="C5",
    )
    return g, claims


def f4(n: int) -> tuple[Hypergraph3, ConstructionClaims]:
    """Parity family: edges are the triples meeting the first half evenly.

    No apex: every vertex of the first half is left uncovered by tight
    5-cycles (a copy would need an even trace on the first half at each of
    its edges, which forces it entirely into the second half).
    """
    if n < 5:
        raise ValueError("f4 needs n >= 5")
    half = n // 2
    parts = _contiguous_parts((half, n - half))
    triples = []
    for a, b, c in combinations(range(n), 3):
        inside = (a < half) + (b < half) + (c < half)
        if inside % 2 == 0:
            triples.append((a, b, c))
    g = Hypergraph3.from_triples(n, triples)
    claims = ConstructionClaims(
        name="f4",
        n=n,
        min_codegree=(n - 3) // 2,
        uncovered=parts[0],
        partition=Tripartition(apex=None, parts=parts),
        pattern_hint="C5",
    )
    return g, claims


def steiner(t: int) -> Hypergraph3:
    """A Steiner triple system on t vertices (every pair codegree exactly 1).

    Feasible iff t === 1 or 3 (mod 6).  Uses the classical quasigroup
    constructions: three levels over an odd cyclic group when t === 3 (mod 6),
    and the half-idempotent variant with a point at infinity when
    t === 1 (mod 6).  Deterministic, O(t^2) triples.
    """
    if t < 3 or t % 6 not in (1, 3):
        raise ValueError(f"no Steiner triple system on {t} vertices (need t === 1,3 mod 6)")
    if t % 6 == 3:
        k = (t - 3) // 6
        q = 2 * k + 1
        half = k + 1  # multiplicative inverse of 2 mod q
        vid = lambda i, lvl: 3 * i + lvl
        triples = [(vid(i, 0), vid(i, 1), vid(i, 2)) for i in range(q)]
        for i, j in combinations(range(q), 2):
            w = ((i + j) * half) % q
            for lvl in range(3):
                triples.append((vid(i, lvl), vid(j, lvl), vid(w, (lvl + 1) % 3)))
        return Hypergraph3.from_triples(t, triples)
    k = (t - 1) // 6
    q = 2 * k
    inf = t - 1
    vid = lambda i, lvl: 3 * i + lvl

    def op(i: int, j: int) -> int:
        s = (i + j) % q
        return s // 2 if s % 2 == 0 else k + (s - 1) // 2

    triples = [(vid(i, 0), vid(i, 1), vid(i, 2)) for i in range(k)]
    for i in range(k):
        for lvl in range(3):
            triples.append((inf, vid(i + k, lvl), vid(i, (lvl + 1) % 3)))
    for i, j in combinations(range(q), 2):
        w = op(i, j)
        for lvl in range(3):
            triples.append((vid(i, lvl), vid(j, lvl), vid(w, (lvl + 1) % 3)))
    return Hypergraph3.from_triples(t, triples)


def _clique_number(h: Hypergraph3) -> int:
    for size in range(h.n, 2, -1):
        for s in combinations(range(h.n), size):
            if all(h.contains(a, b, c) for a, b, c in combinations(s, 3)):
                return size
    return min(h.n, 2)


def blow_up(h: Hypergraph3, factor: int) -> tuple[Hypergraph3, ConstructionClaims]:
    """Replace each vertex of h by a part of the given size and add an apex.

    The apex link is every cross-part pair; cross-part triples follow the
    edges of h; every triple hitting some part twice is an edge.  Minimum
    codegree (min_codegree(h) + 2) * factor - 1 (measured, not trusted as an
    input).  The apex misses every complete pattern two larger than the
    biggest clique of h.
    """
    if factor < 1:
        raise ValueError("part size must be >= 1")
    if h.n < 3 or h.num_edges == 0:
        raise ValueError("base graph must be nonempty on >= 3 vertices")
    m = h.n
    n = factor * m + 1
    apex = n - 1
    parts = _contiguous_parts([factor] * m)
    idx = _part_index(parts, n - 1)
    triples = []
    for a, b, c in combinations(range(n - 1), 3):
        pa, pb, pc = idx[a], idx[b], idx[c]
        if len({pa, pb, pc}) < 3 or h.contains(pa, pb, pc):
            triples.append((a, b, c))
    for i, j in combinations(range(m), 2):
        for u in parts[i]:
            for v in parts[j]:
                triples.append((u, v, apex))
    g = Hypergraph3.from_triples(n, triples)
    claims = ConstructionClaims(
        name="blowup",
        n=n,
        min_codegree=(h.min_codegree() + 2) * factor - 1,
        uncovered=(apex,),
        partition=Tripartition(apex=apex, parts=parts),
        pattern_hint=f"K{_clique_number(h) + 2}",
        params=(("factor", factor), ("base_n", m)),
    )
    return g, claims


def fano_bipartite(n: int) -> tuple[Hypergraph3, ConstructionClaims]:
    """All triples meeting both halves of a balanced bipartition.

    Two-colourable, hence free of any 7-point triple system; nothing is
    covered.  Minimum codegree floor(n/2), attained inside the larger half.
    """
    if n < 7:
        raise ValueError("fano_bipartite needs n >= 7")
    half = n // 2
    parts = _contiguous_parts((half, n - half))
    triples = [
        (a, b, c)
        for a, b, c in combinations(range(n), 3)
        if a < half and c >= half
    ]
    g = Hypergraph3.from_triples(n, triples)
    claims = ConstructionClaims(
        name="fano2",
        n=n,
        min_codegree=n // 2,
        uncovered=tuple(range(n)),
        partition=Tripartition(apex=None, parts=parts),
        pattern_hint="Fano",
    )
    return g, claims


def f32_tripartite(n: int) -> tuple[Hypergraph3, ConstructionClaims]:
    """Cyclic tripartite family: edges are the (i,i,i+1) part patterns.

    Free of the 5-vertex pattern with a dominated pair, so nothing is
    covered.  Minimum codegree floor(n/3) - 1.
    """
    if n < 5:
        raise ValueError("f32_tripartite needs n >= 5")
    parts = _contiguous_parts(_ascending_sizes(n, 3))
    idx = _part_index(parts, n)
    allowed = {tuple(sorted((i, i, (i + 1) % 3))) for i in range(3)}
    triples = [
        (a, b, c)
        for a, b, c in combinations(range(n), 3)
        if tuple(sorted((idx[a], idx[b], idx[c]))) in allowed
    ]
    g = Hypergraph3.from_triples(n, triples)
    claims = ConstructionClaims(
        name="f32tri",
        n=n,
        min_codegree=n // 3 - 1,
        uncovered=tuple(range(n)),
        partition=Tripartition(apex=None, parts=parts),
        pattern_hint="F32",
    )
    return g, claims
