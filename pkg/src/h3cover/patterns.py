"""Catalog of small target 3-graphs and exact embedding search.

A :class:`Pattern` bundles a small graph F with its degeneracy data: the
largest minimum vertex degree over all subgraphs of F (``r``) and an
elimination ordering witnessing it.  ``r`` governs how many pair constraints
the one-pass greedy embedder ever has to satisfy at once.

Embeddings are subgraph embeddings: an injective vertex map under which every
pattern edge lands on a host edge.  ``embed_covering`` is exhaustive
(backtracking with pair-neighbourhood pruning); ``greedy_embed`` follows the
degeneracy ordering in a single forward pass with no backtracking, so a
failed greedy run is not evidence that no embedding exists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

from .core import Hypergraph3, _iter_bits

__all__ = [
    "Pattern",
    "CATALOG",
    "pattern",
    "pattern_from_graph",
    "degeneracy",
    "greedy_cover_bound",
    "embed_covering",
    "greedy_embed",
    "uncovered_vertices",
    "edge_extendable",
]

# Fixed catalog names accepted on the CLI; STS:t is parameterized on top.
CATALOG = ("K4", "K4-", "K5", "K5-", "C5", "C6", "C7", "Fano", "F32")

_FANO_LINES = tuple(tuple(sorted(((i) % 7, (i + 1) % 7, (i + 3) % 7))) for i in range(7))
_F32_EDGES = ((0, 1, 2), (0, 1, 3), (0, 1, 4), (2, 3, 4))


@dataclass(frozen=True, eq=False)
class Pattern:
    """A named small 3-graph with degeneracy r and elimination ordering."""

    name: str
    graph: Hypergraph3
    f: int
    r: int
    ordering: tuple[int, ...]
    _orders: dict = field(default_factory=dict, repr=False)
    _edge_list: tuple = field(default=(), repr=False)

    def edge_list(self) -> tuple[tuple[int, int, int], ...]:
        return self._edge_list

    def __repr__(self) -> str:
        return f"Pattern({self.name}, f={self.f}, r={self.r})"


def degeneracy(g: Hypergraph3) -> tuple[int, tuple[int, ...]]:
    """Degeneracy r and elimination ordering x_1..x_f of a nonempty 3-graph.

    The ordering is built back to front: x_f has minimum degree in the whole
    graph, x_{f-1} has minimum degree once x_f is deleted, and so on.  Ties
    go to the lowest vertex index.  r is the largest minimum degree seen
    along the way, which equals max over all subgraphs F' of the minimum
    vertex degree of F'.
    """
    if g.num_edges == 0:
        raise ValueError("degeneracy needs at least one edge")
    alive = set(range(g.n))
    edges = list(g.edges())
    order_rev: list[int] = []
    r = 0
    while alive:
        deg = {v: 0 for v in alive}
        for e in edges:
            if all(v in alive for v in e):
                for v in e:
                    deg[v] += 1
        min_deg = min(deg.values())
        r = max(r, min_deg)
        pick = min(v for v, d in deg.items() if d == min_deg)
        order_rev.append(pick)
        alive.remove(pick)
    return r, tuple(reversed(order_rev))


def _catalog_graph(name: str, t: Optional[int]) -> tuple[str, Hypergraph3]:
    m = re.fullmatch(r"K(\d*)(-?)", name)
    if m and (m.group(1) or t is not None):
        size = int(m.group(1)) if m.group(1) else t
        minus = m.group(2) == "-"
        if size is None or size < 4:
            raise ValueError("complete patterns need t >= 4")
        triples = list(permutations(range(size), 3))
        edges = {tuple(sorted(e)) for e in triples}
        if minus:
            edges.discard((size - 3, size - 2, size - 1))
        return (f"K{size}-" if minus else f"K{size}"), Hypergraph3.from_triples(size, edges)
    m = re.fullmatch(r"C(\d*)", name)
    if m and (m.group(1) or t is not None):
        size = int(m.group(1)) if m.group(1) else t
        if size is None or size < 5:
            raise ValueError("tight cycles need t >= 5")
        edges = [tuple(sorted((i % size, (i + 1) % size, (i + 2) % size))) for i in range(size)]
        return f"C{size}", Hypergraph3.from_triples(size, edges)
    if name == "Fano":
        return "Fano", Hypergraph3.from_triples(7, _FANO_LINES)
    if name == "F32":
        return "F32", Hypergraph3.from_triples(5, _F32_EDGES)
    m = re.fullmatch(r"STS:?(\d*)", name)
    if m and (m.group(1) or t is not None):
        size = int(m.group(1)) if m.group(1) else t
        from .constructions import steiner

        return f"STS:{size}", steiner(size)
    raise ValueError(f"unknown pattern {name!r}")


_PATTERN_CACHE: dict[str, Pattern] = {}


def pattern(name: str, t: Optional[int] = None) -> Pattern:
    """Catalog lookup: K<t>, K<t>-, C<t> (tight), Fano, F32, STS:<t>.

    Accepts either a fully spelled name (``pattern("K4-")``) or a family name
    plus size (``pattern("K-", 4)``).
    """
    canonical, graph = _catalog_graph(name, t)
    cached = _PATTERN_CACHE.get(canonical)
    if cached is None:
        cached = pattern_from_graph(canonical, graph)
        _PATTERN_CACHE[canonical] = cached
    return cached


def pattern_from_graph(name: str, graph: Hypergraph3) -> Pattern:
    """Wrap an arbitrary small graph (e.g. one loaded from a .h3 file)."""
    r, ordering = degeneracy(graph)
    pat = Pattern(name=name, graph=graph, f=graph.n, r=r, ordering=ordering)
    object.__setattr__(pat, "_edge_list", tuple(graph.edges()))
    return pat


def greedy_cover_bound(pat: Pattern, n: int) -> int:
    """floor((1 - 1/r) n + (f - 2r - 1)/r), evaluated in exact integers.

    Any n-vertex host whose minimum codegree exceeds this value has every
    vertex (indeed every edge) covered by a copy of the pattern.
    """
    if n < pat.f:
        raise ValueError(f"host must have at least f={pat.f} vertices")
    r = pat.r
    return ((r - 1) * n + pat.f - 2 * r - 1) // r


# -- backtracking embedding -------------------------------------------------


def _search_order(pat: Pattern, anchor: int) -> tuple[tuple[int, tuple], ...]:
    """Static vertex order from `anchor`, most-constrained first.

    Returns per-position (pattern_vertex, constraints) where constraints are
    the pattern edges of that vertex whose other two endpoints appear earlier,
    as pairs of earlier positions.
    """
    key = anchor
    cached = pat._orders.get(key)
    if cached is not None:
        return cached
    edges = pat.edge_list()
    placed = [anchor]
    remaining = set(range(pat.f)) - {anchor}
    while remaining:
        def score(v: int) -> tuple[int, int, int]:
            full = sum(1 for e in edges if v in e and all(u in placed or u == v for u in e))
            touch = sum(1 for e in edges if v in e and any(u in placed for u in e))
            return (full, touch, -v)

        nxt = max(remaining, key=score)
        placed.append(nxt)
        remaining.remove(nxt)
    pos_of = {v: i for i, v in enumerate(placed)}
    plan = []
    for i, v in enumerate(placed):
        cons = []
        for e in edges:
            if v in e:
                others = [u for u in e if u != v]
                if pos_of[others[0]] < i and pos_of[others[1]] < i:
                    cons.append((pos_of[others[0]], pos_of[others[1]]))
        plan.append((v, tuple(cons)))
    plan_t = tuple(plan)
    pat._orders[key] = plan_t
    return plan_t


def _backtrack(host: Hypergraph3, plan, images: list[int], used: int, pos: int) -> bool:
    if pos == len(plan):
        return True
    _, cons = plan[pos]
    if cons:
        cand = (1 << host.n) - 1
        for i, j in cons:
            cand &= host.pair_mask(images[i], images[j])
            if not cand:
                return False
        cand &= ~used
    else:
        cand = ((1 << host.n) - 1) & ~used
    for v in _iter_bits(cand):
        images[pos] = v
        if _backtrack(host, plan, images, used | (1 << v), pos + 1):
            return True
    images[pos] = -1
    return False


def embed_covering(host: Hypergraph3, x: int, pat: Pattern) -> Optional[dict[int, int]]:
    """Some embedding of the pattern whose image contains x, or None.

    Exhaustive: tries every pattern position for x and backtracks over the
    rest, pruning candidates through joint pair neighbourhoods.
    """
    if not 0 <= x < host.n:
        raise ValueError(f"vertex {x} out of range")
    if host.n < pat.f:
        return None
    for anchor in range(pat.f):
        plan = _search_order(pat, anchor)
        images = [-1] * pat.f
        images[0] = x
        if _backtrack(host, plan, images, 1 << x, 1):
            return {plan[i][0]: images[i] for i in range(pat.f)}
    return None


def greedy_embed(host: Hypergraph3, x: int, pat: Pattern) -> Optional[dict[int, int]]:
    """One forward pass along the degeneracy ordering, no backtracking.

    x_1 goes to x; each later vertex takes the lowest-index host vertex lying
    in every joint neighbourhood its (at most r) already-mapped pattern pairs
    demand.  Success implies a genuine embedding; failure implies nothing.
    """
    if not 0 <= x < host.n:
        raise ValueError(f"vertex {x} out of range")
    if host.n < pat.f:
        return None
    order = pat.ordering
    pos_of = {v: i for i, v in enumerate(order)}
    edges = pat.edge_list()
    images: list[int] = [x]
    used = 1 << x
    for i in range(1, pat.f):
        v = order[i]
        cand = (1 << host.n) - 1
        for e in edges:
            if v in e:
                others = [u for u in e if u != v]
                if pos_of[others[0]] < i and pos_of[others[1]] < i:
                    cand &= host.pair_mask(images[pos_of[others[0]]], images[pos_of[others[1]]])
        cand &= ~used
        if not cand:
            return None
        pick = (cand & -cand).bit_length() - 1
        images.append(pick)
        used |= 1 << pick
    return {order[i]: images[i] for i in range(pat.f)}


def uncovered_vertices(host: Hypergraph3, pat: Pattern) -> tuple[int, ...]:
    """Vertices through which no pattern copy passes."""
    return tuple(x for x in range(host.n) if embed_covering(host, x, pat) is None)


def edge_extendable(host: Hypergraph3, e: Sequence[int], pat: Pattern) -> bool:
    """True iff some pattern embedding's image contains all three vertices of e."""
    a, b, c = sorted(e)
    if not host.contains(a, b, c):
        raise ValueError(f"{(a, b, c)} is not an edge of the host")
    if host.n < pat.f:
        return False
    for p, q, s in permutations(range(pat.f), 3):
        plan = _anchored_plan(pat, (p, q, s))
        images = [-1] * pat.f
        images[0], images[1], images[2] = a, b, c
        used = (1 << a) | (1 << b) | (1 << c)
        ok = True
        for pos in range(3):
            for i, j in plan[pos][1]:
                if not host.contains(images[i], images[j], images[pos]):
                    ok = False
                    break
            if not ok:
                break
        if ok and _backtrack(host, plan, images, used, 3):
            return True
    return False


def _anchored_plan(pat: Pattern, anchors: tuple[int, int, int]):
    key = anchors
    cached = pat._orders.get(key)
    if cached is not None:
        return cached
    edges = pat.edge_list()
    placed = list(anchors)
    remaining = set(range(pat.f)) - set(anchors)
    while remaining:
        def score(v: int) -> tuple[int, int, int]:
            full = sum(1 for e in edges if v in e and all(u in placed or u == v for u in e))
            touch = sum(1 for e in edges if v in e and any(u in placed for u in e))
            return (full, touch, -v)

        nxt = max(remaining, key=score)
        placed.append(nxt)
        remaining.remove(nxt)
    pos_of = {v: i for i, v in enumerate(placed)}
    plan = []
    for i, v in enumerate(placed):
        cons = []
        for e in edges:
            if v in e:
                others = [u for u in e if u != v]
                lo, hi = pos_of[others[0]], pos_of[others[1]]
                if lo < i and hi < i:
                    cons.append((lo, hi))
        plan.append((v, tuple(cons)))
    plan_t = tuple(plan)
    pat._orders[key] = plan_t
    return plan_t
