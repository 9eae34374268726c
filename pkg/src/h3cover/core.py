"""3-uniform hypergraphs on vertices 0..n-1 with bitmap edge storage.

The edge set of a graph is a single Python integer: bit ``rank({a<b<c})`` is
set exactly when the triple is an edge, where

    rank({a<b<c}) = a + C(b,2) + C(c,3)

is the colexicographic rank, so {0,1,2} is bit 0 and {n-3,n-2,n-1} is bit
C(n,3)-1.  Graphs are immutable after construction and safe to share across
threads; derived views (per-pair neighbour masks, link graphs) are cached
lazily and never escape as mutable state.

Two interchangeable text encodings are supported by ``dumps_h3``/``loads_h3``:

* edge-list form: a header line ``n m`` followed by m lines ``a b c`` with
  0-based vertices ascending within each line.  ``#`` starts a comment and
  blank lines are ignored.  Edges are written in colex order.
* hex form: a header line ``n: <vertices>`` followed by the raw edge bitmap
  as a hex string (most significant digits first; may wrap over lines).

Both forms round-trip bit-exactly.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "Hypergraph3",
    "LinkGraph",
    "build",
    "canonical_key",
    "edit_distance",
    "triple_rank",
    "triple_unrank",
    "pair_rank",
    "dumps_h3",
    "loads_h3",
    "write_h3",
    "load_h3",
    "EXACT_MODE_CAP",
]

# Largest vertex count for which whole-group operations (canonical keys,
# exact edit distance) enumerate all n! relabelings.
EXACT_MODE_CAP = 8


def triple_rank(a: int, b: int, c: int) -> int:
    """Colex rank of the triple {a,b,c}; the arguments may come in any order."""
    if a == b or a == c or b == c:
        raise ValueError(f"triple has a repeated vertex: {(a, b, c)}")
    a, b, c = sorted((a, b, c))
    if a < 0:
        raise ValueError(f"negative vertex in triple: {(a, b, c)}")
    return a + comb(b, 2) + comb(c, 3)


def triple_unrank(rank: int) -> tuple[int, int, int]:
    """Inverse of :func:`triple_rank`: the sorted triple with the given rank."""
    if rank < 0:
        raise ValueError("rank must be non-negative")
    c = 2
    while comb(c + 1, 3) <= rank:
        c += 1
    rest = rank - comb(c, 3)
    b = 1
    while comb(b + 1, 2) <= rest:
        b += 1
    a = rest - comb(b, 2)
    return a, b, c


def pair_rank(u: int, v: int) -> int:
    """Colex rank of the unordered pair {u,v}."""
    if u == v:
        raise ValueError(f"pair has a repeated vertex: {(u, v)}")
    u, v = (u, v) if u < v else (v, u)
    if u < 0:
        raise ValueError(f"negative vertex in pair: {(u, v)}")
    return u + comb(v, 2)


class Hypergraph3:
    """An immutable 3-graph: a vertex count and an edge bitmap."""

    __slots__ = ("n", "bits", "_pair_masks")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if bits < 0 or bits >> comb(n, 3):
            raise ValueError(f"edge bitmap does not fit in {comb(n, 3)} bits")
        self.n = n
        self.bits = bits
        self._pair_masks: Optional[list[int]] = None

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Sequence[int]]) -> "Hypergraph3":
        bits = 0
        for t in triples:
            if len(t) != 3:
                raise ValueError(f"not a triple: {tuple(t)}")
            a, b, c = t
            if len({a, b, c}) != 3:
                raise ValueError(f"triple has a repeated vertex: {tuple(t)}")
            if not all(0 <= v < n for v in (a, b, c)):
                raise ValueError(f"vertex out of range 0..{n - 1}: {tuple(t)}")
            bits |= 1 << triple_rank(a, b, c)
        return cls(n, bits)

    # -- basic queries ----------------------------------------------------

    def contains(self, a: int, b: int, c: int) -> bool:
        """Edge membership; invariant under permutation of the arguments."""
        if len({a, b, c}) != 3 or not all(0 <= v < self.n for v in (a, b, c)):
            raise ValueError(f"not a valid triple on {self.n} vertices: {(a, b, c)}")
        return (self.bits >> triple_rank(a, b, c)) & 1 == 1

    @property
    def num_edges(self) -> int:
        return self.bits.bit_count()

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Edges as sorted triples, in colex (ascending rank) order."""
        b = self.bits
        while b:
            r = (b & -b).bit_length() - 1
            yield triple_unrank(r)
            b &= b - 1

    def _masks(self) -> list[int]:
        # pair-rank indexed vertex bitmaps: bit w of entry {u,v} <=> uvw is an edge
        if self._pair_masks is None:
            masks = [0] * comb(self.n, 2)
            for a, b, c in self.edges():
                masks[a + comb(b, 2)] |= 1 << c
                masks[a + comb(c, 2)] |= 1 << b
                masks[b + comb(c, 2)] |= 1 << a
            self._pair_masks = masks
        return self._pair_masks

    def pair_mask(self, u: int, v: int) -> int:
        """Vertex bitmap of the joint neighbourhood of the pair {u,v}."""
        self._check_pair(u, v)
        return self._masks()[pair_rank(u, v)]

    def codegree(self, u: int, v: int) -> int:
        """Number of edges containing both u and v."""
        return self.pair_mask(u, v).bit_count()

    def neighborhood(self, u: int, v: int) -> tuple[int, ...]:
        """Sorted vertices w such that uvw is an edge."""
        return tuple(_iter_bits(self.pair_mask(u, v)))

    def degree(self, x: int) -> int:
        """Number of edges containing x."""
        self._check_vertex(x)
        return sum(self.codegree(x, u) for u in range(self.n) if u != x) // 2

    def min_codegree(self) -> int:
        """Minimum codegree over all pairs; 0 when there are no pairs."""
        if self.n < 2:
            return 0
        masks = self._masks()
        return min(m.bit_count() for m in masks)

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(self.degree(x) for x in range(self.n))

    def link_graph(self, x: int) -> "LinkGraph":
        self._check_vertex(x)
        pair_bits = 0
        for a, b, c in self.edges():
            if x == a:
                pair_bits |= 1 << pair_rank(b, c)
            elif x == b:
                pair_bits |= 1 << pair_rank(a, c)
            elif x == c:
                pair_bits |= 1 << pair_rank(a, b)
        return LinkGraph(self.n, x, pair_bits)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        """True iff no triple inside the given vertex set is an edge."""
        vs = sorted(set(vertices))
        if vs and (vs[0] < 0 or vs[-1] >= self.n):
            raise ValueError("vertex out of range")
        return not any(self.contains(a, b, c) for a, b, c in combinations(vs, 3))

    def complement(self) -> "Hypergraph3":
        full = (1 << comb(self.n, 3)) - 1
        return Hypergraph3(self.n, full & ~self.bits)

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Hypergraph3)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self.n}, edges={self.num_edges})"

    def _check_vertex(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise ValueError(f"vertex {x} out of range 0..{self.n - 1}")

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"pair has a repeated vertex: {(u, v)}")
        self._check_vertex(u)
        self._check_vertex(v)


class LinkGraph:
    """The pairs uv with uvx an edge of the owning graph, as a pair bitmap."""

    __slots__ = ("n", "x", "bits", "_adj")

    def __init__(self, n: int, x: int, bits: int = 0):
        self.n = n
        self.x = x
        self.bits = bits
        self._adj: Optional[list[int]] = None

    def contains(self, u: int, v: int) -> bool:
        return (self.bits >> pair_rank(u, v)) & 1 == 1

    def pairs(self) -> Iterator[tuple[int, int]]:
        b = self.bits
        while b:
            r = (b & -b).bit_length() - 1
            v = 1
            while comb(v + 1, 2) <= r:
                v += 1
            yield r - comb(v, 2), v
            b &= b - 1

    def _adjacency(self) -> list[int]:
        if self._adj is None:
            adj = [0] * self.n
            for u, v in self.pairs():
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            self._adj = adj
        return self._adj

    def adjacency_mask(self, u: int) -> int:
        return self._adjacency()[u]

    def degree(self, u: int) -> int:
        """Neighbour count of u; equals the codegree of x and u in the owner."""
        return self._adjacency()[u].bit_count()

    @property
    def num_pairs(self) -> int:
        return self.bits.bit_count()

    def first_triangle(self) -> Optional[tuple[int, int, int]]:
        """Lexicographically first (a,b,c) with all three pairs present."""
        adj = self._adjacency()
        for a in range(self.n):
            for b in _iter_bits(adj[a]):
                if b <= a:
                    continue
                common = adj[a] & adj[b] & -(1 << (b + 1))
                if common:
                    return a, b, (common & -common).bit_length() - 1
        return None

    def __repr__(self) -> str:
        return f"LinkGraph(x={self.x}, pairs={self.num_pairs})"


def build(n: int, triples: Iterable[Sequence[int]]) -> Hypergraph3:
    """Graph on n vertices containing exactly the given triples (deduplicated)."""
    return Hypergraph3.from_triples(n, triples)


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


# -- whole-group operations (n <= EXACT_MODE_CAP) --------------------------

_RANK_PERMS: dict[int, list[tuple[int, ...]]] = {}


def _rank_perm_tables(n: int) -> list[tuple[int, ...]]:
    # one table per vertex permutation, mapping old triple rank -> new rank
    tables = _RANK_PERMS.get(n)
    if tables is None:
        by_rank = [None] * comb(n, 3)
        for t in combinations(range(n), 3):
            by_rank[triple_rank(*t)] = t
        tables = [
            tuple(triple_rank(p[a], p[b], p[c]) for a, b, c in by_rank)
            for p in permutations(range(n))
        ]
        _RANK_PERMS[n] = tables
    return tables


def _permute_bits(bits: int, table: tuple[int, ...]) -> int:
    out = 0
    while bits:
        r = (bits & -bits).bit_length() - 1
        out |= 1 << table[r]
        bits &= bits - 1
    return out


def canonical_key(g: Hypergraph3) -> bytes:
    """Byte string identifying the isomorphism class of g (n <= 8).

    The key is the minimum edge bitmap over all n! vertex relabelings,
    serialized big-endian behind the vertex count.
    """
    if g.n > EXACT_MODE_CAP:
        raise ValueError(f"canonical_key supports n <= {EXACT_MODE_CAP}")
    best = min(_permute_bits(g.bits, t) for t in _rank_perm_tables(g.n))
    width = (comb(g.n, 3) + 7) // 8
    return bytes([g.n]) + best.to_bytes(width, "big")


def edit_distance(g: Hypergraph3, h: Hypergraph3) -> int:
    """Minimum number of edge toggles making g isomorphic to h (exact, n <= 8)."""
    if g.n != h.n:
        raise ValueError("edit distance needs equal vertex counts")
    if g.n > EXACT_MODE_CAP:
        raise ValueError(f"edit_distance supports n <= {EXACT_MODE_CAP}")
    gbits = g.bits
    return min(
        (gbits ^ _permute_bits(h.bits, t)).bit_count()
        for t in _rank_perm_tables(g.n)
    )


# -- serialization ----------------------------------------------------------


def dumps_h3(g: Hypergraph3, fmt: str = "text") -> str:
    if fmt == "text":
        lines = [f"{g.n} {g.num_edges}"]
        lines.extend(f"{a} {b} {c}" for a, b, c in g.edges())
        return "\n".join(lines) + "\n"
    if fmt == "hex":
        width = max(1, (comb(g.n, 3) + 3) // 4)
        return f"n: {g.n}\n{g.bits:0{width}x}\n"
    raise ValueError(f"unknown format {fmt!r} (expected 'text' or 'hex')")


def loads_h3(text: str) -> Hypergraph3:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty .h3 input")
    head = lines[0]
    if head.startswith("n:"):
        n = int(head[2:].strip())
        hexstr = "".join(lines[1:])
        bits = int(hexstr, 16) if hexstr else 0
        return Hypergraph3(n, bits)
    parts = head.split()
    if len(parts) != 2:
        raise ValueError(f"bad header line {head!r}: expected 'n m' or 'n: <count>'")
    n, m = int(parts[0]), int(parts[1])
    if len(lines) - 1 != m:
        raise ValueError(f"header promises {m} edges, found {len(lines) - 1}")
    triples = []
    for line in lines[1:]:
        vs = line.split()
        if len(vs) != 3:
            raise ValueError(f"bad edge line {line!r}")
        triples.append(tuple(int(v) for v in vs))
    return Hypergraph3.from_triples(n, triples)


def write_h3(g: Hypergraph3, path, fmt: str = "text") -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_h3(g, fmt))


def load_h3(path) -> Hypergraph3:
    with open(path, "r", encoding="ascii") as fh:
        return loads_h3(fh.read())
