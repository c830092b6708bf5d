"""Simple graphs with the operations the rest of the package is built on.

Vertices are integers 0..n-1 with display labels kept alongside.  Adjacency
is stored as one bitmask per vertex, which keeps vertex-cover enumeration
and the subgraph recursions elsewhere in the package cheap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from .errors import InputError

__all__ = [
    "Graph",
    "WhiskerMap",
    "ChordalityResult",
    "RemainderClass",
    "induced_subgraph",
    "delete_vertices",
    "add_whiskers",
    "is_chordal",
    "classify_remainder",
    "vertex_covers_of_size",
    "minimal_vertex_covers",
    "is_unmixed",
    "parse_graph",
    "format_graph",
    "cycle_graph",
    "path_graph",
]


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _key(mask: int) -> tuple:
    return tuple(_bits(mask))


class Graph:
    """Immutable simple graph (no loops, no multiple edges)."""

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, edges=(), labels=None):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        if labels is None:
            labels = tuple(f"x{i + 1}" for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise InputError("label count does not match vertex count")
        self.labels = labels

    @classmethod
    def _from_adj(cls, adj: tuple, labels: tuple) -> "Graph":
        g = object.__new__(cls)
        g.n = len(adj)
        g.adj = adj
        g.labels = labels
        return g

    def edges(self) -> tuple:
        out = []
        for u in range(self.n):
            for v in _bits(self.adj[u]):
                if u < v:
                    out.append((u, v))
        return tuple(out)

    def edge_count(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def neighbors(self, v: int) -> frozenset:
        return frozenset(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def isolated_vertices(self) -> frozenset:
        return frozenset(v for v in range(self.n) if self.adj[v] == 0)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.labels == other.labels

    def __hash__(self):
        return hash((self.n, self.adj, self.labels))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges())})"

    def _check_vertices(self, vertices) -> int:
        mask = 0
        for v in vertices:
            if not (0 <= v < self.n):
                raise InputError(f"vertex {v} out of range for n={self.n}")
            mask |= 1 << v
        return mask


@dataclass(frozen=True)
class WhiskerMap:
    """Pairs (base vertex, new pendant vertex) added by ``add_whiskers``."""

    pairs: tuple

    @property
    def tips(self) -> frozenset:
        return frozenset(t for _, t in self.pairs)

    @property
    def bases(self) -> frozenset:
        return frozenset(b for b, _ in self.pairs)


@dataclass(frozen=True)
class ChordalityResult:
    """Either a perfect elimination ordering or a chordless cycle witness."""

    chordal: bool
    elimination_order: tuple | None = None
    chordless_cycle: tuple | None = None

    def __bool__(self):
        return self.chordal


class RemainderClass(enum.Enum):
    CHORDAL = "chordal"
    FIVE_CYCLE = "five-cycle"
    OTHER = "other"


def induced_subgraph(G: Graph, vertices) -> Graph:
    """Subgraph on ``vertices``, reindexed to 0..k-1 in ascending order."""
    mask = G._check_vertices(vertices)
    keep = list(_bits(mask))
    pos = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        a = 0
        for w in _bits(G.adj[v] & mask):
            a |= 1 << pos[w]
        adj.append(a)
    labels = tuple(G.labels[v] for v in keep)
    return Graph._from_adj(tuple(adj), labels)


def delete_vertices(G: Graph, vertices) -> Graph:
    mask = G._check_vertices(vertices)
    return induced_subgraph(G, [v for v in range(G.n) if not mask >> v & 1])


def add_whiskers(G: Graph, S, tip_labels=None):
    """Attach one new degree-one vertex to each vertex in S.

    New vertices are appended after the original range, in ascending order
    of their base vertex.  Returns the new graph and the base/tip pairing.
    """
    mask = G._check_vertices(S)
    bases = list(_bits(mask))
    n = G.n
    if tip_labels is None:
        tip_labels = [f"x{n + i + 1}" for i in range(len(bases))]
    else:
        tip_labels = list(tip_labels)
        if len(tip_labels) != len(bases):
            raise InputError("tip label count does not match whisker count")
    edges = list(G.edges())
    pairs = []
    for i, b in enumerate(bases):
        tip = n + i
        edges.append((b, tip))
        pairs.append((b, tip))
    H = Graph(n + len(bases), edges, labels=list(G.labels) + tip_labels)
    return H, WhiskerMap(tuple(pairs))


# ---------------------------------------------------------------------------
# chordality


def _mcs_order(G: Graph) -> list:
    """Maximum-cardinality search visit order (ties to the smallest index)."""
    n = G.n
    weight = [0] * n
    unnumbered = set(range(n))
    order = []
    for _ in range(n):
        z = max(unnumbered, key=lambda v: (weight[v], -v))
        unnumbered.discard(z)
        order.append(z)
        for y in _bits(G.adj[z]):
            if y in unnumbered:
                weight[y] += 1
    return order


def _peo_violation(G: Graph, peo) -> tuple | None:
    """First (v, a, b) with a, b later neighbors of v and ab not an edge."""
    rank = {v: i for i, v in enumerate(peo)}
    for i, v in enumerate(peo):
        later = [w for w in _bits(G.adj[v]) if rank[w] > i]
        for a, b in combinations(sorted(later), 2):
            if not G.has_edge(a, b):
                return v, a, b
    return None


def _chordless_cycle(G: Graph) -> tuple | None:
    """Some chordless cycle of length >= 4, or None if the graph is chordal.

    For every vertex v with nonadjacent neighbors a, b, a shortest a-b path
    avoiding N[v] closes to a chordless cycle through v; any chordless cycle
    is found by one of these triples.
    """
    full = (1 << G.n) - 1
    for v in range(G.n):
        nbrs = sorted(_bits(G.adj[v]))
        for a, b in combinations(nbrs, 2):
            if G.has_edge(a, b):
                continue
            allowed = (full & ~G.adj[v] & ~(1 << v)) | (1 << a) | (1 << b)
            prev = {a: None}
            frontier = [a]
            while frontier and b not in prev:
                nxt = []
                for u in frontier:
                    for w in _bits(G.adj[u] & allowed):
                        if w not in prev:
                            prev[w] = u
                            nxt.append(w)
                frontier = sorted(nxt)
            if b in prev:
                path = []
                w = b
                while w is not None:
                    path.append(w)
                    w = prev[w]
                path.reverse()
                return tuple([v] + path)
    return None


def is_chordal(G: Graph) -> ChordalityResult:
    """Decide chordality with a self-checking certificate either way."""
    peo = list(reversed(_mcs_order(G)))
    if _peo_violation(G, peo) is None:
        return ChordalityResult(True, elimination_order=tuple(peo))
    cycle = _chordless_cycle(G)
    if cycle is None:
        raise AssertionError("elimination check failed but no chordless cycle found")
    return ChordalityResult(False, chordless_cycle=cycle)


def _is_five_cycle(G: Graph, vertices) -> bool:
    verts = list(vertices)
    if len(verts) != 5 or any(bin(G.adj[v] & _mask_of(verts)).count("1") != 2 for v in verts):
        return False
    # 2-regular on 5 vertices forces a single 5-cycle; walk it to be sure
    start = verts[0]
    seen = {start}
    prev, cur = None, start
    for _ in range(4):
        nxt = [w for w in _bits(G.adj[cur]) if w != prev and w in set(verts)]
        if not nxt:
            return False
        prev, cur = cur, nxt[0]
        seen.add(cur)
    return len(seen) == 5 and G.has_edge(cur, start)


def classify_remainder(G: Graph, S) -> RemainderClass:
    """Classify G minus S as chordal, a five-cycle, or neither.

    Isolated vertices of the remainder are ignored for the five-cycle test;
    they carry no edges and hence no edge-ideal generators.
    """
    H = delete_vertices(G, S)
    support = [v for v in range(H.n) if H.adj[v] != 0]
    if _is_five_cycle(H, support):
        return RemainderClass.FIVE_CYCLE
    if is_chordal(H).chordal:
        return RemainderClass.CHORDAL
    return RemainderClass.OTHER


# ---------------------------------------------------------------------------
# vertex covers


def _independent_sets(adj, verts_mask: int):
    """Yield every independent subset of verts_mask (masks, unordered)."""
    if verts_mask == 0:
        yield 0
        return
    low = verts_mask & -verts_mask
    v = low.bit_length() - 1
    rest = verts_mask ^ low
    yield from _independent_sets(adj, rest)
    for s in _independent_sets(adj, rest & ~adj[v]):
        yield s | low


def _covers_by_size(adj, active: int) -> dict:
    """All vertex covers of the induced subgraph on ``active``, keyed by size.

    Covers are subsets of ``active`` (complements of independent sets), so
    isolated vertices may pad a cover.  Each size class is in canonical
    lexicographic order on sorted vertex indices.
    """
    out = {}
    for s in _independent_sets(adj, active):
        cover = active ^ s
        out.setdefault(bin(cover).count("1"), []).append(cover)
    for size in out:
        out[size].sort(key=_key)
    return out


def _minimal_cover_masks(adj, active: int) -> list:
    """Complements of maximal independent sets, canonically ordered."""
    covers = []
    for s in _independent_sets(adj, active):
        maximal = True
        for v in _bits(active & ~s):
            if adj[v] & s == 0:
                maximal = False
                break
        if maximal:
            covers.append(active ^ s)
    covers.sort(key=lambda m: (bin(m).count("1"), _key(m)))
    return covers


def _brute_covers_of_size(G: Graph, d: int) -> list:
    """Oracle: raw scan over all d-subsets (used by tests, n <= 20)."""
    out = []
    for combo in combinations(range(G.n), d):
        mask = _mask_of(combo)
        if _is_cover(G.adj, (1 << G.n) - 1, mask):
            out.append(mask)
    return out


def _is_cover(adj, active: int, mask: int) -> bool:
    outside = active & ~mask
    for v in _bits(outside):
        if adj[v] & outside:
            return False
    return True


def vertex_covers_of_size(G: Graph, d: int) -> list:
    """All size-d vertex covers as frozensets, lexicographically ordered."""
    if d < 0 or d > G.n:
        return []
    masks = _covers_by_size(G.adj, (1 << G.n) - 1).get(d, [])
    return [frozenset(_bits(m)) for m in masks]


def minimal_vertex_covers(G: Graph) -> list:
    """Inclusion-minimal covers; isolated vertices never appear."""
    masks = _minimal_cover_masks(G.adj, (1 << G.n) - 1)
    return [frozenset(_bits(m)) for m in masks]


def is_unmixed(G: Graph) -> bool:
    sizes = {len(c) for c in minimal_vertex_covers(G)}
    return len(sizes) <= 1


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> Graph:
    """Parse the exchange format: header ``n m``, then m lines ``u v`` (1-based).

    ``#`` starts a comment line.  Duplicate and loop edges are rejected.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line)
    if not rows:
        raise InputError("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise InputError(f"bad header line {rows[0]!r}: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise InputError(f"bad header line {rows[0]!r}") from None
    if n < 0 or m < 0:
        raise InputError("negative counts in header")
    if len(rows) - 1 != m:
        raise InputError(f"expected {m} edge lines, found {len(rows) - 1}")
    seen = set()
    edges = []
    for line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"bad edge line {line!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"edge ({u},{v}) out of range 1..{n}")
        if u == v:
            raise InputError(f"loop edge at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"duplicate edge ({u},{v})")
        seen.add(key)
        edges.append((u - 1, v - 1))
    return Graph(n, edges)


def format_graph(G: Graph) -> str:
    edges = sorted((min(u, v) + 1, max(u, v) + 1) for u, v in G.edges())
    lines = [f"{G.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# small builders


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])
