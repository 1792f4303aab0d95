"""Immutable small graphs with bitmask adjacency, named builders, and structural censuses.

Node sets and edge sets are plain Python ints used as bitmasks (bit i = node i,
or bit i = position of edge i in the sorted edge list).  The 32-node cap keeps
every set a single machine word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

MAX_NODES = 32


def bits(mask: int):
    """Iterate set bit positions of a mask, ascending."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Graph:
    """Simple undirected graph on nodes 0..n-1.

    Immutable after construction.  Edges are stored lexicographically sorted
    with u < v; ``edge_index`` inverts the edge list; ``adj[v]`` is the
    neighbor bitmask of node v.
    """

    __slots__ = ("node_count", "edges", "adj", "edge_index", "edge_count")

    def __init__(self, node_count: int, edges):
        if not 0 < node_count <= MAX_NODES:
            raise ValueError(f"node count must be in 1..{MAX_NODES}, got {node_count}")
        norm = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u},{v}) out of range for n={node_count}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in itertools.pairwise(norm):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        adj = [0] * node_count
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "edge_index", {e: i for i, e in enumerate(norm)})
        object.__setattr__(self, "edge_count", len(norm))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return (isinstance(other, Graph)
                and self.node_count == other.node_count
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.node_count, self.edges))

    def __repr__(self):
        return f"Graph(n={self.node_count}, e={self.edge_count})"

    @property
    def full_node_mask(self) -> int:
        return (1 << self.node_count) - 1

    @property
    def full_edge_mask(self) -> int:
        return (1 << self.edge_count) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edge_mask_of(self, pairs) -> int:
        return mask_of(self.edge_index[(u, v) if u < v else (v, u)] for u, v in pairs)

    def incident_edges(self, v: int) -> int:
        """Edge mask of all edges at node v (the trivial cut E_v)."""
        m = 0
        for i, (a, b) in enumerate(self.edges):
            if a == v or b == v:
                m |= 1 << i
        return m

    def remove_edge_mask(self, removed: int) -> tuple[int, ...]:
        """Adjacency masks of the graph with the given edge positions deleted."""
        adj = list(self.adj)
        for i in bits(removed):
            u, v = self.edges[i]
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return tuple(adj)


def connected_under(adj, node_mask: int) -> bool:
    """BFS connectivity of the nodes in node_mask under the given adjacency."""
    if node_mask == 0:
        return True
    start = (node_mask & -node_mask).bit_length() - 1
    seen = 1 << start
    stack = [start]
    while stack:
        new = adj[stack.pop()] & node_mask & ~seen
        while new:
            b = new & -new
            seen |= b
            stack.append(b.bit_length() - 1)
            new ^= b
    return seen == node_mask


def is_connected(g: Graph) -> bool:
    return connected_under(g.adj, g.full_node_mask)


# ---------------------------------------------------------------------------
# Named builders
# ---------------------------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """Sides are nodes 0..a-1 and a..a+b-1."""
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def complete_multipartite(parts) -> Graph:
    parts = list(parts)
    if not parts or any(p < 1 for p in parts):
        raise ValueError("parts must be positive")
    offsets = [0]
    for p in parts:
        offsets.append(offsets[-1] + p)
    n = offsets[-1]
    edges = []
    for pi in range(len(parts)):
        for pj in range(pi + 1, len(parts)):
            for u in range(offsets[pi], offsets[pi + 1]):
                for v in range(offsets[pj], offsets[pj + 1]):
                    edges.append((u, v))
    return Graph(n, edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def theta(l1: int, l2: int, l3: int) -> Graph:
    """Two hub nodes joined by three internally disjoint paths of l1, l2, l3 edges."""
    lengths = (l1, l2, l3)
    if any(l < 1 for l in lengths):
        raise ValueError("path lengths must be >= 1")
    if sum(l == 1 for l in lengths) > 1:
        raise ValueError("at most one length-1 path in a simple theta graph")
    edges = []
    nxt = 2
    for l in lengths:
        prev = 0
        for _ in range(l - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(nxt, edges)


def moebius(m: int) -> Graph:
    """Cycle on 2m nodes plus the m diagonals joining opposite nodes."""
    if m < 2:
        raise ValueError("moebius needs m >= 2")
    edges = [(i, (i + 1) % (2 * m)) for i in range(2 * m)]
    edges += [(i, i + m) for i in range(m)]
    return Graph(2 * m, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def complement_of(g: Graph) -> Graph:
    n = g.node_count
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
    return Graph(n, edges)


def kn_minus_matching(n: int, match_size: int) -> Graph:
    if not 0 <= match_size <= n // 2:
        raise ValueError(f"matching size must be in 0..{n // 2}")
    removed = {(2 * i, 2 * i + 1) for i in range(match_size)}
    edges = [e for e in itertools.combinations(range(n), 2) if e not in removed]
    return Graph(n, edges)


_K4_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# perfect matchings of K4, as index pairs into _K4_EDGES
_K4_MATCHINGS = ((0, 5), (1, 4), (2, 3))


def _boesch_insertion_vector(extra: int) -> tuple[int, ...]:
    """Distribute `extra` subdivision points over K4's six edges.

    Counts differ pairwise by at most one, and any two matchings receiving the
    same total must agree on all four edge counts.  Lexicographically smallest
    valid vector on the fixed edge order.
    """
    q, r = divmod(extra, 6)
    best = None
    for ones in itertools.combinations(range(6), r):
        vec = tuple(q + (1 if i in ones else 0) for i in range(6))
        sums = [vec[a] + vec[b] for a, b in _K4_MATCHINGS]
        ok = True
        for i in range(3):
            for j in range(i + 1, 3):
                if sums[i] == sums[j]:
                    cells = {vec[x] for x in _K4_MATCHINGS[i] + _K4_MATCHINGS[j]}
                    if len(cells) != 1:
                        ok = False
        if ok and (best is None or vec < best):
            best = vec
    assert best is not None  # r in 0..5 always admits a valid pattern
    return best


def boesch_n_plus_2(n: int) -> Graph:
    """The (n, n+2) subdivision of K4 with balanced, matching-compatible insertions."""
    if n < 4:
        raise ValueError("boesch_n_plus_2 needs n >= 4")
    vec = _boesch_insertion_vector(n - 4)
    edges = []
    nxt = 4
    for (u, v), cnt in zip(_K4_EDGES, vec):
        prev = u
        for _ in range(cnt):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(n, edges)


_FAMILIES = {
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "complete_multipartite": (None, -1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "theta": (theta, 3),
    "moebius": (moebius, 1),
    "petersen": (petersen, 0),
    "kn_minus_matching": (kn_minus_matching, 2),
    "boesch_n_plus_2": (boesch_n_plus_2, 1),
}


def build_named(spec) -> Graph:
    """Build a named family member from "family:arg1,arg2" or (family, *args).

    complement_of nests: "complement_of:cycle:7" or ("complement_of", graph).
    """
    if isinstance(spec, str):
        name, _, argstr = spec.partition(":")
        name = name.strip()
        if name == "complement_of":
            return complement_of(build_named(argstr))
        args = [int(a) for a in argstr.split(",")] if argstr else []
    else:
        name, *args = spec
        if name == "complement_of":
            inner = args[0]
            return complement_of(inner if isinstance(inner, Graph)
                                 else build_named(inner))
    if name == "complete_multipartite":
        return complete_multipartite(args)
    if name not in _FAMILIES:
        raise ValueError(f"unknown family {name!r}; known: "
                         f"{sorted(_FAMILIES) + ['complement_of']}")
    fn, arity = _FAMILIES[name]
    if len(args) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(args)}")
    return fn(*args)


# ---------------------------------------------------------------------------
# Censuses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructuralCensus:
    degree_sequence: tuple[int, ...]  # nondecreasing
    min_degree: int
    is_regular: bool
    girth: int | None  # None marks an acyclic graph
    triangle_count: int
    square_count: int

    @property
    def triangle_flag(self) -> int:
        return 1 if self.triangle_count else 0


@dataclass(frozen=True)
class ConnectivityCensus:
    connected: bool
    biconnected: bool
    bridges: int     # edge mask
    cut_points: int  # node mask


def _girth(g: Graph) -> int | None:
    """Length of a shortest cycle by per-root BFS, None if acyclic."""
    best = None
    n = g.node_count
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = [root]
        while queue:
            nxt = []
            for u in queue:
                for v in bits(g.adj[u]):
                    if dist[v] == -1:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif v != parent[u] and dist[v] >= dist[u]:
                        cyc = dist[u] + dist[v] + 1
                        if best is None or cyc < best:
                            best = cyc
            queue = nxt
    return best


def structural_census(g: Graph) -> StructuralCensus:
    degs = sorted(g.degrees())
    tri = sum((g.adj[u] & g.adj[v]).bit_count() for u, v in g.edges) // 3
    sq2 = 0
    for u in range(g.node_count):
        for v in range(u + 1, g.node_count):
            c = (g.adj[u] & g.adj[v]).bit_count()
            sq2 += c * (c - 1) // 2
    return StructuralCensus(
        degree_sequence=tuple(degs),
        min_degree=degs[0],
        is_regular=degs[0] == degs[-1],
        girth=_girth(g),
        triangle_count=tri,
        square_count=sq2 // 2,  # each 4-cycle counted once per diagonal pair
    )


def connectivity_census(g: Graph) -> ConnectivityCensus:
    """Bridges and cut-points by iterative DFS low-link."""
    n = g.node_count
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    bridges = 0
    cut_points = 0
    timer = 0
    roots = 0
    for start in range(n):
        if disc[start] != -1:
            continue
        roots += 1
        root_children = 0
        stack = [(start, iter(tuple(bits(g.adj[start]))))]
        disc[start] = low[start] = timer
        timer += 1
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                if disc[v] == -1:
                    parent[v] = u
                    disc[v] = low[v] = timer
                    timer += 1
                    if u == start:
                        root_children += 1
                    stack.append((v, iter(tuple(bits(g.adj[v])))))
                    advanced = True
                    break
                elif v != parent[u]:
                    low[u] = min(low[u], disc[v])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        bridges |= 1 << g.edge_index[(p, u) if p < u else (u, p)]
                    if p != start and low[u] >= disc[p]:
                        cut_points |= 1 << p
        if root_children > 1:
            cut_points |= 1 << start
    connected = roots == 1
    return ConnectivityCensus(
        connected=connected,
        biconnected=connected and n > 2 and cut_points == 0,
        bridges=bridges,
        cut_points=cut_points,
    )


def boundary(g: Graph, a: int) -> int:
    """Edge mask of edges with exactly one endpoint in node set `a`."""
    if a <= 0 or a >= g.full_node_mask:
        raise ValueError("boundary needs a nonempty proper node subset")
    m = 0
    for i, (u, v) in enumerate(g.edges):
        if (a >> u & 1) != (a >> v & 1):
            m |= 1 << i
    return m


def induced_edge_mask(g: Graph, a: int) -> int:
    m = 0
    for i, (u, v) in enumerate(g.edges):
        if (a >> u & 1) and (a >> v & 1):
            m |= 1 << i
    return m


def connected_subgraphs(g: Graph, order: int, max_boundary: int) -> list[int]:
    """Node masks of connected induced subgraphs of the given order with
    boundary size at most max_boundary, each listed once.

    Enumeration grows sets from their minimum node so every set appears
    exactly once (ESU-style extension).
    """
    if not 1 <= order <= g.node_count // 2:
        raise ValueError(f"order must be in 1..{g.node_count // 2}")
    out = []

    def extend(sub: int, ext: int, nbh: int, above: int, size: int):
        if size == order:
            if boundary(g, sub).bit_count() <= max_boundary:
                out.append(sub)
            return
        while ext:
            b = ext & -ext
            ext ^= b  # later branches at this level exclude w
            w = b.bit_length() - 1
            excl = g.adj[w] & ~nbh & above
            extend(sub | b, ext | excl, nbh | g.adj[w] | b, above, size + 1)

    for v in range(g.node_count):
        above = ~((1 << (v + 1)) - 1)
        extend(1 << v, g.adj[v] & above, g.adj[v] | (1 << v), above, 1)
    return out
