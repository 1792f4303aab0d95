"""Exact cutset spectra, tree numbers, connectivity invariants, and the
unreliability polynomial.

The spectrum m = (m_0, ..., m_e) counts, for each cardinality k, the edge
subsets whose removal disconnects the graph.  Two independent algorithms are
provided: a vectorized count of connected spanning subgraphs (complement
route, the default) and a Gray-code walk over removal sets with incremental
connectivity maintenance.  They must agree; tests and the verifier hold them
to that.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .graph import Graph, bits, connected_under, is_connected

#: Subset enumeration is 2^e; beyond this the exact routes are refused.
MAX_SPECTRUM_EDGES = 28

_CHUNK_BITS = 20


class BudgetExceededError(RuntimeError):
    """Raised when an exact computation would exceed its configured budget."""


@dataclass(frozen=True)
class CutsetSpectrum:
    e: int
    m: tuple[int, ...]

    def __post_init__(self):
        if len(self.m) != self.e + 1:
            raise ValueError(f"spectrum needs e+1 entries, got {len(self.m)}")
        for k, mk in enumerate(self.m):
            if not 0 <= mk <= comb(self.e, k):
                raise ValueError(f"m[{k}]={mk} outside 0..C({self.e},{k})")

    def first_nonzero(self) -> int | None:
        for k, mk in enumerate(self.m):
            if mk:
                return k
        return None

    def to_csv(self) -> str:
        lines = ["k,m_k,binom_e_k"]
        lines += [f"{k},{mk},{comb(self.e, k)}" for k, mk in enumerate(self.m)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"e": self.e, "m": list(self.m)})


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def _connected_rows(keep: np.ndarray, edges, n: int) -> np.ndarray:
    """Row-wise connectivity: keep[r, i] says edge i is present in row r.

    Propagates reachability from node 0 as per-row node bitmasks until a
    fixed point; a row is connected when all n bits are reached.
    """
    rows = keep.shape[0]
    reach = np.ones(rows, dtype=np.uint32)
    full = np.uint32((1 << n) - 1)
    while True:
        changed = False
        for i, (u, v) in enumerate(edges):
            eb = keep[:, i]
            ru = (reach >> np.uint32(u)) & np.uint32(1)
            rv = (reach >> np.uint32(v)) & np.uint32(1)
            grow = eb & (ru > rv)
            if grow.any():
                reach |= grow.astype(np.uint32) << np.uint32(v)
                changed = True
            grow = eb & (rv > ru)
            if grow.any():
                reach |= grow.astype(np.uint32) << np.uint32(u)
                changed = True
        if not changed:
            return reach == full


def _connected_subgraph_counts(g: Graph) -> list[int]:
    """Number of connected spanning subgraphs per kept-edge count."""
    e = g.edge_count
    counts = np.zeros(e + 1, dtype=np.int64)
    total = 1 << e
    chunk = min(total, 1 << _CHUNK_BITS)
    for start in range(0, total, chunk):
        masks = np.arange(start, start + chunk, dtype=np.uint32)
        keep = np.empty((chunk, e), dtype=bool)
        for i in range(e):
            keep[:, i] = (masks >> np.uint32(i)) & np.uint32(1)
        conn = _connected_rows(keep, g.edges, g.node_count)
        counts += np.bincount(_popcount(masks[conn]), minlength=e + 1)
    return [int(c) for c in counts]


def cutset_spectrum(g: Graph, method: str = "complement") -> CutsetSpectrum:
    """Exact cutset counts by cardinality.

    method "complement" counts connected spanning subgraphs and subtracts
    from the binomials; "graycode" walks removal sets directly.  Both are
    exact and must agree.
    """
    if not is_connected(g):
        raise ValueError("cutset spectrum requires a connected graph")
    if g.edge_count > MAX_SPECTRUM_EDGES:
        raise BudgetExceededError(
            f"e={g.edge_count} exceeds the 2^e enumeration cap of {MAX_SPECTRUM_EDGES}")
    if method == "complement":
        kept = _connected_subgraph_counts(g)
        e = g.edge_count
        m = tuple(comb(e, k) - kept[e - k] for k in range(e + 1))
        return CutsetSpectrum(e, m)
    if method == "graycode":
        return cutset_spectrum_graycode(g)
    raise ValueError(f"unknown method {method!r}")


def cutset_spectrum_graycode(g: Graph) -> CutsetSpectrum:
    """Gray-code walk over removal sets with incremental connectivity.

    One edge flips per step.  A removal while connected may disconnect and a
    restore while disconnected may reconnect; only those events re-run BFS.
    """
    if not is_connected(g):
        raise ValueError("cutset spectrum requires a connected graph")
    if g.edge_count > MAX_SPECTRUM_EDGES:
        raise BudgetExceededError(
            f"e={g.edge_count} exceeds the 2^e enumeration cap of {MAX_SPECTRUM_EDGES}")
    e = g.edge_count
    n = g.node_count
    full = (1 << n) - 1
    adj = list(g.adj)
    m = [0] * (e + 1)
    connected = True
    for i in range(1, 1 << e):
        gray = i ^ (i >> 1)
        b = (i & -i).bit_length() - 1
        u, v = g.edges[b]
        if gray >> b & 1:  # edge b joins the removal set
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
            if connected:
                connected = connected_under(adj, full)
        else:  # edge b restored
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            if not connected:
                connected = connected_under(adj, full)
        if not connected:
            m[gray.bit_count()] += 1
    return CutsetSpectrum(e, tuple(m))


def component_spectrum(g: Graph) -> CutsetSpectrum:
    """Full spectrum from the small-component decomposition.

    A removal set disconnects exactly when it contains the boundary of some
    connected induced node set on at most half the nodes.  The deduplicated
    union of boundary supersets is materialized as a covered-mask table:
    seed each boundary, close upward under adding edges, then count covered
    masks by cardinality.  Independent of the connectivity-propagation route.
    """
    from .graph import boundary, connected_subgraphs

    if g.node_count > 8:
        raise ValueError("component decomposition implemented for n <= 8")
    if g.edge_count > 24:
        raise BudgetExceededError("covered-mask table limited to e <= 24")
    if not is_connected(g):
        raise ValueError("requires a connected graph")
    e = g.edge_count
    covered = np.zeros(1 << e, dtype=bool)
    for order in range(1, g.node_count // 2 + 1):
        for a in connected_subgraphs(g, order, max_boundary=e):
            covered[boundary(g, a)] = True
    for i in range(e):
        block = 1 << i
        half = covered.reshape(-1, 2 * block)
        half[:, block:] |= half[:, :block]
    masks = np.arange(1 << e, dtype=np.uint32)
    m = np.bincount(_popcount(masks[covered]), minlength=e + 1)
    return CutsetSpectrum(e, tuple(int(x) for x in m))


def spectrum_via_components(g: Graph, k: int) -> int:
    """Number of k-cutsets via the small-component decomposition."""
    if not 0 <= k <= g.edge_count:
        raise ValueError(f"k must be in 0..{g.edge_count}")
    return component_spectrum(g).m[k]


def count_cutsets_containing(g: Graph, forced: int, avoided: int, k: int) -> int:
    """Oracle: k-edge cutsets that contain every forced edge and avoid every
    avoided edge, by direct enumeration with a connectivity check each."""
    import itertools
    if forced & avoided:
        return 0
    base = forced.bit_count()
    if base > k:
        return 0
    pool = [i for i in bits(g.full_edge_mask & ~forced & ~avoided)]
    full_nodes = g.full_node_mask
    count = 0
    for combo in itertools.combinations(pool, k - base):
        removal = forced
        for i in combo:
            removal |= 1 << i
        if not connected_under(g.remove_edge_mask(removal), full_nodes):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Tree numbers
# ---------------------------------------------------------------------------

def tree_number(g: Graph) -> int:
    """Number of spanning trees via fraction-free elimination of a Laplacian minor.

    Exact integer arithmetic throughout; returns 0 for disconnected graphs.
    """
    n = g.node_count
    if n == 1:
        return 1
    size = n - 1
    mat = [[0] * size for _ in range(size)]
    for v in range(1, n):
        mat[v - 1][v - 1] = g.degree(v)
    for u, v in g.edges:
        if u >= 1 and v >= 1:
            mat[u - 1][v - 1] -= 1
            mat[v - 1][u - 1] -= 1
    sign = 1
    prev = 1
    for col in range(size - 1):
        pivot_row = next((r for r in range(col, size) if mat[r][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            mat[col], mat[pivot_row] = mat[pivot_row], mat[col]
            sign = -sign
        pivot = mat[col][col]
        for r in range(col + 1, size):
            row_r = mat[r]
            row_c = mat[col]
            factor = row_r[col]
            for c in range(col, size):
                row_r[c] = (row_r[c] * pivot - factor * row_c[c]) // prev
        prev = pivot
    det = sign * mat[size - 1][size - 1]
    assert det >= 0, "Laplacian minor determinant must be nonnegative"
    return det


def spanning_trees_by_enumeration(g: Graph) -> int:
    """Oracle: count spanning trees by checking every (n-1)-edge subset.

    Cost is C(e, n-1) union-find passes; intended for n <= 6 cross-checks.
    """
    import itertools
    n = g.node_count
    if n == 1:
        return 1
    count = 0
    for combo in itertools.combinations(g.edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for u, v in combo:
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
        if acyclic:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Edge connectivity and superconnectivity
# ---------------------------------------------------------------------------

def _max_flow_unit(g: Graph, s: int, t: int) -> int:
    n = g.node_count
    cap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        cap[u][v] = 1
        cap[v][u] = 1
    flow = 0
    while True:
        parent = [-1] * n
        parent[s] = s
        queue = [s]
        while queue and parent[t] == -1:
            u = queue.pop(0)
            for v in range(n):
                if cap[u][v] > 0 and parent[v] == -1:
                    parent[v] = u
                    queue.append(v)
        if parent[t] == -1:
            return flow
        v = t
        while v != s:
            u = parent[v]
            cap[u][v] -= 1
            cap[v][u] += 1
            v = u
        flow += 1


def edge_connectivity(g: Graph) -> int:
    """Smallest number of edges whose removal disconnects the graph."""
    if not is_connected(g):
        raise ValueError("edge connectivity requires a connected graph")
    if g.node_count == 1:
        return 0
    return min(_max_flow_unit(g, 0, t) for t in range(1, g.node_count))


def is_superconnected(g: Graph) -> bool:
    """True when the graph is lambda-regular and every minimum cutset is the
    edge star of a single node (m_lambda equals the node count)."""
    if not is_connected(g):
        raise ValueError("requires a connected graph")
    lam = edge_connectivity(g)
    if lam == 0 or any(d != lam for d in g.degrees()):
        return False
    spec = cutset_spectrum(g)
    return spec.m[lam] == g.node_count


# ---------------------------------------------------------------------------
# Unreliability polynomial
# ---------------------------------------------------------------------------

#: Evaluation switches to one-sided leading-term forms inside this margin of
#: the endpoints; the full alternating-free sum is used elsewhere.
EXTREME_RHO = 1e-6


@dataclass(frozen=True)
class UnreliabilityPolynomial:
    spectrum: CutsetSpectrum

    def __call__(self, rho: float) -> float:
        return unreliability(self.spectrum, rho)


def unreliability(spectrum, rho: float) -> float:
    """Evaluate sum_k m_k rho^k (1-rho)^(e-k).

    Accepts a CutsetSpectrum or an UnreliabilityPolynomial.
    """
    if isinstance(spectrum, UnreliabilityPolynomial):
        spectrum = spectrum.spectrum
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    e = spectrum.e
    m = spectrum.m
    lam = spectrum.first_nonzero()
    if lam is None:
        return 0.0
    if rho < EXTREME_RHO:
        hi = min(lam + 4, e)
        return math.fsum(m[k] * rho ** k * (1.0 - rho) ** (e - k)
                         for k in range(lam, hi + 1))
    if rho > 1.0 - EXTREME_RHO:
        # complement form: subtract the connected-subgraph tail, which is
        # supported on k <= e-n+1 and vanishes at rho = 1
        reliable = math.fsum((comb(e, k) - m[k]) * rho ** k * (1.0 - rho) ** (e - k)
                             for k in range(e + 1) if comb(e, k) - m[k])
        return 1.0 - reliable
    return math.fsum(m[k] * rho ** k * (1.0 - rho) ** (e - k) for k in range(e + 1))


def evaluation_table(spectrum: CutsetSpectrum, rhos) -> list[tuple[float, float]]:
    return [(rho, unreliability(spectrum, rho)) for rho in rhos]


# ---------------------------------------------------------------------------
# Spectrum comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumComparison:
    dominates: bool               # a.m[k] <= b.m[k] for every k
    first_divergence: int | None  # smallest k with a.m[k] != b.m[k]
    last_divergence: int | None
    near_zero_winner: str | None  # "a" | "b" | None when spectra equal
    near_one_winner: str | None


def compare(a: CutsetSpectrum, b: CutsetSpectrum) -> SpectrumComparison:
    """Coefficient dominance plus the near-0 and near-1 winners.

    Near rho = 0 the smallest differing coefficient decides; near rho = 1 the
    largest one does.  Smaller m_k wins either way.
    """
    if a.e != b.e:
        raise ValueError("spectra must share the same edge count")
    diffs = [k for k in range(a.e + 1) if a.m[k] != b.m[k]]
    if not diffs:
        return SpectrumComparison(True, None, None, None, None)
    first, last = diffs[0], diffs[-1]
    return SpectrumComparison(
        dominates=all(a.m[k] <= b.m[k] for k in range(a.e + 1)),
        first_divergence=first,
        last_divergence=last,
        near_zero_winner="a" if a.m[first] < b.m[first] else "b",
        near_one_winner="a" if a.m[last] < b.m[last] else "b",
    )


# ---------------------------------------------------------------------------
# Monte Carlo cross-check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    std_error: float
    trials: int


def monte_carlo_unreliability(g: Graph, rho: float, trials: int,
                              seed: int) -> MonteCarloResult:
    """Estimate disconnection probability by independent edge deletions.

    Deterministic for a fixed seed; std_error is sqrt(p(1-p)/trials) at the
    estimated p.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    disconnected = 0
    remaining = trials
    while remaining:
        batch = min(remaining, 1 << 16)
        keep = rng.random((batch, g.edge_count)) >= rho
        conn = _connected_rows(keep, g.edges, g.node_count)
        disconnected += int(batch - conn.sum())
        remaining -= batch
    est = disconnected / trials
    return MonteCarloResult(
        estimate=est,
        std_error=math.sqrt(est * (1.0 - est) / trials),
        trials=trials,
    )
