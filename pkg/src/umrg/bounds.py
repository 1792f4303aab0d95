"""Lower bounds on cutset counts from trivial cuts and inclusion-exclusion.

Every bound here is a certified *lower* bound on some m_k: intersection
terms that get added are replaced by values at most the truth, subtracted
ones by values at least the truth, and any truncation of the alternating
expansion stops after a subtraction level.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb

from .graph import Graph, induced_edge_mask, mask_of


def g(k: int, i: int, e: int) -> int:
    """Ways to extend an i-edge forced set to a k-subset of e edges:
    C(e-i, k-i), with empty binomials evaluating to 0."""
    if not 0 <= i <= e:
        raise ValueError(f"i must be in 0..{e}")
    if k < i or k > e:
        return 0
    return comb(e - i, k - i)


# ---------------------------------------------------------------------------
# Bound context
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundContext:
    """A node selection with its degree data, exact or degrees-only.

    ``induced`` holds index pairs (into the selection) of induced edges when
    the graph is known; None means only the degree multiset is available.
    """
    e: int
    k: int
    degrees: tuple[int, ...]
    induced: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be >= 1")
        if not self.degrees:
            raise ValueError("selection must be nonempty")
        if self.induced is not None:
            s = len(self.degrees)
            if len(self.induced) > s * (s - 1) // 2:
                raise ValueError("more induced edges than pairs")

    @property
    def exact(self) -> bool:
        return self.induced is not None

    @staticmethod
    def from_graph(graph: Graph, nodes, k: int) -> "BoundContext":
        nodes = sorted(nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("node selection must not repeat nodes")
        degs = tuple(graph.degree(v) for v in nodes)
        pos = {v: i for i, v in enumerate(nodes)}
        induced = []
        em = induced_edge_mask(graph, mask_of(nodes))
        for idx in _bits(em):
            u, v = graph.edges[idx]
            induced.append((pos[u], pos[v]))
        return BoundContext(graph.edge_count, k, degs, tuple(sorted(induced)))

    @staticmethod
    def from_degrees(degrees, k: int, e: int = 16) -> "BoundContext":
        return BoundContext(e, k, tuple(degrees), None)


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def intersection_size(ctx: BoundContext, subset) -> int:
    """Exact size of the intersection of the trivial-cut extension families
    over the chosen nodes: g_k of their degree sum minus induced edges."""
    if not ctx.exact:
        raise ValueError("intersection_size needs exact-graph data; "
                         "use the degrees-only bounds instead")
    subset = frozenset(subset)
    deg_sum = sum(ctx.degrees[i] for i in subset)
    inside = sum(1 for u, v in ctx.induced if u in subset and v in subset)
    return g(ctx.k, min(deg_sum - inside, ctx.e), ctx.e)


# ---------------------------------------------------------------------------
# Union lower bound (inclusion-exclusion over trivial cuts)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundTerm:
    description: str
    sign: int
    argument: int  # i such that value = g_k(i)
    value: int


@dataclass(frozen=True)
class BoundReport:
    bound_value: int
    mode: str  # "exact-graph" | "degrees-only" | "refined"
    k: int
    e: int
    ledger: tuple[BoundTerm, ...] = field(repr=False)

    def __post_init__(self):
        total = sum(t.sign * t.value for t in self.ledger)
        if total != self.bound_value:
            raise ValueError("ledger does not sum to the bound value")

    def to_json(self) -> str:
        return json.dumps({
            "bound_value": self.bound_value,
            "mode": self.mode,
            "k": self.k,
            "e": self.e,
            "ledger": [{"description": t.description, "sign": t.sign,
                        "argument": t.argument, "value": t.value}
                       for t in self.ledger],
        })


def union_lower_bound(ctx: BoundContext, mode: str | None = None,
                      truncate_level: int | None = None) -> BoundReport:
    """Lower bound on m_k from the union of trivial-cut extension families
    over the selected nodes.

    exact-graph mode expands inclusion-exclusion with exact intersection
    sizes (optionally truncated after an even, subtraction-parity level).
    degrees-only mode bounds each term one-sidedly from the degree multiset
    with worst-case adjacency; refined mode additionally caps how many pairs
    can be adjacent (per-node degree caps plus a global count cap) and
    charges the worst allowed assignment.
    """
    if mode is None:
        mode = "exact-graph" if ctx.exact else "refined"
    if mode == "exact-graph":
        return _union_bound_exact(ctx, truncate_level)
    if mode in ("degrees-only", "refined"):
        if truncate_level is not None:
            raise ValueError("truncation applies to exact-graph mode only")
        return _union_bound_degrees(ctx, refined=mode == "refined")
    raise ValueError(f"unknown mode {mode!r}")


def _union_bound_exact(ctx: BoundContext, truncate_level: int | None) -> BoundReport:
    if not ctx.exact:
        raise ValueError("exact-graph mode needs induced-edge data")
    s = len(ctx.degrees)
    if s > 8:
        raise ValueError("full expansion limited to selections of at most 8 nodes")
    level = s if truncate_level is None else truncate_level
    if level < s and level % 2:
        raise ValueError("truncation level must be even to keep a lower bound")
    ledger = []
    for size in range(1, min(level, s) + 1):
        sign = 1 if size % 2 else -1
        for subset in itertools.combinations(range(s), size):
            deg_sum = sum(ctx.degrees[i] for i in subset)
            inside = sum(1 for u, v in ctx.induced if u in subset and v in subset)
            arg = min(deg_sum - inside, ctx.e)
            val = g(ctx.k, arg, ctx.e)
            if val or size == 1:
                ledger.append(BoundTerm(f"A{list(subset)}", sign, arg, val))
    total = sum(t.sign * t.value for t in ledger)
    return BoundReport(total, "exact-graph", ctx.k, ctx.e, tuple(ledger))


def _union_bound_degrees(ctx: BoundContext, refined: bool) -> BoundReport:
    degs = ctx.degrees
    s = len(degs)
    if s > 8:
        raise ValueError("full expansion limited to selections of at most 8 nodes")
    k, e = ctx.k, ctx.e
    ledger = [BoundTerm(f"node deg {d}", 1, d, g(k, d, e)) for d in degs]
    pairs = list(itertools.combinations(range(s), 2))
    if not refined:
        for i, j in pairs:
            arg = min(degs[i] + degs[j] - 1, e)
            ledger.append(BoundTerm(f"pair ({degs[i]},{degs[j]}) adjacent", -1,
                                    arg, g(k, arg, e)))
    else:
        base_args = {}
        bumps = []
        for i, j in pairs:
            arg = min(degs[i] + degs[j], e)
            base_args[(i, j)] = arg
            bump = g(k, min(arg - 1, e), e) - g(k, arg, e)
            bumps.append(((i, j), bump))
        caps = [min(d, s - 1) for d in degs]
        total_cap = min(len(pairs), sum(degs) // 2, e)
        marked = _max_adjacency_marking(bumps, caps, total_cap)
        for i, j in pairs:
            if (i, j) in marked:
                arg = min(degs[i] + degs[j] - 1, e)
                ledger.append(BoundTerm(f"pair ({degs[i]},{degs[j]}) adjacent", -1,
                                        arg, g(k, arg, e)))
            else:
                arg = base_args[(i, j)]
                ledger.append(BoundTerm(f"pair ({degs[i]},{degs[j]})", -1,
                                        arg, g(k, arg, e)))
    for size in range(3, s + 1):
        sign = 1 if size % 2 else -1
        for subset in itertools.combinations(range(s), size):
            deg_sum = sum(degs[i] for i in subset)
            if sign > 0:
                arg = min(deg_sum, e)  # no induced-edge credit: at most the truth
            else:
                arg = min(max(deg_sum - min(k, comb(size, 2)), 0), e)
            val = g(k, arg, e)
            if val:
                ledger.append(BoundTerm(f"{size}-subset", sign, arg, val))
    total = sum(t.sign * t.value for t in ledger)
    return BoundReport(total, "refined" if refined else "degrees-only",
                       k, e, tuple(ledger))


def _max_adjacency_marking(bumps, caps, total_cap) -> set[tuple[int, int]]:
    """Worst-case set of pairs to treat as adjacent: maximizes the total bump
    subject to each node's adjacency capacity and the global pair count cap.

    Exact branch and bound over pairs sorted by decreasing bump; the result
    upper-bounds any adjacency pattern a real graph could have.
    """
    items = sorted(((b, p) for p, b in bumps if b > 0), reverse=True)
    if not items:
        return set()
    values = [b for b, _ in items]
    suffix = [0] * (len(items) + 1)
    for i in range(len(items) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + values[i]
    best_val = -1
    best_set: set[tuple[int, int]] = set()
    chosen: list[tuple[int, int]] = []

    def rec(idx: int, caps_left: list[int], slots: int, acc: int):
        nonlocal best_val, best_set
        if acc > best_val:
            best_val = acc
            best_set = set(chosen)
        if idx == len(items) or slots == 0:
            return
        take = min(slots, len(items) - idx)
        if acc + sum(values[idx:idx + take]) <= best_val:
            return
        b, (u, v) = items[idx]
        if caps_left[u] > 0 and caps_left[v] > 0:
            caps_left[u] -= 1
            caps_left[v] -= 1
            chosen.append((u, v))
            rec(idx + 1, caps_left, slots - 1, acc + b)
            chosen.pop()
            caps_left[u] += 1
            caps_left[v] += 1
        rec(idx + 1, caps_left, slots, acc)

    rec(0, list(caps), total_cap, 0)
    return best_set


# ---------------------------------------------------------------------------
# Closed-form bounds for 4-regular (8,16) graphs
# ---------------------------------------------------------------------------

def regular_lower_bounds(t: int, c: int, girth_four: bool = False) -> tuple[int, int, int, int]:
    """Closed-form lower bounds on m_5..m_8 for a 4-regular (8,16)-graph with
    triangle flag t and square count c.  All four are equalities at girth 4.
    """
    if t not in (0, 1):
        raise ValueError("t must be 0 or 1")
    if c < 0:
        raise ValueError("square count must be nonnegative")
    if girth_four and c % 2:
        raise ValueError("girth-4 graphs pair up their squares; c must be even")
    m5 = 8 * comb(16 - 4, 1)
    m6 = 8 * comb(16 - 4, 2) + 16
    m7 = 8 * comb(16 - 4, 3) - 16 + 16 * comb(16 - 7, 1)
    m8 = (8 * comb(16 - 4, 4)
          - (comb(8, 2) - 16)
          - 16 * (16 - 7)
          + 16 * comb(16 - 7, 2)
          + 8 * comb(4, 2)
          + t * 3 * comb(16 - 8, 2)
          + c // 2)
    return m5, m6, m7, m8


# ---------------------------------------------------------------------------
# Edge-star cut terms (adjacent node pairs)
# ---------------------------------------------------------------------------

_TABLE_K8_E16 = {(3, 4): 168, (3, 5): 36, (4, 4): 36, (4, 5): 8}


@dataclass(frozen=True)
class EdgeCutTerm:
    formula_value: int          # the displayed algebraic form, as printed
    corrected_value: int        # supersets of the pair boundary avoiding uv
    table_value: int | None     # tabulated constant when one exists


def edge_cut_term(deg_u: int, deg_v: int, k: int, e: int = 16) -> EdgeCutTerm:
    """Candidate values for the number of k-cutsets containing both edge
    stars of an adjacent pair and avoiding the joining edge.

    The three candidates can disagree; conflicts are settled by the
    brute-force oracle in the verifier, never assumed.
    """
    if deg_u < 1 or deg_v < 1:
        raise ValueError("degrees must be >= 1")
    s = deg_u + deg_v
    formula = comb(e - s + 1, k - s) if 0 <= k - s <= e - s + 1 else 0
    boundary = s - 2  # adjacent pair: two stars share the joining edge
    free = e - boundary - 1
    need = k - boundary
    corrected = comb(free, need) if 0 <= need <= free else 0
    key = (min(deg_u, deg_v), max(deg_u, deg_v))
    table = _TABLE_K8_E16.get(key) if (k == 8 and e == 16) else None
    return EdgeCutTerm(formula, corrected, table)


# ---------------------------------------------------------------------------
# Bounded exhaustive minimization over edge-type counts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MixConstraint:
    """lo <= w . (a,b,c,d) <= hi, or membership in an explicit value set."""
    weights: tuple[int, int, int, int]
    allowed: frozenset[int] | None = None
    lo: int | None = None
    hi: int | None = None

    def satisfied(self, x: tuple[int, int, int, int]) -> bool:
        v = sum(w * xi for w, xi in zip(self.weights, x))
        if self.allowed is not None and v not in self.allowed:
            return False
        if self.lo is not None and v < self.lo:
            return False
        if self.hi is not None and v > self.hi:
            return False
        return True


@dataclass(frozen=True)
class MixMinimum:
    a: int
    b: int
    c: int
    d: int
    value: int


def minimize_edge_sum(objective: tuple[int, int, int, int],
                      constraints, total: int = 16) -> MixMinimum:
    """Exact minimum of objective . (a,b,c,d) over nonnegative integer
    solutions with a+b+c+d = total meeting every constraint.

    Plain exhaustive scan; the polytope has at most (total+1)^3 points.
    """
    best: MixMinimum | None = None
    for a in range(total + 1):
        for b in range(total + 1 - a):
            for c in range(total + 1 - a - b):
                d = total - a - b - c
                x = (a, b, c, d)
                if not all(con.satisfied(x) for con in constraints):
                    continue
                val = sum(w * xi for w, xi in zip(objective, x))
                if best is None or val < best.value or \
                        (val == best.value and x < (best.a, best.b, best.c, best.d)):
                    best = MixMinimum(a, b, c, d, val)
    if best is None:
        raise ValueError("no feasible edge-type assignment")
    return best
