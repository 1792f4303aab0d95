"""Degree-sequence enumeration, canonical forms, and isomorphism-free
generation of small graph classes.

Two generation backends are provided so exhaustive claims can be
cross-checked: per-degree-sequence adjacency backtracking (the default) and
level-wise edge augmentation.  Both deduplicate through the same canonical
form; agreement of their outputs is asserted by the verifier.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Graph, connectivity_census, structural_census
from .graph6 import decode, encode
from .spectrum import BudgetExceededError


# ---------------------------------------------------------------------------
# Degree sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]  # nondecreasing

    def __post_init__(self):
        if any(a > b for a, b in itertools.pairwise(self.degrees)):
            raise ValueError("degrees must be nondecreasing")

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def graphical(self) -> bool:
        return is_graphical(self.degrees)


def is_graphical(degrees) -> bool:
    """Erdos-Gallai test: realizable by a simple graph."""
    d = sorted(degrees, reverse=True)
    n = len(d)
    if n == 0:
        return True
    if d[0] > n - 1 or d[-1] < 0 or sum(d) % 2:
        return False
    for k in range(1, n + 1):
        lhs = sum(d[:k])
        rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
        if lhs > rhs:
            return False
    return True


def graphical_sequences(n: int, e: int, min_deg: int = 0,
                        max_deg: int | None = None) -> list[DegreeSequence]:
    """All nondecreasing graphical sequences on n nodes summing to 2e."""
    if n > 32:
        raise ValueError("n must be <= 32")
    if max_deg is None:
        max_deg = n - 1
    max_deg = min(max_deg, n - 1)
    target = 2 * e
    out = []

    def rec(prefix: list[int], lo: int, remaining: int):
        slots = n - len(prefix)
        if slots == 0:
            if remaining == 0 and is_graphical(prefix):
                out.append(DegreeSequence(tuple(prefix)))
            return
        for d in range(lo, max_deg + 1):
            rest = remaining - d
            if rest < 0 or rest > (slots - 1) * max_deg:
                continue
            if rest < (slots - 1) * d:  # later degrees are >= d
                continue
            prefix.append(d)
            rec(prefix, d, rest)
            prefix.pop()

    rec([], min_deg, target)
    return out


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

def _invariant_keys(g: Graph) -> list[tuple]:
    keys = []
    for v in range(g.node_count):
        nd = tuple(sorted(g.degree(u) for u in _bits(g.adj[v])))
        keys.append((g.degree(v), nd))
    return keys


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def canonical_form(g: Graph) -> str:
    """graph6 string of the lexicographically minimal labeling.

    Minimizes the column-ordered upper-triangle bitstring over all node
    permutations by branch and bound.  Candidate branches are pruned against
    the best known prefix, and interchangeable twin nodes (equal open or
    closed neighborhoods) are explored once.  The permutation search is kept
    to small orders; nothing here needs a refinement engine.
    """
    if g.node_count > 16:
        raise ValueError("canonical form via permutation search is capped at n <= 16")
    cols = _canonical_columns(g)
    edges = []
    for v in range(1, g.node_count):
        col = cols[v - 1]
        for u in range(v):
            if col >> (v - 1 - u) & 1:
                edges.append((u, v))
    return encode(Graph(g.node_count, edges))


def _canonical_columns(g: Graph) -> list[int]:
    """Per-position column values of the minimal adjacency bitstring.

    cols[d-1] holds the adjacency bits of the node placed at position d
    toward positions 0..d-1, most significant bit first.  Comparing the
    tuple of columns is comparing the concatenated bitstring because the
    field widths are fixed per position.
    """
    n = g.node_count
    adj = g.adj
    inv = _invariant_keys(g)
    best: list[int] | None = None
    assigned: list[int] = []
    cols: list[int] = []

    def rec(depth: int, used: int):
        nonlocal best
        if depth == n:
            if best is None or cols < best:
                best = cols.copy()
            return
        cand = []
        for u in range(n):
            if used >> u & 1:
                continue
            col = 0
            for v in assigned:
                col = col << 1 | (adj[u] >> v & 1)
            cand.append((col, inv[u], u))
        cand.sort()
        kept: list[tuple[int, tuple, int]] = []
        for col, key, u in cand:
            twin = any(pcol == col and pkey == key
                       and (adj[u] & ~(1 << pu)) == (adj[pu] & ~(1 << u))
                       for pcol, pkey, pu in kept)
            if not twin:
                kept.append((col, key, u))
        for col, _key, u in kept:
            # prune only when the current prefix ties the best one; any update
            # to best mid-loop comes from a descendant, so the tie test stays
            # valid without recomputing the whole relation
            if (best is not None and depth >= 1
                    and cols == best[:depth - 1] and col > best[depth - 1]):
                break  # candidates are sorted: the rest are worse
            assigned.append(u)
            if depth:
                cols.append(col)
            rec(depth + 1, used | 1 << u)
            if depth:
                cols.pop()
            assigned.pop()

    rec(0, 0)
    assert best is not None
    return best


def automorphism_count(g: Graph) -> int:
    """Order of the automorphism group by direct permutation scan (small n)."""
    n = g.node_count
    if n > 8:
        raise ValueError("automorphism scan intended for n <= 8")
    edges = set(g.edges)
    count = 0
    for perm in itertools.permutations(range(n)):
        if all(((perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])) in edges
               for u, v in edges):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Class filters and generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassFilter:
    n: int
    e: int
    connected: bool | None = None
    biconnected: bool | None = None
    regular: bool | None = None
    min_degree: int | None = None
    degree_sequence: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.e > self.n * (self.n - 1) // 2:
            raise ValueError("more edges than the complete graph allows")
        if self.regular and (2 * self.e) % self.n:
            raise ValueError("regular class needs n dividing 2e")
        if self.degree_sequence is not None:
            if len(self.degree_sequence) != self.n or sum(self.degree_sequence) != 2 * self.e:
                raise ValueError("degree sequence inconsistent with (n, e)")

    def admits(self, g: Graph) -> bool:
        sc = structural_census(g)
        if self.degree_sequence is not None and sc.degree_sequence != self.degree_sequence:
            return False
        if self.min_degree is not None and sc.min_degree < self.min_degree:
            return False
        if self.regular is not None and sc.is_regular != self.regular:
            return False
        if self.connected is not None or self.biconnected is not None:
            cc = connectivity_census(g)
            if self.connected is not None and cc.connected != self.connected:
                return False
            if self.biconnected is not None and cc.biconnected != self.biconnected:
                return False
        return True


def _residual_graphical(res) -> bool:
    return is_graphical([r for r in res if r >= 0]) and all(r >= 0 for r in res)


def _realizations_of_sequence(degrees_desc: tuple[int, ...], budget: list[int]):
    """Labeled realizations of a nonincreasing degree sequence.

    Backtracks over the neighbor set of each node in order.  Candidates that
    are indistinguishable so far (equal residual degree and equal adjacency
    toward processed nodes) form groups, and only prefixes of each group are
    chosen; final canonical deduplication removes what symmetry this misses.
    """
    n = len(degrees_desc)
    res = list(degrees_desc)
    adj = [0] * n
    edges: list[tuple[int, int]] = []

    def rec(i: int):
        while i < n and res[i] == 0:
            i += 1
        if i == n:
            yield Graph(n, edges)
            return
        need = res[i]
        cand = [j for j in range(i + 1, n) if res[j] > 0]
        if len(cand) < need:
            return
        groups: list[list[int]] = []
        keys: list[tuple] = []
        for j in cand:
            key = (res[j], adj[j] & ((1 << i) - 1))
            if keys and keys[-1] == key:
                groups[-1].append(j)
            else:
                keys.append(key)
                groups.append([j])
        sizes = [len(grp) for grp in groups]

        def compositions(g_idx: int, left: int):
            if left == 0:
                yield []
                return
            if g_idx == len(groups):
                return
            hi = min(sizes[g_idx], left)
            lo = max(0, left - sum(sizes[g_idx + 1:]))
            for t in range(hi, lo - 1, -1):
                for rest in compositions(g_idx + 1, left - t):
                    yield [t] + rest

        for comp in compositions(0, need):
            chosen = [j for grp, t in zip(groups, comp) for j in grp[:t]]
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceededError("generation budget exhausted")
            res[i] = 0
            for j in chosen:
                res[j] -= 1
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                edges.append((i, j))
            if _residual_graphical(res[i + 1:]):
                yield from rec(i + 1)
            for j in chosen:
                res[j] += 1
                adj[i] &= ~(1 << j)
                adj[j] &= ~(1 << i)
                edges.pop()
            res[i] = need

    yield from rec(0)


DEFAULT_BUDGET = 5_000_000


def enumerate_class(flt: ClassFilter, budget: int = DEFAULT_BUDGET,
                    backend: str = "degree_sequence") -> list[Graph]:
    """One canonical representative per isomorphism class satisfying the
    filter, ordered by ascending canonical form."""
    if backend == "degree_sequence":
        forms = _enumerate_by_sequences(flt, budget)
    elif backend == "augmentation":
        forms = _enumerate_by_augmentation(flt, budget)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return [decode(f) for f in sorted(forms)]


def _enumerate_by_sequences(flt: ClassFilter, budget: int) -> set[str]:
    min_deg = flt.min_degree or 0
    if flt.connected:
        min_deg = max(min_deg, 1)
    if flt.biconnected:  # a cut-free connected graph on n > 2 nodes has degrees >= 2
        min_deg = max(min_deg, 2 if flt.n > 2 else 1)
    if flt.degree_sequence is not None:
        seqs = [DegreeSequence(flt.degree_sequence)]
    else:
        seqs = graphical_sequences(flt.n, flt.e, min_deg=min_deg)
        if flt.regular:
            seqs = [s for s in seqs if s.degrees[0] == s.degrees[-1]]
    counter = [budget]
    forms: set[str] = set()
    for seq in seqs:
        desc = tuple(sorted(seq.degrees, reverse=True))
        for g in _realizations_of_sequence(desc, counter):
            if flt.admits(g):
                forms.add(canonical_form(g))
    return forms


def _enumerate_by_augmentation(flt: ClassFilter, budget: int) -> set[str]:
    """Level-wise edge augmentation with canonical deduplication.

    When the class is denser than half the complete graph, the complement
    class is generated instead and flipped at the end.
    """
    full = flt.n * (flt.n - 1) // 2
    flip = flt.e > full // 2
    target = full - flt.e if flip else flt.e
    counter = budget
    level = {canonical_form(Graph(flt.n, []))}
    for _ in range(target):
        nxt: set[str] = set()
        for form in level:
            g = decode(form)
            present = set(g.edges)
            for u in range(flt.n):
                for v in range(u + 1, flt.n):
                    if (u, v) in present:
                        continue
                    counter -= 1
                    if counter < 0:
                        raise BudgetExceededError("generation budget exhausted")
                    nxt.add(canonical_form(Graph(flt.n, g.edges + ((u, v),))))
        level = nxt
    out: set[str] = set()
    for form in level:
        g = decode(form)
        if flip:
            from .graph import complement_of
            g = complement_of(g)
        if flt.admits(g):
            out.add(canonical_form(g))
    return out


@dataclass(frozen=True)
class Stratification:
    delta_counts: dict[int, int]
    regular_count: int
    biconnected_count: int
    total: int


def stratify(flt: ClassFilter, budget: int = DEFAULT_BUDGET) -> Stratification:
    delta: dict[int, int] = {}
    regular = 0
    biconnected = 0
    total = 0
    for g in enumerate_class(flt, budget=budget):
        sc = structural_census(g)
        delta[sc.min_degree] = delta.get(sc.min_degree, 0) + 1
        regular += sc.is_regular
        biconnected += connectivity_census(g).biconnected
        total += 1
    return Stratification(delta, regular, biconnected, total)
