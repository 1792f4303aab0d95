import itertools
import random
from math import comb

import pytest

from umrg.bounds import (BoundContext, MixConstraint, edge_cut_term, g,
                         intersection_size, minimize_edge_sum,
                         regular_lower_bounds, union_lower_bound)
from umrg.graph import Graph, complete_bipartite, cycle, moebius
from umrg.spectrum import count_cutsets_containing, cutset_spectrum

K44 = complete_bipartite(4, 4)


def test_g_values_and_conventions():
    assert g(5, 1, 16) == 1365
    assert g(8, 6, 16) == 45
    assert g(5, 6, 16) == 0
    for k in range(5, 9):
        assert g(k, k, 16) == 1
    assert g(3, 0, 10) == comb(10, 3)
    with pytest.raises(ValueError):
        g(5, 17, 16)
    with pytest.raises(ValueError):
        g(5, -1, 16)


def test_g_nonincreasing_in_i():
    for k in range(5, 9):
        vals = [g(k, i, 16) for i in range(0, 17)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_intersection_size_exact_formula():
    ctx = BoundContext.from_graph(K44, [0, 4], 8)  # adjacent pair, degrees 4,4
    assert intersection_size(ctx, [0, 1]) == g(8, 4 + 4 - 1, 16)
    ctx2 = BoundContext.from_graph(K44, [0, 1], 8)  # same side, non-adjacent
    assert intersection_size(ctx2, [0, 1]) == g(8, 8, 16)
    assert intersection_size(ctx2, [0]) == g(8, 4, 16)
    with pytest.raises(ValueError):
        intersection_size(BoundContext.from_degrees([4, 4], 8), [0, 1])


def test_intersection_size_against_cutset_oracle():
    """The closed form counts exactly the k-cutsets containing the union of
    the chosen stars."""
    rng = random.Random(61)
    graphs = [K44, moebius(4), cycle(6)]
    for graph in graphs:
        n = graph.node_count
        e = graph.edge_count
        for _ in range(12):
            size = rng.randint(1, 3)
            nodes = rng.sample(range(n), size)
            k = rng.randint(1, min(e, 9))
            ctx = BoundContext.from_graph(graph, nodes, k)
            forced = 0
            for v in nodes:
                forced |= graph.incident_edges(v)
            want = count_cutsets_containing(graph, forced, 0, k)
            got = intersection_size(ctx, range(len(nodes)))
            assert got == want, (nodes, k)


def test_union_bound_paper_constants():
    assert union_lower_bound(BoundContext.from_degrees([2], 5)).bound_value == 364
    assert union_lower_bound(BoundContext.from_degrees([2], 6)).bound_value == 1001
    assert union_lower_bound(BoundContext.from_degrees([2], 7)).bound_value == 2002
    assert union_lower_bound(BoundContext.from_degrees([2, 2], 8)).bound_value == 4719
    got = union_lower_bound(BoundContext.from_degrees([3, 3, 3], 6))
    assert got.bound_value == 825
    plain = union_lower_bound(BoundContext.from_degrees([2, 3, 4, 4, 4], 8),
                              mode="degrees-only")
    assert plain.bound_value == 4595
    refined = union_lower_bound(BoundContext.from_degrees([2, 4, 4, 4, 4], 8),
                                mode="refined")
    assert refined.bound_value == 4505


def test_union_bound_ledger_consistency():
    rep = union_lower_bound(BoundContext.from_degrees([2, 3, 4], 8))
    assert rep.bound_value == sum(t.sign * t.value for t in rep.ledger)
    assert all(t.value == g(8, t.argument, 16) for t in rep.ledger)
    payload = rep.to_json()
    assert '"mode"' in payload and '"ledger"' in payload


def test_union_bound_mode_ordering():
    """degrees-only <= refined <= exact <= truth on concrete graphs."""
    spec = cutset_spectrum(K44)
    for nodes in ([0], [0, 4], [0, 1, 4], [0, 1, 2, 4, 5], list(range(8))):
        for k in (5, 6, 7, 8):
            ctx = BoundContext.from_graph(K44, nodes, k)
            exact = union_lower_bound(ctx).bound_value
            degs = BoundContext.from_degrees(ctx.degrees, k)
            plain = union_lower_bound(degs, mode="degrees-only").bound_value
            refined = union_lower_bound(degs, mode="refined").bound_value
            assert plain <= refined <= exact <= spec.m[k]


def test_union_bound_truncation():
    ctx = BoundContext.from_graph(K44, list(range(8)), 8)
    full = union_lower_bound(ctx).bound_value
    trunc = union_lower_bound(ctx, truncate_level=2).bound_value
    spec = cutset_spectrum(K44)
    assert trunc <= spec.m[8] and full <= spec.m[8]
    with pytest.raises(ValueError):
        union_lower_bound(ctx, truncate_level=3)


def test_union_bound_exact_is_exact_union():
    """Full expansion equals a direct count of the union of star-supersets."""
    rng = random.Random(77)
    for graph in (cycle(5), moebius(3), K44):
        e = graph.edge_count
        for _ in range(8):
            size = rng.randint(1, min(4, graph.node_count))
            nodes = rng.sample(range(graph.node_count), size)
            k = rng.randint(2, min(8, e))
            stars = [graph.incident_edges(v) for v in nodes]
            want = 0
            for combo in itertools.combinations(range(e), k):
                s = 0
                for i in combo:
                    s |= 1 << i
                if any(st & ~s == 0 for st in stars):
                    want += 1
            got = union_lower_bound(BoundContext.from_graph(graph, nodes, k))
            assert got.bound_value == want


def test_regular_lower_bounds():
    assert regular_lower_bounds(0, 36, girth_four=True) == (96, 544, 1888, 4446)
    assert regular_lower_bounds(1, 0) == (96, 544, 1888, 4512)
    assert regular_lower_bounds(1, 20) == (96, 544, 1888, 4522)
    with pytest.raises(ValueError):
        regular_lower_bounds(2, 0)
    with pytest.raises(ValueError):
        regular_lower_bounds(0, -1)
    with pytest.raises(ValueError):
        regular_lower_bounds(0, 35, girth_four=True)


def test_edge_cut_term_candidates():
    t = edge_cut_term(3, 4, 8)
    assert (t.formula_value, t.corrected_value, t.table_value) == (10, 120, 168)
    t = edge_cut_term(3, 5, 8)
    assert (t.corrected_value, t.table_value) == (36, 36)
    t = edge_cut_term(4, 4, 8)
    assert (t.corrected_value, t.table_value) == (36, 36)
    t = edge_cut_term(4, 5, 8)
    assert (t.corrected_value, t.table_value) == (8, 8)
    assert edge_cut_term(4, 5, 7).table_value is None
    with pytest.raises(ValueError):
        edge_cut_term(0, 4, 8)


def test_edge_cut_term_corrected_matches_oracle():
    from umrg.graph import boundary, induced_edge_mask, mask_of
    # adjacent (4,4) pair in the bipartite optimum
    bnd = boundary(K44, mask_of([0, 4]))
    inner = induced_edge_mask(K44, mask_of([0, 4]))
    for k in (6, 7, 8, 9):
        oracle = count_cutsets_containing(K44, bnd, inner, k)
        assert oracle == edge_cut_term(4, 4, k).corrected_value


def test_minimize_edge_sum_instances():
    objective = (168, 36, 36, 8)
    first = minimize_edge_sum(objective,
                              [MixConstraint((1, 1, 0, 0), allowed=frozenset({5, 6}))])
    assert (first.a, first.b, first.c, first.d, first.value) == (0, 5, 0, 11, 268)
    second = minimize_edge_sum(objective,
                               [MixConstraint((1, 1, 0, 0), allowed=frozenset({3})),
                                MixConstraint((0, 0, 0, 1), hi=5)])
    assert (second.a, second.b, second.c, second.d, second.value) == (0, 3, 8, 5, 436)
    with pytest.raises(ValueError):
        minimize_edge_sum(objective,
                          [MixConstraint((1, 1, 1, 1), allowed=frozenset({99}))])


def test_minimize_edge_sum_scan_matches_bruteforce():
    rng = random.Random(19)
    for _ in range(10):
        objective = tuple(rng.randint(1, 20) for _ in range(4))
        lo = rng.randint(0, 8)
        cons = [MixConstraint((1, 0, 1, 0), lo=lo)]
        got = minimize_edge_sum(objective, cons, total=10)
        best = None
        for a in range(11):
            for b in range(11 - a):
                for c in range(11 - a - b):
                    d = 10 - a - b - c
                    if a + c < lo:
                        continue
                    val = sum(w * x for w, x in zip(objective, (a, b, c, d)))
                    if best is None or val < best:
                        best = val
        assert got.value == best


def test_context_validation():
    with pytest.raises(ValueError):
        BoundContext.from_degrees([0, 3], 8)
    with pytest.raises(ValueError):
        BoundContext.from_degrees([], 8)
    with pytest.raises(ValueError):
        union_lower_bound(BoundContext.from_degrees([3] * 8, 8),
                          mode="degrees-only", truncate_level=2)


def test_intersection_sandwich():
    """g_k(sum deg) <= exact intersection <= g_k(sum deg - min(k, pairs))."""
    rng = random.Random(83)
    for graph in (K44, moebius(4), cycle(6)):
        e = graph.edge_count
        for _ in range(20):
            size = rng.randint(1, min(4, graph.node_count))
            nodes = rng.sample(range(graph.node_count), size)
            k = rng.randint(1, min(e, 10))
            ctx = BoundContext.from_graph(graph, nodes, k)
            subset = range(size)
            mid = intersection_size(ctx, subset)
            total = sum(ctx.degrees)
            lo = g(k, min(total, e), e)
            hi_arg = max(total - min(k, comb(size, 2)), 0)
            hi = g(k, min(hi_arg, e), e)
            assert lo <= mid <= hi
