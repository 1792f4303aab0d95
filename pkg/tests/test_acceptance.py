"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s`.  Frozen integers were
produced by the independent oracles exercised in the unit-test modules
(subset-loop spectra, spanning-tree enumeration, labeled brute-force class
counts); two strict-xfail pins at the bottom record anticipated constants
that honest recomputation contradicts.
"""

import random
import time
from math import comb

import pytest

from umrg.bounds import BoundContext, g, union_lower_bound
from umrg.enumeration import canonical_form
from umrg.graph import Graph, complete_bipartite
from umrg.graph6 import decode, encode
from umrg.spectrum import (cutset_spectrum, monte_carlo_unreliability,
                           spanning_trees_by_enumeration, unreliability)

K44_SPECTRUM = (0, 0, 0, 0, 8, 96, 544, 1888, 4446, 7344,
                8008, 4368, 1820, 560, 120, 16, 1)
N_STAR = 1290


def _report(num: int, ok: bool, note: str = ""):
    line = f"acceptance criterion {num:02d}: {'PASS' if ok else 'FAIL'}"
    if note:
        line += f"  ({note})"
    print(line)
    assert ok, line


def test_criterion_01_k44_spectrum_exact():
    t0 = time.perf_counter()
    spec = cutset_spectrum(complete_bipartite(4, 4))
    elapsed = time.perf_counter() - t0
    tau = spanning_trees_by_enumeration(complete_bipartite(4, 4))
    ok = (spec.m[:4] == (0, 0, 0, 0)
          and spec.m[4:9] == (8, 96, 544, 1888, 4446)
          and tau == 4096
          and spec.m[9] == comb(16, 9) - tau == 7344
          and all(spec.m[k] == comb(16, k) for k in range(10, 17))
          and spec.m == K44_SPECTRUM
          and elapsed < 1.0)
    _report(1, ok, f"spectrum in {elapsed * 1000:.0f} ms")


def test_criterion_02_exhaustive_certificate(universe, members, k44_report,
                                             consistency_report):
    k44 = cutset_spectrum(complete_bipartite(4, 4))
    dominance = all(
        all(k44.m[k] <= mem.spectrum.m[k] for k in range(17)) for mem in members)
    ok = (len(members) == N_STAR
          and consistency_report.details["backend_agreement"]
          and dominance
          and k44_report.passed
          and universe.build_seconds <= 900.0)
    _report(2, ok, f"{len(members)} classes, built in {universe.build_seconds:.0f} s")


def test_criterion_03_regular_bounds(regular_report):
    rows = regular_report.details["members"]
    tight = [r for r in rows if r["girth"] == 4]
    others = [r for r in rows if r["girth"] != 4]
    ok = (regular_report.passed
          and len(rows) == 6
          and len(tight) == 1
          and tight[0]["t"] == 0 and tight[0]["c"] == 36
          and tight[0]["bounds"] == tight[0]["spectrum_5_8"] == [96, 544, 1888, 4446]
          and all(b <= s for r in rows for b, s in zip(r["bounds"], r["spectrum_5_8"]))
          and all(r["m8_gap"] >= 66 for r in others))
    _report(3, ok, f"gaps {sorted(r['m8_gap'] for r in others)}")


def test_criterion_04_table1_reproduction():
    def ref(k, i):  # empty binomials are zero
        return comb(16 - i, k - i) if 0 <= k - i <= 16 - i else 0

    ok = all(g(k, i, 16) == ref(k, i) for k in range(5, 9) for i in range(1, 7))
    _report(4, ok, "24 cells")


def test_criterion_05_bound_soundness(members):
    rng = random.Random(20260809)
    violations = 0
    for _ in range(1000):
        mem = members[rng.randrange(len(members))]
        size = rng.randint(1, 8)
        nodes = rng.sample(range(8), size)
        k = rng.randint(5, 8)
        truth = mem.spectrum.m[k]
        ctx = BoundContext.from_graph(mem.graph, nodes, k)
        exact = union_lower_bound(ctx).bound_value
        degs = BoundContext.from_degrees(ctx.degrees, k)
        plain = union_lower_bound(degs, mode="degrees-only").bound_value
        refined = union_lower_bound(degs, mode="refined").bound_value
        if not (plain <= refined <= exact <= truth):
            violations += 1
    _report(5, violations == 0, f"{violations} violations in 1000 triples")


EXPECTED_MATCHES = {
    "delta2.k8.v2ge2": [4719],
    "delta2.k8.seq_2_3_4": [4595],
    "delta2.k8.seq_2_4_4": [4505],
    "delta2.k8.v2eq1.v3ge2": [4587],
    "delta3.k8.v3eq4.v4ge1.refined": [4676],
    "delta3.k8.v3eq3.v4ge3": [4599],
    "delta3.k8.seq_33344555": [4461],
    "delta3.k567.v3ge3": [231, 825, 1980],
    "delta3.k567.v3eq1": [150, 676, 1960],
    "delta3.k8.v3ge5": [4560],
}

EXPECTED_FLAGS = {
    "delta3.k567.v3eq2.k5": (191, 203),
    "delta3.k567.v3eq2.k6": (753, 819),
    "delta3.k567.v3eq2.k7": (1972, 2192),
    "delta3.k8.v3eq4.v4eq0.k8": (4514, 4522),
    "extension_table.k6.i3": (364, 286),
    "pair_cut_table.3,4": (168, 120),
}


def test_criterion_06_lemma_constants_audit(lemma2_report, lemma3_report,
                                            tables_report):
    audits = {a["id"]: a for a in (lemma2_report.details["case_audits"]
                                   + lemma3_report.details["case_audits"])}
    matched = all(audits[cid]["recomputed"] == want and audits[cid]["claimed"] == want
                  for cid, want in EXPECTED_MATCHES.items())
    # the 4663/4615 pair sits in one min-form claim
    seq46 = audits["delta3.k8.seq_33444446"]
    matched = matched and seq46["recomputed"] == [4615] and not any(
        d.location.startswith("delta3.k8.seq_33444446")
        for d in lemma3_report.discrepancies)
    flags = {d.location: d for rep in (lemma2_report, lemma3_report, tables_report)
             for d in rep.discrepancies}
    flagged = all(loc in flags
                  and flags[loc].claimed_value == paper
                  and flags[loc].recomputed_value == recomputed
                  for loc, (paper, recomputed) in EXPECTED_FLAGS.items())
    # the chain reproducing 4505, and the displayed-coefficient footnote
    chain_ok = (tables_report.details["oracle_rows"]["delta3.chain.seq_33444455"]["total"]
                == 4505)
    coeff_note = "delta2.k8.seq_2_4_4.k8.displayed_coefficients" in flags
    conclusions = lemma2_report.passed and lemma3_report.passed
    ok = matched and flagged and chain_ok and coeff_note and conclusions
    _report(6, ok, f"{len(EXPECTED_MATCHES) + 1} matched, {len(flags)} flagged")


def test_criterion_07_cross_algorithm_agreement(consistency_report):
    ok = (consistency_report.passed
          and consistency_report.graphs_checked == N_STAR
          and consistency_report.details["small_tree_cross_checked"] == 142)
    _report(7, ok, "decomposition, Gray-code, and tree-count routes agree")


def test_criterion_08_biconnected_reduction(biconnected_report):
    ok = (biconnected_report.passed
          and biconnected_report.details["non_biconnected"] == 176
          and not biconnected_report.witnesses)
    _report(8, ok, f"{biconnected_report.details['non_biconnected']} reducible classes")


def test_criterion_09_monte_carlo_sanity():
    k44 = complete_bipartite(4, 4)
    spec = cutset_spectrum(k44)
    rhos = (0.1, 0.3, 0.5, 0.7, 0.9)
    exact = {rho: unreliability(spec, rho) for rho in rhos}
    bad_seeds = []
    for seed in range(20):
        hits = 0
        for rho in rhos:
            res = monte_carlo_unreliability(k44, rho, 10 ** 5, seed=seed)
            if abs(res.estimate - exact[rho]) <= 3 * res.std_error:
                hits += 1
        if hits < 4:
            bad_seeds.append(seed)
    _report(9, not bad_seeds, f"bad seeds: {bad_seeds}")


def test_criterion_10_graph6_and_canonical_stability(members):
    ok = all(decode(mem.graph6) == mem.graph and encode(mem.graph) == mem.graph6
             for mem in members)
    rng = random.Random(1031)
    sample = [members[rng.randrange(len(members))] for _ in range(50)]
    for mem in sample:
        want = canonical_form(mem.graph)
        for _ in range(100):
            perm = list(range(8))
            rng.shuffle(perm)
            relabeled = Graph(8, [(perm[u], perm[v]) for u, v in mem.graph.edges])
            if canonical_form(relabeled) != want:
                ok = False
    _report(10, ok, "round-trip on all classes; 50x100 relabelings stable")


# ---------------------------------------------------------------------------
# Pinned spec-expectation deviations (analysis in the repository notes).
# Strict xfail: if either ever starts passing, the pin must be revisited.
# ---------------------------------------------------------------------------

@pytest.mark.xfail(strict=True,
                   reason="the printed (3,3,3,3,5,5,5,5) case value 4514 does not "
                          "survive recomputation: its own term list evaluates to "
                          "4522, so the audit flags it instead of matching")
def test_criterion_06_pin_expected_match_4514(lemma3_report):
    assert not [d for d in lemma3_report.discrepancies
                if d.location.startswith("delta3.k8.v3eq4.v4eq0")]


@pytest.mark.xfail(strict=True,
                   reason="3*g_6(3) - 3*g_6(5) recomputes to exactly the printed 825; "
                          "the anticipated 1059 arises only from the misprinted "
                          "k=6,i=3 table cell (364 for 286), which is flagged instead")
def test_criterion_06_pin_expected_flag_825(lemma3_report):
    assert [d for d in lemma3_report.discrepancies
            if d.location == "delta3.k567.v3ge3.k6"]
