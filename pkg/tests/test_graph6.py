import itertools
import random

import networkx as nx
import pytest

from umrg.graph import Graph, complete_bipartite, cycle, moebius, petersen
from umrg.graph6 import decode, encode


def test_roundtrip_named():
    for g in (complete_bipartite(4, 4), cycle(5), moebius(4), petersen(),
              Graph(1, []), Graph(2, [(0, 1)]), Graph(3, [])):
        assert decode(encode(g)) == g


def test_roundtrip_random():
    rng = random.Random(41)
    for n in (1, 2, 6, 9, 14):
        pool = list(itertools.combinations(range(n), 2))
        for _ in range(20):
            g = Graph(n, rng.sample(pool, rng.randint(0, len(pool))))
            assert decode(encode(g)) == g


def test_header_prefix_accepted():
    g = cycle(4)
    assert decode(">>graph6<<" + encode(g)) == g


def test_against_networkx():
    """networkx implements the same format; use it as an independent oracle."""
    rng = random.Random(97)
    for n in (4, 7, 8, 11):
        pool = list(itertools.combinations(range(n), 2))
        for _ in range(10):
            g = Graph(n, rng.sample(pool, rng.randint(0, len(pool))))
            nxg = nx.Graph()
            nxg.add_nodes_from(range(n))
            nxg.add_edges_from(g.edges)
            theirs = nx.to_graph6_bytes(nxg, header=False).decode().strip()
            assert encode(g) == theirs
            back = nx.from_graph6_bytes(encode(g).encode())
            assert sorted(map(tuple, map(sorted, back.edges()))) == list(g.edges)


def test_decode_errors():
    with pytest.raises(ValueError):
        decode("")
    with pytest.raises(ValueError):
        decode("G?")  # truncated body for n=8
    with pytest.raises(ValueError):
        decode("C" + chr(200))  # byte out of range
    with pytest.raises(ValueError):
        decode("G" + "~" * 5 + "w")  # nonzero padding / bad length
