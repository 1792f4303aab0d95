"""graph6 encoding and decoding for graphs with at most 62 nodes.

The format packs the upper-triangle adjacency bits in column order
(0,1), (0,2), (1,2), (0,3), ... into 6-bit groups, each stored as one
printable byte offset by 63.  The leading byte encodes the node count.
"""

from __future__ import annotations

from .graph import Graph

_HEADER = ">>graph6<<"


def upper_triangle_bits(g: Graph) -> list[int]:
    """Adjacency bits in graph6 column order."""
    return [1 if g.has_edge(u, v) else 0
            for v in range(1, g.node_count)
            for u in range(v)]


def encode(g: Graph) -> str:
    if g.node_count > 62:
        raise ValueError("graph6 n-encoding implemented for n <= 62 only")
    out = [chr(g.node_count + 63)]
    bitbuf = upper_triangle_bits(g)
    while len(bitbuf) % 6:
        bitbuf.append(0)
    for i in range(0, len(bitbuf), 6):
        group = 0
        for b in bitbuf[i:i + 6]:
            group = group << 1 | b
        out.append(chr(group + 63))
    return "".join(out)


def decode(s: str) -> Graph:
    s = s.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise ValueError("empty graph6 string")
    n = ord(s[0]) - 63
    if not 0 <= n <= 62:
        raise ValueError(f"unsupported graph6 node count byte {s[0]!r}")
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)}, expected {need} for n={n}")
    bitbuf = []
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ValueError(f"invalid graph6 byte {ch!r}")
        bitbuf.extend((val >> k) & 1 for k in range(5, -1, -1))
    edges = []
    pos = 0
    for v in range(1, n):
        for u in range(v):
            if bitbuf[pos]:
                edges.append((u, v))
            pos += 1
    if any(bitbuf[pos:]):
        raise ValueError("nonzero padding bits in graph6 string")
    return Graph(n, edges)


def write_graph6_lines(graphs, fh) -> None:
    for g in graphs:
        fh.write(encode(g) + "\n")


def read_graph6_lines(fh) -> list[Graph]:
    return [decode(line) for line in fh if line.strip()]
