"""Simple undirected colored graphs: construction, parsing, permutation.

Nodes are dense ids ``0..n-1``. Colors are non-negative integers (one per
node, defaulting to zero). Graphs are immutable after construction and all
operations here are pure, so values can be shared freely across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class GraphValidationError(ValueError):
    """Raised when graph data violates the structural invariants."""


class Graph6ParseError(ValueError):
    """Raised on malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with integer node colors."""

    node_count: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        n = self.node_count
        if n < 0:
            raise GraphValidationError("node_count must be non-negative")
        norm = []
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphValidationError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge {e} has endpoint outside 0..{n - 1}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise GraphValidationError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(norm))
        if not self.colors:
            object.__setattr__(self, "colors", (0,) * n)
        if len(self.colors) != n:
            raise GraphValidationError(
                f"colors length {len(self.colors)} does not match node count {n}"
            )
        if any(c < 0 for c in self.colors):
            raise GraphValidationError("colors must be non-negative")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(len(a) for a in self.adjacency))


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``0..n-1``, applied as ``old id -> mapping[old id]``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise GraphValidationError("mapping is not a bijection on 0..n-1")

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, node: int) -> int:
        return self.mapping[node]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for old, new in enumerate(self.mapping):
            inv[new] = old
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self after other``: node -> self(other(node))."""
        if len(self) != len(other):
            raise GraphValidationError("permutation lengths differ")
        return Permutation(tuple(self.mapping[other.mapping[i]] for i in range(len(self))))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))


def apply_permutation(g: Graph, p: Permutation) -> Graph:
    """Relabel ``g`` through ``p``, producing an isomorphic graph."""
    if len(p) != g.node_count:
        raise GraphValidationError(
            f"permutation length {len(p)} does not match node count {g.node_count}"
        )
    m = p.mapping
    edges = tuple((m[u], m[v]) for u, v in g.edges)
    colors = [0] * g.node_count
    for old, c in enumerate(g.colors):
        colors[m[old]] = c
    return Graph(g.node_count, edges, tuple(colors))


# ---------------------------------------------------------------------------
# graph6 codec (McKay's format; uncolored graphs, one per line)
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_byte(b: int, offset: int) -> int:
    if not (63 <= b <= 126):
        raise Graph6ParseError(f"invalid graph6 byte {b:#04x}", offset)
    return b - 63


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line into a Graph (colors all zero)."""
    line = text.rstrip("\r\n")
    base = 0
    if line.startswith(">>"):
        if not line.startswith(_G6_HEADER):
            raise Graph6ParseError("malformed graph6 header", 0)
        line = line[len(_G6_HEADER):]
        base = len(_G6_HEADER)
    data = line.encode("ascii", errors="replace")
    if not data:
        raise Graph6ParseError("empty graph6 line", base)

    pos = 0
    first = _g6_byte(data[pos], base + pos)
    pos += 1
    if first != 63:
        n = first
    else:
        if pos >= len(data):
            raise Graph6ParseError("truncated graph6 size field", base + pos)
        if _g6_byte(data[pos], base + pos) == 63:
            pos += 1
            if len(data) < pos + 6:
                raise Graph6ParseError("truncated graph6 size field", base + len(data))
            n = 0
            for k in range(6):
                n = (n << 6) | _g6_byte(data[pos + k], base + pos + k)
            pos += 6
        else:
            if len(data) < pos + 3:
                raise Graph6ParseError("truncated graph6 size field", base + len(data))
            n = 0
            for k in range(3):
                n = (n << 6) | _g6_byte(data[pos + k], base + pos + k)
            pos += 3

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6ParseError(
            f"truncated adjacency data: need {nbytes} bytes, have {len(data) - pos}",
            base + len(data),
        )
    if len(data) - pos > nbytes:
        raise Graph6ParseError("trailing garbage after adjacency data", base + pos + nbytes)

    edges = []
    bit = 0
    cur = 0
    for j in range(1, n):
        for i in range(j):
            if bit % 6 == 0:
                cur = _g6_byte(data[pos + bit // 6], base + pos + bit // 6)
            if (cur >> (5 - bit % 6)) & 1:
                edges.append((i, j))
            bit += 1
    # padding bits must be zero
    while bit < 6 * nbytes:
        if (cur >> (5 - bit % 6)) & 1:
            raise Graph6ParseError("nonzero padding bits", base + pos + bit // 6)
        bit += 1
    return Graph(n, tuple(edges))


def to_graph6(g: Graph) -> str:
    """Encode a graph as one graph6 line (colors are dropped)."""
    n = g.node_count
    out = bytearray()
    if n <= 62:
        out.append(n + 63)
    elif n <= 258047:
        out.append(126)
        for shift in (12, 6, 0):
            out.append(((n >> shift) & 63) + 63)
    else:
        out.append(126)
        out.append(126)
        for shift in (30, 24, 18, 12, 6, 0):
            out.append(((n >> shift) & 63) + 63)
    es = g.edge_set
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in es else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return out.decode("ascii")


# ---------------------------------------------------------------------------
# Edge-list JSON: {"n": int, "edges": [[u, v], ...], "colors": [...] optional}
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Decode one edge-list JSON object into a Graph."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphValidationError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise GraphValidationError("edge-list JSON must be an object")
    if "n" not in obj:
        raise GraphValidationError("missing field 'n'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise GraphValidationError("'n' must be a non-negative integer")
    raw_edges = obj.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphValidationError("'edges' must be a list of pairs")
    edges = []
    for e in raw_edges:
        if (not isinstance(e, list)) or len(e) != 2 or not all(isinstance(x, int) for x in e):
            raise GraphValidationError(f"edge {e!r} is not a pair of integers")
        edges.append((e[0], e[1]))
    colors: tuple[int, ...] = ()
    if "colors" in obj and obj["colors"] is not None:
        raw_colors = obj["colors"]
        if not isinstance(raw_colors, list) or not all(
            isinstance(c, int) and c >= 0 for c in raw_colors
        ):
            raise GraphValidationError("'colors' must be a list of non-negative integers")
        colors = tuple(raw_colors)
    unknown = set(obj) - {"n", "edges", "colors"}
    if unknown:
        raise GraphValidationError(f"unknown fields {sorted(unknown)}")
    return Graph(n, tuple(edges), colors)


def to_edge_list(g: Graph) -> str:
    """Encode a graph as one edge-list JSON line."""
    return json.dumps(
        {"n": g.node_count, "edges": [list(e) for e in g.edges], "colors": list(g.colors)},
        separators=(",", ":"),
    )


def from_adjacency(n: int, pairs: Iterable[Sequence[int]], colors: Sequence[int] = ()) -> Graph:
    """Convenience constructor from any iterable of (u, v) pairs."""
    return Graph(n, tuple((p[0], p[1]) for p in pairs), tuple(colors))
