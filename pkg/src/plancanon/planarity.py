"""Planarity testing and combinatorial embeddings (rotation systems).

An embedding is stored as a rotation system: per node, the cyclic order of
outgoing darts. Each undirected edge ``i`` contributes darts ``2i`` (u->v)
and ``2i+1`` (v->u); ``dart ^ 1`` is the reverse dart. Faces are traced with
the convention ``face_next(d) = rotation successor of reverse(d)`` at the
head of ``d``; for a connected planar embedding the traced faces satisfy
Euler's formula V - E + F = 2.

The planarity decision itself is delegated to networkx's left-right test,
which also yields the embedding and, on failure, a Kuratowski subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .graph import Graph


class NotPlanarError(ValueError):
    """Raised for non-planar inputs; carries a Kuratowski witness edge set."""

    def __init__(self, message: str, witness_edges: tuple[tuple[int, int], ...] = ()):
        super().__init__(message)
        self.witness_edges = witness_edges


@dataclass(frozen=True)
class Dart:
    """A directed half-edge."""

    id: int
    tail: int
    head: int

    @property
    def reverse_id(self) -> int:
        return self.id ^ 1


class RotationSystem:
    """Immutable combinatorial embedding of a connected graph.

    ``rotations[v]`` lists the outgoing dart ids at ``v`` in cyclic order.
    ``edge_of(d) == d // 2`` recovers the undirected edge index.
    """

    def __init__(
        self,
        node_count: int,
        edge_endpoints: tuple[tuple[int, int], ...],
        rotations: tuple[tuple[int, ...], ...],
    ):
        self.node_count = node_count
        self.edge_endpoints = edge_endpoints
        self.rotations = rotations
        seen: set[int] = set()
        rot_next: dict[int, int] = {}
        for v, rot in enumerate(rotations):
            for d in rot:
                if d in seen:
                    raise ValueError(f"dart {d} appears twice in rotations")
                seen.add(d)
                if self.dart_tail(d) != v:
                    raise ValueError(f"dart {d} listed at node {v} but has tail {self.dart_tail(d)}")
            for i, d in enumerate(rot):
                rot_next[d] = rot[(i + 1) % len(rot)]
        if len(seen) != 2 * len(edge_endpoints):
            raise ValueError("every dart must appear exactly once across rotations")
        self._rot_next = rot_next

    # -- dart geometry ---------------------------------------------------

    def dart_tail(self, d: int) -> int:
        u, v = self.edge_endpoints[d // 2]
        return u if d % 2 == 0 else v

    def dart_head(self, d: int) -> int:
        u, v = self.edge_endpoints[d // 2]
        return v if d % 2 == 0 else u

    def dart(self, d: int) -> Dart:
        return Dart(d, self.dart_tail(d), self.dart_head(d))

    @property
    def dart_count(self) -> int:
        return 2 * len(self.edge_endpoints)

    def rotation_next(self, d: int) -> int:
        return self._rot_next[d]

    def face_next(self, d: int) -> int:
        """Next dart along the face to the traversal side of ``d``."""
        return self._rot_next[d ^ 1]

    # -- derived structure -------------------------------------------------

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """All faces as dart cycles; partitions the dart set."""
        seen = [False] * self.dart_count
        out: list[tuple[int, ...]] = []
        for d0 in range(self.dart_count):
            if seen[d0]:
                continue
            cyc = []
            d = d0
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = self.face_next(d)
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def check_euler(self) -> bool:
        return self.node_count - len(self.edge_endpoints) + self.face_count == 2


def mirror(rs: RotationSystem) -> RotationSystem:
    """Reflect the embedding: every rotation reversed. An involution."""
    return RotationSystem(
        rs.node_count,
        rs.edge_endpoints,
        tuple(tuple(reversed(rot)) for rot in rs.rotations),
    )


def _to_networkx(g: Graph) -> nx.Graph:
    ng = nx.Graph()
    ng.add_nodes_from(range(g.node_count))
    ng.add_edges_from(g.edges)
    return ng


def is_planar(g: Graph) -> bool:
    """True iff the graph admits a crossing-free drawing in the plane."""
    # Euler bound rejects dense graphs without running the full test.
    if g.node_count >= 3 and g.edge_count > 3 * g.node_count - 6:
        return False
    ok, _ = nx.check_planarity(_to_networkx(g), counterexample=False)
    return ok


def _is_connected(g: Graph) -> bool:
    if g.node_count == 0:
        return True
    seen = [False] * g.node_count
    stack = [0]
    seen[0] = True
    count = 1
    adj = g.adjacency
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == g.node_count


def embed(g: Graph) -> RotationSystem:
    """Compute a rotation system for a connected planar graph.

    Raises NotPlanarError (with a best-effort Kuratowski subdivision witness)
    on non-planar input and ValueError on disconnected input.
    """
    if not _is_connected(g):
        raise ValueError("embed requires a connected graph; embed components separately")
    ng = _to_networkx(g)
    ok, emb = nx.check_planarity(ng, counterexample=False)
    if not ok:
        _, bad = nx.check_planarity(ng, counterexample=True)
        witness = tuple(sorted((min(u, v), max(u, v)) for u, v in bad.edges()))
        raise NotPlanarError("graph is not planar", witness)

    dart_id: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(g.edges):
        dart_id[(u, v)] = 2 * i
        dart_id[(v, u)] = 2 * i + 1
    rotations = []
    for v in range(g.node_count):
        if g.adjacency[v]:
            order = list(emb.neighbors_cw_order(v))
        else:
            order = []
        rotations.append(tuple(dart_id[(v, w)] for w in order))
    return RotationSystem(g.node_count, g.edges, tuple(rotations))


def rotation_system_from_orders(
    g: Graph, orders: dict[int, list[int]] | list[list[int]]
) -> RotationSystem:
    """Build a rotation system from explicit neighbor orders (tests, tools)."""
    dart_id: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(g.edges):
        dart_id[(u, v)] = 2 * i
        dart_id[(v, u)] = 2 * i + 1
    rotations = []
    for v in range(g.node_count):
        order = orders[v]
        rotations.append(tuple(dart_id[(v, w)] for w in order))
    return RotationSystem(g.node_count, g.edges, tuple(rotations))
