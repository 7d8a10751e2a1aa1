"""Seeded dataset generators: cubic planar graphs on 10 nodes, random
planar graphs, random trees, and permutation scrambles.

All generators are deterministic functions of their seed (Mersenne Twister
via ``random.Random``), so repeated runs emit byte-identical graphs.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from itertools import combinations

from .canon import graph_code
from .graph import Graph, Permutation, apply_permutation
from .iso import brute_force_isomorphic
from .planarity import is_planar

_VALID_KINDS = ("p3r", "random_planar", "random_tree", "scramble")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int = 1
    m: int | None = None  # target edge count (random_planar only)
    seed: int = 0
    count: int = 1

    def __post_init__(self) -> None:
        if self.kind not in _VALID_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.kind == "random_planar" and self.m is not None:
            if self.n >= 3 and self.m > 3 * self.n - 6:
                raise ValueError(f"m={self.m} exceeds the planar bound 3n-6={3 * self.n - 6}")
            if self.n < 3 and self.m > self.n - 1:
                raise ValueError(f"m={self.m} exceeds {self.n - 1} for n={self.n}")


def _derived_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


# ---------------------------------------------------------------------------
# Random trees (Pruefer decoding, uniform over labeled trees)
# ---------------------------------------------------------------------------

def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def gen_random_tree(n: int, seed: int, count: int = 1) -> list[Graph]:
    return [
        Graph(n, tuple(_random_tree_edges(n, _derived_rng(seed, i))))
        for i in range(count)
    ]


# ---------------------------------------------------------------------------
# Random connected planar graphs
# ---------------------------------------------------------------------------

class _EmbeddedGrower:
    """Mutable rotation-system embedding supporting chord insertion.

    A chord (u, v) is accepted when u and v lie on a common face of the
    current embedding; inserting it there keeps the graph planar by
    construction. Dart 2i runs tail->head of edge i, dart 2i+1 back.
    """

    def __init__(self, n: int, tree_edges: list[tuple[int, int]]):
        self.n = n
        self.edges: list[tuple[int, int]] = []
        self.rot_next: list[int] = []
        self.adjacent: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in tree_edges:
            adj[u].append(v)
            adj[v].append(u)
        dart_of: dict[tuple[int, int], int] = {}
        for i, (u, v) in enumerate(tree_edges):
            self.edges.append((u, v))
            self.adjacent.add((min(u, v), max(u, v)))
            dart_of[(u, v)] = 2 * i
            dart_of[(v, u)] = 2 * i + 1
        self.rot_next = [0] * (2 * len(tree_edges))
        self.out_darts: list[list[int]] = [[] for _ in range(n)]
        for v in range(n):
            darts = [dart_of[(v, w)] for w in adj[v]]
            self.out_darts[v] = list(darts)
            for i, d in enumerate(darts):
                self.rot_next[d] = darts[(i + 1) % len(darts)]
        self.face_of: list[int] = []
        self.face_members: dict[int, set[int]] = {}
        self.face_arrival: dict[int, dict[int, int]] = {}
        self.next_face = 0
        self._trace_all_faces()

    def _tail(self, d: int) -> int:
        u, v = self.edges[d // 2]
        return u if d % 2 == 0 else v

    def _head(self, d: int) -> int:
        u, v = self.edges[d // 2]
        return v if d % 2 == 0 else u

    def _face_next(self, d: int) -> int:
        return self.rot_next[d ^ 1]

    def _trace_all_faces(self) -> None:
        nd = 2 * len(self.edges)
        self.face_of = [-1] * nd
        for d0 in range(nd):
            if self.face_of[d0] == -1:
                self._trace_face(d0)

    def _trace_face(self, d0: int) -> int:
        fid = self.next_face
        self.next_face += 1
        members: set[int] = set()
        arrival: dict[int, int] = {}
        d = d0
        while True:
            self.face_of[d] = fid
            h = self._head(d)
            members.add(h)
            arrival.setdefault(h, d)
            d = self._face_next(d)
            if d == d0:
                break
        self.face_members[fid] = members
        self.face_arrival[fid] = arrival
        return fid

    def common_face(self, u: int, v: int) -> int | None:
        for d in self.out_darts[u]:
            fid = self.face_of[d]
            if v in self.face_members[fid]:
                return fid
        return None

    def insert_chord(self, u: int, v: int, fid: int) -> None:
        pu = self.face_arrival[fid][u]
        pv = self.face_arrival[fid][v]
        eid = len(self.edges)
        self.edges.append((u, v))
        self.adjacent.add((min(u, v), max(u, v)))
        a, b = 2 * eid, 2 * eid + 1  # a: u->v, b: v->u
        self.rot_next.extend([0, 0])
        # splice a after reverse(pu) at u, b after reverse(pv) at v
        self.rot_next[a] = self.rot_next[pu ^ 1]
        self.rot_next[pu ^ 1] = a
        self.rot_next[b] = self.rot_next[pv ^ 1]
        self.rot_next[pv ^ 1] = b
        self.out_darts[u].append(a)
        self.out_darts[v].append(b)
        del self.face_members[fid]
        del self.face_arrival[fid]
        self.face_of.extend([-1, -1])
        self._trace_face(a)
        self._trace_face(b)


def _one_random_planar(n: int, m: int, rng: random.Random) -> Graph:
    tree = _random_tree_edges(n, rng)
    if n < 3 or m <= n - 1:
        return Graph(n, tuple(tree))
    grower = _EmbeddedGrower(n, tree)
    attempts_left = 10 * m
    edges_now = n - 1
    while edges_now < m and attempts_left > 0:
        attempts_left -= 1
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        if (min(u, v), max(u, v)) in grower.adjacent:
            continue
        fid = grower.common_face(u, v)
        if fid is None:
            continue
        grower.insert_chord(u, v, fid)
        edges_now += 1
    return Graph(n, tuple(grower.edges))


def gen_random_planar(spec: GenSpec) -> list[Graph]:
    """Connected planar graphs with ``n`` nodes and at most ``m`` edges."""
    if spec.kind != "random_planar":
        raise ValueError("spec kind must be 'random_planar'")
    m = spec.m if spec.m is not None else max(spec.n - 1, min(2 * spec.n, 3 * spec.n - 6))
    return [
        _one_random_planar(spec.n, m, _derived_rng(spec.seed, i))
        for i in range(spec.count)
    ]


def scramble(g: Graph, seed: int) -> tuple[Graph, Permutation]:
    """Apply a seeded uniform permutation; returns the image and the map."""
    rng = random.Random(seed)
    mapping = list(range(g.node_count))
    rng.shuffle(mapping)
    p = Permutation(tuple(mapping))
    return apply_permutation(g, p), p


# ---------------------------------------------------------------------------
# All connected 3-regular planar graphs on 10 nodes (one per class)
# ---------------------------------------------------------------------------

def _cubic_graphs_10(progress: bool = False):
    """Yield candidate edge tuples of cubic graphs on 10 labeled vertices.

    Vertex 0's neighborhood is pinned to {1, 2, 3}; every cubic graph admits
    such a labeling, so no isomorphism class is lost.
    """
    n = 10
    base = [(0, 1), (0, 2), (0, 3)]
    need0 = [0, 2, 2, 2, 3, 3, 3, 3, 3, 3]

    def backtrack(v: int, need: list[int], edges: list[tuple[int, int]]):
        if v == n:
            if all(x == 0 for x in need):
                yield tuple(edges)
            return
        k = need[v]
        later = [w for w in range(v + 1, n) if need[w] > 0]
        if k > len(later):
            return
        if k == 0:
            # capacity check: remaining needs must be coverable later
            yield from backtrack(v + 1, need, edges)
            return
        for combo in combinations(later, k):
            for w in combo:
                need[w] -= 1
            need[v] = 0
            ok = True
            rest = [x for x in range(v + 1, n)]
            for w in rest:
                if need[w] > sum(1 for x in rest if x != w and need[x] > 0):
                    ok = False
                    break
            if ok:
                yield from backtrack(v + 1, need, edges + [(v, w) for w in combo])
            for w in combo:
                need[w] += 1
            need[v] = k

    yield from backtrack(1, list(need0), list(base))


def _is_connected_edges(n: int, edges) -> bool:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def gen_p3r(cross_check: bool = True) -> list[Graph]:
    """All connected 3-regular planar graphs on 10 nodes, one per class.

    Deduplication uses canonical codes; with ``cross_check`` every code
    decision is confirmed against the brute-force oracle.
    """
    reps: list[Graph] = []
    codes: dict = {}
    for edges in _cubic_graphs_10():
        if not _is_connected_edges(10, edges):
            continue
        g = Graph(10, edges)
        if not is_planar(g):
            continue
        code = graph_code(g)
        match = codes.get(code)
        if match is None:
            if cross_check:
                for r in reps:
                    if brute_force_isomorphic(g, r):
                        raise AssertionError(
                            "code dedup disagrees with oracle: new code but isomorphic"
                        )
            codes[code] = g
            reps.append(g)
        elif cross_check and not brute_force_isomorphic(g, match):
            raise AssertionError(
                "code dedup disagrees with oracle: same code but non-isomorphic"
            )
    return reps
