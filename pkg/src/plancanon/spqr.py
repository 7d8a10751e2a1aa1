"""SPQR trees: unique decomposition of biconnected blocks into typed skeletons.

Construction follows the classical recursive split-pair scheme (quadratic
worst case, near-linear on typical sparse planar inputs):

1. batch reductions: parallel edge classes become bonds, maximal degree-2
   chains become cycles, each replaced by a paired virtual edge;
2. on the remaining simple min-degree-3 fragment, separation pairs are read
   off a planar embedding: a pair is separating iff its two vertices share
   at least two faces (non-adjacent) or at least three faces (adjacent) --
   both directions hold for simple biconnected planar embeddings, where
   every face boundary is a simple cycle and the separation classes form
   contiguous arcs of the rotation around each of the two vertices;
3. fragments are split at such a pair into per-class pieces glued through a
   central bond, and the resulting atoms are merged (cycle+cycle,
   bond+bond) into the canonical S/P/Q/R tree.

Skeleton edges are either real (original block edges) or virtual; every
virtual edge has exactly one partner with the same endpoints in an adjacent
tree node, identified by a shared pair id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .blockcut import Block, centroid_candidates
from .graph import Graph
from .planarity import embed

REAL = "real"
VIRTUAL = "virtual"


class SpqrIntegrityError(ValueError):
    """Raised when a tree violates SPQR structural invariants."""


@dataclass(frozen=True)
class SkeletonEdge:
    u: int
    v: int
    kind: str  # REAL or VIRTUAL
    pair: int | None = None  # pairing ref for virtual edges

    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


@dataclass(frozen=True)
class Skeleton:
    nodes: tuple[int, ...]
    edges: tuple[SkeletonEdge, ...]

    def real_edges(self) -> list[tuple[int, int]]:
        return [e.endpoints() for e in self.edges if e.kind == REAL]

    def virtual_edges(self) -> list[SkeletonEdge]:
        return [e for e in self.edges if e.kind == VIRTUAL]

    def degree_map(self) -> dict[int, int]:
        deg = {v: 0 for v in self.nodes}
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def is_simple(self) -> bool:
        pairs = [e.endpoints() for e in self.edges]
        return len(pairs) == len(set(pairs))


@dataclass(frozen=True)
class SpqrNode:
    id: int
    kind: str  # "S", "P", "Q", "R"
    skeleton: Skeleton


@dataclass(frozen=True)
class SpqrTree:
    """SPQR tree of one block. Skeletons are unrooted; orientation of the
    tree edges is derived from the stored canonical root."""

    nodes: tuple[SpqrNode, ...]
    pairs: tuple[tuple[int, int, int], ...]  # (pair id, node id a, node id b)
    root: int

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """node id -> list of (neighbor node id, pair id)."""
        adj: dict[int, list[tuple[int, int]]] = {n.id: [] for n in self.nodes}
        for pid, a, b in self.pairs:
            adj[a].append((b, pid))
            adj[b].append((a, pid))
        return adj

    def rooted_edges(self, root: int | None = None) -> tuple[tuple[int, int, int], ...]:
        """Oriented tree edges (parent id, child id, pair id) from ``root``."""
        r = self.root if root is None else root
        adj = self.adjacency()
        out: list[tuple[int, int, int]] = []
        seen = {r}
        stack = [r]
        while stack:
            a = stack.pop()
            for b, pid in adj[a]:
                if b not in seen:
                    seen.add(b)
                    out.append((a, b, pid))
                    stack.append(b)
        return tuple(out)

    @property
    def tree_edges(self) -> tuple[tuple[int, int, int], ...]:
        return self.rooted_edges()

    def node_by_id(self, node_id: int) -> SpqrNode:
        return self.nodes[node_id]


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

# Working edge: (u, v, kind, pair_id). Fragments are lists of such tuples.
_WEdge = tuple[int, int, str, int | None]


class _Builder:
    def __init__(self) -> None:
        self.atoms: list[list[_WEdge]] = []
        self.next_pair = 0

    def new_pair(self) -> int:
        p = self.next_pair
        self.next_pair += 1
        return p

    def emit(self, edges: list[_WEdge]) -> None:
        self.atoms.append(edges)


def _fragment_adjacency(edges: list[_WEdge]) -> dict[int, list[tuple[int, _WEdge]]]:
    adj: dict[int, list[tuple[int, _WEdge]]] = {}
    for e in edges:
        adj.setdefault(e[0], []).append((e[1], e))
        adj.setdefault(e[1], []).append((e[0], e))
    return adj


def _contract_parallels(edges: list[_WEdge], builder: _Builder) -> list[_WEdge] | None:
    """Replace every parallel class by a virtual edge + bond atom."""
    groups: dict[tuple[int, int], list[_WEdge]] = {}
    for e in edges:
        key = (e[0], e[1]) if e[0] < e[1] else (e[1], e[0])
        groups.setdefault(key, []).append(e)
    if all(len(g) == 1 for g in groups.values()):
        return None
    out: list[_WEdge] = []
    for (u, v), group in sorted(groups.items()):
        if len(group) == 1:
            out.append(group[0])
        else:
            pid = builder.new_pair()
            builder.emit(group + [(u, v, VIRTUAL, pid)])
            out.append((u, v, VIRTUAL, pid))
    return out


def _contract_chains(edges: list[_WEdge], builder: _Builder) -> list[_WEdge] | None:
    """Replace every maximal degree-2 chain by a virtual edge + cycle atom.

    Requires a simple fragment that is not itself a cycle.
    """
    adj = _fragment_adjacency(edges)
    deg2 = {v for v, inc in adj.items() if len(inc) == 2}
    if not deg2:
        return None
    used: set[int] = set()
    removed: set[_WEdge] = set()  # edge values are unique within a simple fragment
    new_edges: list[_WEdge] = []
    for start in sorted(deg2):
        if start in used:
            continue
        used.add(start)
        walks: list[list[_WEdge]] = []
        ends: list[int] = []
        for nbr, e in adj[start]:
            path = [e]
            cur = nbr
            while cur in deg2 and cur not in used:
                used.add(cur)
                (n1, e1), (n2, e2) = adj[cur]
                if e1 != path[-1]:
                    cur, path = n1, path + [e1]
                else:
                    cur, path = n2, path + [e2]
            walks.append(path)
            ends.append(cur)
        u, v = ends
        if u == v:
            raise SpqrIntegrityError("degree-2 chain closes on itself; fragment not biconnected")
        # walks run start->u and start->v; the chain is u..start..v
        chain = list(reversed(walks[0])) + walks[1]
        pid = builder.new_pair()
        builder.emit(chain + [(u, v, VIRTUAL, pid)])
        new_edges.append((u, v, VIRTUAL, pid))
        removed.update(chain)
    out = [e for e in edges if e not in removed]
    out.extend(new_edges)
    return out


def _find_separation_pair(
    verts: list[int], edges: list[_WEdge]
) -> tuple[int, int] | None:
    """Face-sharing criterion on a simple, biconnected, min-degree-3 fragment."""
    index = {v: i for i, v in enumerate(verts)}
    pairs = sorted({(index[e[0]], index[e[1]]) if index[e[0]] < index[e[1]] else (index[e[1]], index[e[0]]) for e in edges})
    g = Graph(len(verts), tuple(pairs))
    rs = embed(g)
    face_verts: list[list[int]] = [
        [rs.dart_tail(d) for d in face] for face in rs.faces
    ]
    faces_of: list[list[int]] = [[] for _ in range(len(verts))]
    for fid, fv in enumerate(face_verts):
        for x in fv:
            faces_of[x].append(fid)
    adjacent = g.edge_set
    for x in range(len(verts)):
        count: dict[int, int] = {}
        for fid in faces_of[x]:
            for y in face_verts[fid]:
                if y == x:
                    continue
                c = count.get(y, 0) + 1
                count[y] = c
                if c >= 3:
                    return verts[x], verts[y]
                if c == 2 and ((x, y) if x < y else (y, x)) not in adjacent:
                    return verts[x], verts[y]
    return None


def _separation_classes(
    edges: list[_WEdge], u: int, v: int
) -> tuple[list[list[_WEdge]], list[_WEdge]]:
    """Split edges into per-component classes w.r.t. {u, v} plus direct edges."""
    direct: list[_WEdge] = []
    comp_of: dict[int, int] = {}
    adj = _fragment_adjacency(edges)
    comp = 0
    for w in adj:
        if w in (u, v) or w in comp_of:
            continue
        comp_of[w] = comp
        stack = [w]
        while stack:
            a = stack.pop()
            for b, _ in adj[a]:
                if b in (u, v) or b in comp_of:
                    continue
                comp_of[b] = comp
                stack.append(b)
        comp += 1
    classes: list[list[_WEdge]] = [[] for _ in range(comp)]
    for e in edges:
        a, b = e[0], e[1]
        if {a, b} == {u, v}:
            direct.append(e)
        elif a in (u, v):
            classes[comp_of[b]].append(e)
        else:
            classes[comp_of[a]].append(e)
    return classes, direct


def _decompose(block_edges: list[_WEdge], builder: _Builder) -> None:
    work = [block_edges]
    while work:
        edges = work.pop()
        while True:
            adj = _fragment_adjacency(edges)
            verts = sorted(adj)
            if len(verts) == 2:
                builder.emit(edges)  # bond
                break
            if all(len(inc) == 2 for inc in adj.values()):
                builder.emit(edges)  # cycle
                break
            reduced = _contract_parallels(edges, builder)
            if reduced is not None:
                edges = reduced
                continue
            reduced = _contract_chains(edges, builder)
            if reduced is not None:
                edges = reduced
                continue
            pair = _find_separation_pair(verts, edges)
            if pair is None:
                builder.emit(edges)  # rigid (triconnected)
                break
            u, v = pair
            classes, direct = _separation_classes(edges, u, v)
            if len(classes) + len(direct) < 2 or (
                len(classes) == 1 and len(direct) == 1
            ):
                raise SpqrIntegrityError(
                    f"face criterion returned a non-separating pair ({u}, {v})"
                )
            if len(classes) == 2 and not direct:
                p = builder.new_pair()
                a, b = classes
                work.append(a + [(u, v, VIRTUAL, p)])
                work.append(b + [(u, v, VIRTUAL, p)])
            else:
                bond: list[_WEdge] = list(direct)
                for cls in classes:
                    p = builder.new_pair()
                    bond.append((u, v, VIRTUAL, p))
                    work.append(cls + [(u, v, VIRTUAL, p)])
                builder.emit(bond)
            break


def _atom_kind(edges: list[_WEdge]) -> str:
    verts = {e[0] for e in edges} | {e[1] for e in edges}
    if len(verts) == 2:
        return "Q" if len(edges) == 1 else "P"
    deg: dict[int, int] = {}
    for e in edges:
        deg[e[0]] = deg.get(e[0], 0) + 1
        deg[e[1]] = deg.get(e[1], 0) + 1
    if all(d == 2 for d in deg.values()):
        return "S"
    return "R"


def _merge_atoms(atoms: list[list[_WEdge]]) -> list[list[_WEdge]]:
    """Merge adjacent same-kind S or P atoms across their shared pair."""
    parent = list(range(len(atoms)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_pair: dict[int, list[int]] = {}
    for i, edges in enumerate(atoms):
        for e in edges:
            if e[2] == VIRTUAL:
                by_pair.setdefault(e[3], []).append(i)

    kinds = [_atom_kind(e) for e in atoms]
    drop_pairs: set[int] = set()
    for pid, owners in sorted(by_pair.items()):
        if len(owners) != 2:
            raise SpqrIntegrityError(f"virtual pair {pid} has {len(owners)} sides")
        a, b = find(owners[0]), find(owners[1])
        if a == b:
            raise SpqrIntegrityError(f"virtual pair {pid} joins an atom to itself")
        if kinds[a] == kinds[b] and kinds[a] in ("S", "P"):
            parent[b] = a
            drop_pairs.add(pid)

    merged: dict[int, list[_WEdge]] = {}
    for i, edges in enumerate(atoms):
        r = find(i)
        merged.setdefault(r, []).extend(
            e for e in edges if not (e[2] == VIRTUAL and e[3] in drop_pairs)
        )
    return [merged[r] for r in sorted(merged)]


def spqr_tree(block: Block) -> SpqrTree:
    """Build the SPQR tree of a biconnected block (or single-edge bridge)."""
    if not block.edges:
        raise ValueError("spqr_tree requires a block with at least one edge")
    if len(block.edges) == 1:
        u, v = block.edges[0]
        skel = Skeleton((u, v) if u < v else (v, u), (SkeletonEdge(u, v, REAL),))
        return SpqrTree((SpqrNode(0, "Q", skel),), (), 0)
    _check_biconnected(block)

    builder = _Builder()
    initial: list[_WEdge] = [(u, v, REAL, None) for u, v in block.edges]
    _decompose(initial, builder)
    atoms = _merge_atoms(builder.atoms)

    nodes: list[SpqrNode] = []
    pair_owner: dict[int, list[int]] = {}
    for nid, edges in enumerate(atoms):
        verts = tuple(sorted({e[0] for e in edges} | {e[1] for e in edges}))
        skel_edges = tuple(
            SkeletonEdge(e[0], e[1], e[2], e[3])
            for e in sorted(edges, key=lambda e: (min(e[0], e[1]), max(e[0], e[1]), e[2], -1 if e[3] is None else e[3]))
        )
        kind = _atom_kind(edges)
        nodes.append(SpqrNode(nid, kind, Skeleton(verts, skel_edges)))
        for e in edges:
            if e[2] == VIRTUAL:
                pair_owner.setdefault(e[3], []).append(nid)
    pairs = tuple(
        (pid, owners[0], owners[1]) for pid, owners in sorted(pair_owner.items())
    )
    _check_invariants(nodes, pairs)

    tree = SpqrTree(tuple(nodes), pairs, 0)
    root = _canonical_root(tree)
    return SpqrTree(tree.nodes, tree.pairs, root)


def _canonical_root(tree: SpqrTree) -> int:
    ids = [n.id for n in tree.nodes]
    cands = centroid_candidates(ids, [(a, b) for _, a, b in tree.pairs])
    if len(cands) == 1:
        return cands[0]
    from . import canon  # deferred: canon builds on this module

    return canon.canonical_spqr_root(tree, cands)


def _check_biconnected(block: Block) -> None:
    adj: dict[int, list[int]] = {v: [] for v in block.nodes}
    for u, v in block.edges:
        adj[u].append(v)
        adj[v].append(u)
    verts = list(block.nodes)
    if any(not adj[v] for v in verts):
        raise ValueError("block has an isolated node")
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    disc[0] = low[0] = 0
    timer = 1
    root_children = 0
    art = False
    stack = [(0, 0)]
    while stack:
        vi, it = stack[-1]
        nbrs = adj[verts[vi]]
        if it < len(nbrs):
            stack[-1] = (vi, it + 1)
            wi = index[nbrs[it]]
            if disc[wi] == -1:
                parent[wi] = vi
                if vi == 0:
                    root_children += 1
                disc[wi] = low[wi] = timer
                timer += 1
                stack.append((wi, 0))
            elif wi != parent[vi] and disc[wi] < low[vi]:
                low[vi] = disc[wi]
        else:
            stack.pop()
            if stack:
                ui = stack[-1][0]
                if low[vi] < low[ui]:
                    low[ui] = low[vi]
                if parent[ui] != -1 and low[vi] >= disc[ui]:
                    art = True
    if timer != n:
        raise ValueError("block subgraph is disconnected")
    if art or root_children > 1:
        raise ValueError("block is not biconnected")


def _check_invariants(nodes: list[SpqrNode], pairs: Iterable[tuple[int, int, int]]) -> None:
    by_id = {n.id: n for n in nodes}
    for pid, a, b in pairs:
        ka, kb = by_id[a].kind, by_id[b].kind
        if ka == kb and ka in ("S", "P"):
            raise SpqrIntegrityError(f"adjacent {ka} nodes across pair {pid}")
    for n in nodes:
        deg = n.skeleton.degree_map()
        if n.kind == "S":
            if len(n.skeleton.edges) < 3 or any(d != 2 for d in deg.values()):
                raise SpqrIntegrityError(f"S node {n.id} is not a cycle of length >= 3")
        elif n.kind == "P":
            if len(n.skeleton.nodes) != 2 or len(n.skeleton.edges) < 3:
                raise SpqrIntegrityError(f"P node {n.id} is not a dipole with >= 3 edges")
        elif n.kind == "Q":
            if len(n.skeleton.edges) != 1 or n.skeleton.edges[0].kind != REAL:
                raise SpqrIntegrityError(f"Q node {n.id} is not a single real edge")
        else:
            if not n.skeleton.is_simple() or len(n.skeleton.nodes) < 4:
                raise SpqrIntegrityError(f"R node {n.id} is not simple triconnected")
            if any(d < 3 for d in deg.values()):
                raise SpqrIntegrityError(f"R node {n.id} has a vertex of degree < 3")


def glue(tree: SpqrTree) -> Block:
    """Reassemble the block from its skeletons by matching virtual pairs."""
    pair_sides: dict[int, list[tuple[int, int]]] = {}
    real: list[tuple[int, int]] = []
    nodes: set[int] = set()
    for n in tree.nodes:
        nodes.update(n.skeleton.nodes)
        for e in n.skeleton.edges:
            if e.kind == REAL:
                real.append(e.endpoints())
            else:
                if e.pair is None:
                    raise SpqrIntegrityError("virtual edge without pair id")
                pair_sides.setdefault(e.pair, []).append(e.endpoints())
    for pid, sides in pair_sides.items():
        if len(sides) != 2:
            raise SpqrIntegrityError(f"dangling virtual edge for pair {pid}")
        if sides[0] != sides[1]:
            raise SpqrIntegrityError(f"pair {pid} endpoints disagree: {sides}")
    real_sorted = tuple(sorted(real))
    for a, b in zip(real_sorted, real_sorted[1:]):
        if a == b:
            raise SpqrIntegrityError(f"real edge {a} appears in two skeletons")
    return Block(0, tuple(sorted(nodes)), real_sorted)
