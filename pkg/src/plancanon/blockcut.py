"""Biconnected decomposition: blocks, cut nodes, and the Block-Cut tree.

The Block-Cut tree is bipartite between cut nodes and blocks; a node is a
cut node iff it lies in at least two blocks. Bridges count as single-edge
blocks and an isolated node forms a degenerate one-node block, so the union
of the block node sets is always the whole vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .graph import Graph


@dataclass(frozen=True)
class Block:
    """A maximal biconnected subgraph, a bridge, or an isolated node."""

    id: int
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def is_single_edge(self) -> bool:
        return len(self.edges) == 1

    @property
    def is_isolated_node(self) -> bool:
        return not self.edges


# Tree node references: ("cut", node_id) or ("block", block_id).
TreeNode = tuple[str, int]


@dataclass(frozen=True)
class BlockCutTree:
    cut_nodes: frozenset[int]
    blocks: tuple[Block, ...]
    tree_edges: tuple[tuple[int, int], ...]  # (cut node id, block id)
    root: TreeNode

    def tree_nodes(self) -> list[TreeNode]:
        return [("cut", c) for c in sorted(self.cut_nodes)] + [
            ("block", b.id) for b in self.blocks
        ]

    def adjacency(self) -> dict[TreeNode, list[TreeNode]]:
        adj: dict[TreeNode, list[TreeNode]] = {t: [] for t in self.tree_nodes()}
        for c, b in self.tree_edges:
            adj[("cut", c)].append(("block", b))
            adj[("block", b)].append(("cut", c))
        return adj

    def blocks_of_node(self) -> dict[int, list[int]]:
        """node id -> ids of blocks containing it (pi_u membership lists)."""
        out: dict[int, list[int]] = {}
        for b in self.blocks:
            for v in b.nodes:
                out.setdefault(v, []).append(b.id)
        return out


@dataclass(frozen=True)
class ComponentPiece:
    """A connected component re-labeled to dense ids, with provenance."""

    graph: Graph
    original_ids: tuple[int, ...]  # new id -> original id


def components(g: Graph) -> list[ComponentPiece]:
    """Split into connected components, keeping original-id maps."""
    seen = [False] * g.node_count
    adj = g.adjacency
    pieces: list[ComponentPiece] = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        seen[start] = True
        order = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    order.append(v)
                    stack.append(v)
        order.sort()
        index = {orig: new for new, orig in enumerate(order)}
        edges = tuple(
            (index[u], index[v]) for u, v in g.edges if u in index
        )
        colors = tuple(g.colors[orig] for orig in order)
        pieces.append(ComponentPiece(Graph(len(order), edges, colors), tuple(order)))
    return pieces


def _biconnected_components(g: Graph) -> tuple[list[tuple[tuple[int, int], ...]], set[int]]:
    """Iterative Tarjan: returns per-block edge lists and the cut node set."""
    n = g.node_count
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cut: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    blocks: list[tuple[tuple[int, int], ...]] = []
    timer = 0

    for root in range(n):
        if disc[root] != -1:
            continue
        root_children = 0
        # frame: (vertex, iterator index into adj)
        stack: list[tuple[int, int]] = [(root, 0)]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, i + 1)
                w = adj[v][i]
                if disc[w] == -1:
                    parent[w] = v
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, 0))
                elif w != parent[v] and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        # u closes a block; pop edges down to (u, v)
                        if u == root:
                            root_children += 1
                        blk = []
                        while True:
                            e = edge_stack.pop()
                            blk.append(e)
                            if e == (u, v):
                                break
                        blocks.append(tuple(blk))
                        if u != root:
                            cut.add(u)
        if root_children > 1:
            cut.add(root)
    return blocks, cut


def build_unrooted_tree(g: Graph) -> BlockCutTree:
    """Decompose a connected graph; the root field is a placeholder."""
    if g.node_count < 1:
        raise ValueError("block_cut_tree requires at least one node")
    pieces = components(g)
    if len(pieces) > 1:
        raise ValueError(
            f"graph has {len(pieces)} connected components; process each component separately"
        )

    raw_blocks, cut = _biconnected_components(g)
    blocks: list[Block] = []
    for bid, blk_edges in enumerate(raw_blocks):
        nodes = sorted({v for e in blk_edges for v in e})
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in blk_edges))
        blocks.append(Block(bid, tuple(nodes), edges))
    covered = {v for b in blocks for v in b.nodes}
    next_id = len(blocks)
    for v in range(g.node_count):
        if v not in covered:
            blocks.append(Block(next_id, (v,), ()))
            next_id += 1

    tree_edges = tuple(
        sorted((c, b.id) for b in blocks for c in b.nodes if c in cut)
    )
    return BlockCutTree(frozenset(cut), tuple(blocks), tree_edges, ("block", blocks[0].id))


def block_cut_tree(g: Graph) -> BlockCutTree:
    """Decompose a connected graph and root its Block-Cut tree canonically.

    The root is a centroid of the tree; with two centroids the one whose
    rooted component code is lexicographically smaller wins (computed
    through the canonical-code module, imported lazily to keep the module
    layering acyclic).
    """
    tree = build_unrooted_tree(g)
    root = _canonical_root(g, tree)
    return BlockCutTree(tree.cut_nodes, tree.blocks, tree.tree_edges, root)


def _canonical_root(g: Graph, tree: BlockCutTree) -> TreeNode:
    cands = centroid_candidates(tree.tree_nodes(), [
        (("cut", c), ("block", b)) for c, b in tree.tree_edges
    ])
    if len(cands) == 1:
        return cands[0]
    from . import canon  # deferred: canon builds on this module

    coded = [(canon.code_component(g, tree, root).code, root) for root in cands]
    coded.sort()
    return coded[0][1]


def centroid_candidates(
    tree_nodes: Sequence[Hashable], tree_edges: Sequence[tuple[Hashable, Hashable]]
) -> list:
    """The one or two centroids of a tree, in stable node order."""
    nodes = list(tree_nodes)
    if not nodes:
        raise ValueError("empty tree has no centroid")
    adj: dict[Hashable, list[Hashable]] = {t: [] for t in nodes}
    for a, b in tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    total = len(nodes)
    if len(tree_edges) != total - 1:
        raise ValueError("tree_edges do not form a tree")

    # Iterative post-order for subtree sizes, then max-branch evaluation.
    root = nodes[0]
    order: list = []
    parent: dict = {root: None}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                stack.append(w)
    if len(order) != total:
        raise ValueError("tree_edges do not connect all tree nodes")
    size = {v: 1 for v in nodes}
    for v in reversed(order):
        if parent[v] is not None:
            size[parent[v]] += size[v]

    best: list = []
    best_val = total + 1
    for v in nodes:
        branches = [size[w] for w in adj[v] if parent.get(w) == v]
        if parent[v] is not None:
            branches.append(total - size[v])
        val = max(branches, default=0)
        if val < best_val:
            best_val = val
            best = [v]
        elif val == best_val:
            best.append(v)
    return best


def centroid_root(
    tree_nodes: Sequence[Hashable],
    tree_edges: Sequence[tuple[Hashable, Hashable]],
    choose: Callable[[Sequence[Hashable]], Hashable] | None = None,
) -> Hashable:
    """Return the canonical centroid of a tree.

    With two centroids the caller supplies ``choose`` (canonical choices
    must compare rooted codes; see the canonical-code module).
    """
    cands = centroid_candidates(tree_nodes, tree_edges)
    if len(cands) == 1:
        return cands[0]
    if choose is None:
        raise ValueError("two centroids: a tie-breaking chooser is required")
    return choose(cands)
