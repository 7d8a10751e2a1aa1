"""Canonical codes for planar graphs.

Codes are assembled bottom-up: skeleton codes (cycle, dipole, single-edge,
triconnected-walk) combine into block codes over the centroid-rooted SPQR
tree, where each child subtree is prefixed with an attachment number theta
locating its shared virtual edge in the parent skeleton's canonical order.
Block codes combine into a component code over the centroid-rooted
Block-Cut tree: a cut node's subtree code frames the node's own color and
its sorted child block codes, and then shadows the node's label inside the
parent block. Component codes concatenate in sorted order.

Equality of these codes is a complete isomorphism invariant for planar
graphs (exercised exhaustively in the test suite at small orders).
"""

from __future__ import annotations

from dataclasses import dataclass

from .blockcut import (
    Block,
    BlockCutTree,
    ComponentPiece,
    TreeNode,
    build_unrooted_tree,
    centroid_candidates,
    components,
)
from .codes import COMMA, LPAREN, RPAREN, Code, wrap, wrap_tokens
from .graph import Graph
from .planarity import NotPlanarError, is_planar
from .spqr import REAL, Skeleton, SkeletonEdge, SpqrNode, SpqrTree, spqr_tree
from .weinberg import TriCodeResult, Walk, tri_code_candidates

LabelMap = dict[int, Code]


def leaf_code(color: int) -> Code:
    """Base label of a bare node: its color wrapped in parens."""
    if color < 0:
        raise ValueError("colors must be non-negative")
    return wrap(color)


def uniform_labels(nodes) -> LabelMap:
    zero = leaf_code(0)
    return {v: zero for v in nodes}


# ---------------------------------------------------------------------------
# Skeleton codes
# ---------------------------------------------------------------------------

def _cycle_order(skel: Skeleton) -> tuple[list[int], dict[tuple[int, int], int]]:
    """Vertices of a cycle skeleton in traversal order + edge kind lookup."""
    deg = skel.degree_map()
    if len(skel.edges) < 3 or any(d != 2 for d in deg.values()) or not skel.is_simple():
        raise ValueError("skeleton is not a simple cycle of length >= 3")
    adj: dict[int, list[int]] = {v: [] for v in skel.nodes}
    kinds: dict[tuple[int, int], int] = {}
    for e in skel.edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
        kinds[e.endpoints()] = 0 if e.kind == REAL else 1
    start = min(skel.nodes)
    order = [start, min(adj[start])]
    while len(order) < len(skel.nodes):
        a, b = adj[order[-1]]
        order.append(a if a != order[-2] else b)
    return order, kinds


def _booth_least_rotation(seq: list) -> int:
    """Booth's algorithm: index of the lexicographically least rotation."""
    s = seq + seq
    n = len(s)
    f = [-1] * n
    k = 0
    for j in range(1, n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % len(seq)


def _all_minimal_rotations(seq: list) -> list[int]:
    """All start indices whose rotation equals the least rotation."""
    n = len(seq)
    if n == 0:
        return []
    k = _booth_least_rotation(seq)
    target = seq[k:] + seq[:k]
    # Z-match target against the doubled sequence.
    sentinel = object()
    s = target + [sentinel] + seq + seq[: n - 1]
    z = [0] * len(s)
    left = right = 0
    for i in range(1, len(s)):
        if i < right:
            z[i] = min(right - i, z[i - left])
        while i + z[i] < len(s) and s[z[i]] is not sentinel and s[z[i]] == s[i + z[i]]:
            z[i] += 1
        if i + z[i] > right:
            left, right = i, i + z[i]
    return [p for p in range(n) if z[n + 1 + p] >= n]


def s_code_candidates(
    skel: Skeleton, labels: LabelMap
) -> tuple[Code, list[list[int]]]:
    """Minimal cycle code and all vertex orderings attaining it."""
    order, kinds = _cycle_order(skel)
    k = len(order)

    def items_for(seq: list[int]) -> list[tuple[int, ...]]:
        out = []
        for i, v in enumerate(seq):
            w = seq[(i + 1) % k]
            kind = kinds[(v, w) if v < w else (w, v)]
            out.append(labels[v].tokens + (COMMA, kind))
        return out

    orderings = []
    best_code: Code | None = None
    for seq in (order, [order[0]] + list(reversed(order[1:]))):
        items = items_for(seq)
        for start in _all_minimal_rotations(items):
            rotated = seq[start:] + seq[:start]
            code = wrap_tokens(items[start:] + items[:start])
            if best_code is None or code < best_code:
                best_code = code
                orderings = [rotated]
            elif code == best_code:
                orderings.append(rotated)
    assert best_code is not None
    # Drop duplicate orderings (identical vertex sequences).
    seen = set()
    unique = []
    for seq in orderings:
        key = tuple(seq)
        if key not in seen:
            seen.add(key)
            unique.append(seq)
    return best_code, unique


def s_code(skel: Skeleton, labels: LabelMap | None = None) -> Code:
    """Cycle code: minimum over both directions and all rotations of the
    concatenated (label, edge-kind) stream."""
    if labels is None:
        labels = uniform_labels(skel.nodes)
    return s_code_candidates(skel, labels)[0]


def p_code(skel: Skeleton, labels: LabelMap | None = None) -> Code:
    """Dipole code: sorted endpoint labels, edge count, sorted edge kinds."""
    if len(skel.nodes) != 2 or len(skel.edges) < 3:
        raise ValueError("skeleton is not a dipole with >= 3 parallel edges")
    if labels is None:
        labels = uniform_labels(skel.nodes)
    a, b = skel.nodes
    la, lb = sorted((labels[a], labels[b]))
    kinds = sorted(0 if e.kind == REAL else 1 for e in skel.edges)
    return wrap(la, lb, len(skel.edges), *kinds)


def q_code(skel: Skeleton, labels: LabelMap | None = None) -> Code:
    """Single-edge code: sorted endpoint labels."""
    if len(skel.edges) != 1 or len(skel.nodes) != 2:
        raise ValueError("skeleton is not a single edge")
    if labels is None:
        labels = uniform_labels(skel.nodes)
    a, b = skel.nodes
    la, lb = sorted((labels[a], labels[b]))
    return wrap(la, lb)


# ---------------------------------------------------------------------------
# Attachment numbers and rooted SPQR subtree codes
# ---------------------------------------------------------------------------

def _cycle_edge_positions(order: list[int]) -> dict[tuple[int, int], int]:
    """1-based position of each cycle edge in a vertex ordering."""
    k = len(order)
    pos = {}
    for i in range(k):
        u, w = order[i], order[(i + 1) % k]
        pos[(u, w) if u < w else (w, u)] = i + 1
    return pos


def _walk_edge_positions(walk: Walk, edge_pairs) -> dict[tuple[int, int], int]:
    """1-based first-traversal position of each edge in a walk."""
    pos: dict[tuple[int, int], int] = {}
    for j, d in enumerate(walk.darts):
        pair = edge_pairs[d // 2]
        if pair not in pos:
            pos[pair] = j + 1
    return pos


def theta(parent: SpqrNode, child_edge: SkeletonEdge, labels: LabelMap | None = None) -> int:
    """Attachment number of a child virtual edge in the parent's canonical order.

    P and Q parents are attachment-symmetric and always yield 0. For S and R
    parents the number is the 1-based position of the edge in the minimal
    cycle ordering / minimizing walk; among equally minimal orderings the
    deterministic first is used here (block coding additionally minimizes the
    assembled subtree code over all of them).
    """
    if child_edge not in parent.skeleton.edges:
        raise ValueError("edge is not part of the parent skeleton")
    if parent.kind in ("P", "Q"):
        return 0
    if labels is None:
        labels = uniform_labels(parent.skeleton.nodes)
    key = child_edge.endpoints()
    if parent.kind == "S":
        _, orderings = s_code_candidates(parent.skeleton, labels)
        return _cycle_edge_positions(orderings[0])[key]
    result = tri_code_candidates(parent.skeleton, labels)
    dense_pairs = _dense_to_orig_pairs(parent.skeleton, result)
    return _walk_edge_positions(result.walks[0], dense_pairs)[key]


def _dense_to_orig_pairs(skel: Skeleton, result: TriCodeResult) -> list[tuple[int, int]]:
    orig = sorted(skel.nodes)
    return [(min(orig[a], orig[b]), max(orig[a], orig[b])) for a, b in result.edge_pairs]


@dataclass
class SpqrNodeCoding:
    skeleton_code: Code
    subtree_code: Code
    children: tuple[tuple[int, int, int], ...]  # (child node id, pair id, theta)
    omega: tuple[int, ...] | None = None  # canonical walk (R) or closed cycle (S)
    kappa: tuple[int, ...] | None = None


# Orientation of a node's parent virtual edge: (s, t) original ids, or None
# at the root. Child codes are computed per orientation because the glue
# direction matters: swapping the two shared vertices flips every sibling
# subtree consistently, so the relative orientation must survive coding.
_Orient = tuple[int, int] | None


@dataclass
class _OrientedCoding:
    skeleton_code: Code
    subtree_code: Code
    children: tuple[tuple[int, int, int, tuple[int, int]], ...]  # (+ child orientation)
    omega: tuple[int, ...] | None
    kappa: tuple[int, ...] | None


def _s_candidates_for(
    skel: Skeleton, labels: LabelMap, orient: _Orient
) -> list[list[int]]:
    """Cycle vertex orderings to consider: one induced by the oriented parent
    edge, or all minimal rotations at the root."""
    if orient is None:
        _, orderings = s_code_candidates(skel, labels)
        return orderings
    s, t = orient
    order, _ = _cycle_order(skel)
    k = len(order)
    idx = {v: i for i, v in enumerate(order)}
    if s not in idx or t not in idx:
        raise ValueError("oriented parent edge is not on the cycle")
    i, j = idx[s], idx[t]
    # sequence starts at t, walks away from the parent edge, ends at s
    if (i + 1) % k == j:
        seq = [order[(j + d) % k] for d in range(k)]
    elif (j + 1) % k == i:
        seq = [order[(j - d) % k] for d in range(k)]
    else:
        raise ValueError("oriented parent edge is not a cycle edge")
    return [seq]


def _cycle_stream(seq: list[int], kinds: dict[tuple[int, int], int], labels: LabelMap) -> Code:
    k = len(seq)
    items = []
    for i, v in enumerate(seq):
        w = seq[(i + 1) % k]
        items.append(labels[v].tokens + (COMMA, kinds[(v, w) if v < w else (w, v)]))
    return wrap_tokens(items)


def _code_spqr_rooted(
    tree: SpqrTree, root: int, labels: LabelMap
) -> tuple[Code, dict[int, SpqrNodeCoding]]:
    adj = tree.adjacency()
    order: list[int] = [root]
    parent: dict[int, int | None] = {root: None}
    parent_pid: dict[int, int] = {}
    child_map: dict[int, list[tuple[int, int]]] = {n.id: [] for n in tree.nodes}
    for a in order:
        for b, pid in adj[a]:
            if b not in parent:
                parent[b] = a
                parent_pid[b] = pid
                child_map[a].append((b, pid))
                order.append(b)

    # oriented[(nid, orient)] -> _OrientedCoding
    oriented: dict[tuple[int, _Orient], _OrientedCoding] = {}

    for nid in reversed(order):
        node = tree.nodes[nid]
        skel = node.skeleton
        children = child_map[nid]
        pid_endpoints = {e.pair: e.endpoints() for e in skel.edges if e.kind != REAL}
        if nid == root:
            orients: list[_Orient] = [None]
        else:
            u, v = pid_endpoints[parent_pid[nid]]
            orients = [(u, v), (v, u)]
        for orient in orients:
            oriented[(nid, orient)] = _code_spqr_oriented(
                node, skel, children, pid_endpoints, labels, orient, oriented
            )

    # Select the winning oriented records top-down into per-node codings.
    codings: dict[int, SpqrNodeCoding] = {}
    stack: list[tuple[int, _Orient]] = [(root, None)]
    while stack:
        nid, orient = stack.pop()
        rec = oriented[(nid, orient)]
        codings[nid] = SpqrNodeCoding(
            rec.skeleton_code,
            rec.subtree_code,
            tuple((c, pid, th) for c, pid, th, _ in rec.children),
            rec.omega,
            rec.kappa,
        )
        for c, _, _, corient in rec.children:
            stack.append((c, corient))

    return oriented[(root, None)].subtree_code, codings


def _code_spqr_oriented(
    node: SpqrNode,
    skel: Skeleton,
    children: list[tuple[int, int]],
    pid_endpoints: dict[int, tuple[int, int]],
    labels: LabelMap,
    orient: _Orient,
    oriented: dict[tuple[int, _Orient], "_OrientedCoding"],
) -> "_OrientedCoding":
    """One node's subtree code for a fixed parent-edge orientation.

    Candidates are the skeleton orders consistent with the orientation (all
    orders at the root); each candidate assigns every child an attachment
    number theta and a glue orientation, and the assembled code is minimized
    over candidates.
    """
    # Each candidate: (skeleton stream code, {pid: theta}, {pid: child orient},
    #                  omega, kappa)
    candidates: list[tuple[Code, dict[int, int], dict[int, tuple[int, int]],
                           tuple[int, ...] | None, tuple[int, ...] | None]] = []

    if node.kind == "Q":
        if orient is None:
            skel_code = q_code(skel, labels)
        else:
            s, t = orient
            skel_code = wrap(labels[s], labels[t])
        candidates.append((skel_code, {}, {}, None, None))
    elif node.kind == "P":
        a, b = skel.nodes
        kinds = sorted(0 if e.kind == REAL else 1 for e in skel.edges)
        pole_orders = [(a, b), (b, a)] if orient is None else [orient]
        for s, t in pole_orders:
            skel_code = wrap(labels[s], labels[t], len(skel.edges), *kinds)
            thetas = {pid: 0 for _, pid in children}
            corients = {pid: (s, t) for _, pid in children}
            candidates.append((skel_code, thetas, corients, None, None))
    elif node.kind == "S":
        _, edge_kinds = _cycle_order(skel)
        for seq in _s_candidates_for(skel, labels, orient):
            k = len(seq)
            skel_code = _cycle_stream(seq, edge_kinds, labels)
            pos = _cycle_edge_positions(seq)
            dirs: dict[tuple[int, int], tuple[int, int]] = {}
            for i in range(k):
                u, w = seq[i], seq[(i + 1) % k]
                dirs[(u, w) if u < w else (w, u)] = (u, w)
            thetas = {pid: pos[pid_endpoints[pid]] for _, pid in children}
            corients = {pid: dirs[pid_endpoints[pid]] for _, pid in children}
            candidates.append(
                (skel_code, thetas, corients,
                 tuple(seq) + (seq[0],), tuple(range(1, k + 1)) + (1,))
            )
    else:  # R
        start_pairs = None if orient is None else [orient]
        result = tri_code_candidates(skel, labels, start_pairs)
        orig_of = result.node_map
        for w in result.walks:
            thetas: dict[int, int] = {}
            corients: dict[int, tuple[int, int]] = {}
            first: dict[tuple[int, int], tuple[int, tuple[int, int]]] = {}
            for j, d in enumerate(w.darts):
                da, db = result.edge_pairs[d // 2]
                tail, head = (da, db) if d % 2 == 0 else (db, da)
                key = (orig_of[da], orig_of[db]) if da < db else (orig_of[db], orig_of[da])
                if key not in first:
                    first[key] = (j + 1, (orig_of[tail], orig_of[head]))
            for _, pid in children:
                th, direction = first[pid_endpoints[pid]]
                thetas[pid] = th
                corients[pid] = direction
            candidates.append((result.code, thetas, corients, w.omega, w.kappa))

    best: _OrientedCoding | None = None
    seen = set()
    for skel_code, thetas, corients, omega, kappa in candidates:
        dedupe_key = (skel_code.tokens, tuple(sorted(thetas.items())),
                      tuple(sorted(corients.items())))
        if dedupe_key in seen:
            continue
        seen.add(dedupe_key)
        if not children:
            cand_code = skel_code
            detail: tuple = ()
        else:
            pairs_sorted = sorted(
                (
                    (oriented[(c, corients[pid])].subtree_code, thetas[pid]),
                    (c, pid),
                )
                for c, pid in children
            )
            items = [skel_code.tokens]
            det = []
            for (ccode, th), (c, pid) in pairs_sorted:
                items.append((LPAREN, th, COMMA) + ccode.tokens + (RPAREN,))
                det.append((c, pid, th, corients[pid]))
            cand_code = wrap_tokens(items)
            detail = tuple(det)
        if best is None or cand_code < best.subtree_code:
            best = _OrientedCoding(skel_code, cand_code, detail, omega, kappa)
    assert best is not None
    return best


def canonical_spqr_root(
    tree: SpqrTree, candidates: list[int] | None = None, labels: LabelMap | None = None
) -> int:
    """Centroid of the SPQR tree; two-centroid ties pick the smaller rooted code."""
    if candidates is None:
        candidates = centroid_candidates(
            [n.id for n in tree.nodes], [(a, b) for _, a, b in tree.pairs]
        )
    if len(candidates) == 1:
        return candidates[0]
    if labels is None:
        labels = uniform_labels({v for n in tree.nodes for v in n.skeleton.nodes})
    coded = [( _code_spqr_rooted(tree, c, labels)[0], c) for c in candidates]
    coded.sort()
    return coded[0][1]


def bi_code(tree: SpqrTree, labels: LabelMap | None = None) -> Code:
    """Code of a block: bottom-up over its rooted SPQR tree."""
    if labels is None:
        labels = uniform_labels({v for n in tree.nodes for v in n.skeleton.nodes})
    return _code_spqr_rooted(tree, tree.root, labels)[0]


# ---------------------------------------------------------------------------
# Component and graph codes over the Block-Cut tree
# ---------------------------------------------------------------------------

@dataclass
class BlockCoding:
    block: Block
    spqr: SpqrTree | None  # None for an isolated-node block
    root: int | None
    code: Code
    node_codings: dict[int, SpqrNodeCoding]


@dataclass
class ComponentCoding:
    code: Code
    root: TreeNode
    cut_codes: dict[int, Code]
    block_codings: dict[int, BlockCoding]


def code_component(
    g: Graph,
    tree: BlockCutTree,
    root: TreeNode,
    spqr_map: dict[int, SpqrTree] | None = None,
) -> ComponentCoding:
    """Code one connected graph over its Block-Cut tree rooted at ``root``."""
    adj = tree.adjacency()
    order: list[TreeNode] = [root]
    parent: dict[TreeNode, TreeNode | None] = {root: None}
    child_map: dict[TreeNode, list[TreeNode]] = {t: [] for t in adj}
    for a in order:
        for b in adj[a]:
            if b not in parent:
                parent[b] = a
                child_map[a].append(b)
                order.append(b)
    if len(order) != len(adj):
        raise ValueError("block-cut tree is not connected")

    blocks = {b.id: b for b in tree.blocks}
    labels: LabelMap = {v: leaf_code(g.colors[v]) for v in range(g.node_count)}
    block_code: dict[int, Code] = {}
    cut_codes: dict[int, Code] = {}
    block_codings: dict[int, BlockCoding] = {}

    for t in reversed(order):
        kind, ident = t
        if kind == "block":
            b = blocks[ident]
            # The attachment vertex must be distinguishable inside the block
            # code, otherwise blocks differing only in where they hang off
            # the parent cut node would collide; shadow it with a marked
            # label (an extra wrap no ordinary label can produce).
            par = parent[t]
            mark = par[1] if par is not None else None
            saved = None
            if mark is not None:
                saved = labels[mark]
                labels[mark] = wrap(saved)
            if b.is_isolated_node:
                code = labels[b.nodes[0]]
                block_codings[ident] = BlockCoding(b, None, None, code, {})
            else:
                st = spqr_map[ident] if spqr_map is not None else spqr_tree(b)
                cands = centroid_candidates(
                    [n.id for n in st.nodes], [(x, y) for _, x, y in st.pairs]
                )
                best: tuple[Code, int, dict] | None = None
                for c in cands:
                    code_c, codings = _code_spqr_rooted(st, c, labels)
                    if best is None or (code_c, c) < (best[0], best[1]):
                        best = (code_c, c, codings)
                assert best is not None
                code = best[0]
                block_codings[ident] = BlockCoding(b, st, best[1], code, best[2])
            if mark is not None:
                labels[mark] = saved
            block_code[ident] = code
        else:
            u = ident
            child_codes = sorted(block_code[b[1]] for b in child_map[t])
            code = wrap(leaf_code(g.colors[u]), *child_codes)
            cut_codes[u] = code
            labels[u] = code  # shadow the label for the parent block

    if root[0] == "block":
        comp_code = block_code[root[1]]
    else:
        comp_code = cut_codes[root[1]]
    return ComponentCoding(comp_code, root, cut_codes, block_codings)


def _component_best(cg: Graph) -> tuple[ComponentCoding, BlockCutTree]:
    """Build decomposition once, code all centroid candidates, keep the min."""
    tree = build_unrooted_tree(cg)
    cands = centroid_candidates(
        tree.tree_nodes(), [(("cut", c), ("block", b)) for c, b in tree.tree_edges]
    )
    spqr_map = {
        b.id: spqr_tree(b) for b in tree.blocks if not b.is_isolated_node
    }
    best: tuple[ComponentCoding, TreeNode] | None = None
    for root in cands:
        coding = code_component(cg, tree, root, spqr_map)
        if best is None or (coding.code, root) < (best[0].code, best[1]):
            best = (coding, root)
    assert best is not None
    rooted = BlockCutTree(tree.cut_nodes, tree.blocks, tree.tree_edges, best[1])
    return best[0], rooted


def graph_code(g: Graph) -> Code:
    """Complete canonical code; equal codes mean isomorphic planar graphs."""
    coding = full_coding(g)
    return coding.code


@dataclass
class GraphCoding:
    code: Code
    pieces: tuple[ComponentPiece, ...]
    component_codings: tuple[ComponentCoding, ...]
    trees: tuple[BlockCutTree, ...]


def full_coding(g: Graph) -> GraphCoding:
    """Code every component and keep all intermediate structure (for export)."""
    if not is_planar(g):
        raise NotPlanarError("graph is not planar")
    pieces = components(g)
    results = []
    for piece in pieces:
        coding, tree = _component_best(piece.graph)
        results.append((piece, coding, tree))
    results.sort(key=lambda r: r[1].code)
    code = wrap(*[r[1].code for r in results])
    return GraphCoding(
        code,
        tuple(r[0] for r in results),
        tuple(r[1] for r in results),
        tuple(r[2] for r in results),
    )


def cut_subtree_codes(g: Graph) -> dict[int, Code]:
    """Per cut node, the code of its rooted Block-Cut subtree."""
    pieces = components(g)
    if len(pieces) > 1:
        raise ValueError("cut_subtree_codes requires a connected graph")
    coding, _ = _component_best(g)
    return dict(coding.cut_codes)
