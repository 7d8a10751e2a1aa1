"""Isomorphism decisions: canonical-code equality, a brute-force oracle,
and a 1-WL color-refinement comparator for demonstrations.

The oracle is written directly from the definition (backtracking over
color- and degree-compatible bijections) and stays independent of the
canonical-code pipeline so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import graph_code
from .graph import Graph
from .planarity import NotPlanarError, is_planar


@dataclass(frozen=True)
class WlColoring:
    rounds: int
    histogram: tuple[int, ...]  # sorted stable color ids, one per node


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Planar isomorphism decision via canonical-code equality."""
    for g in (g1, g2):
        if not is_planar(g):
            raise NotPlanarError("is_isomorphic requires planar inputs")
    return graph_code(g1) == graph_code(g2)


def brute_force_isomorphic(g1: Graph, g2: Graph, max_nodes: int = 10) -> bool:
    """Backtracking search for a color- and adjacency-preserving bijection."""
    if g1.node_count > max_nodes or g2.node_count > max_nodes:
        raise ValueError(f"oracle size bound exceeded (max {max_nodes} nodes)")
    n = g1.node_count
    if n != g2.node_count or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.colors) != sorted(g2.colors):
        return False
    prof1 = sorted((g1.colors[v], len(g1.adjacency[v])) for v in range(n))
    prof2 = sorted((g2.colors[v], len(g2.adjacency[v])) for v in range(n))
    if prof1 != prof2:
        return False

    # Order g1 nodes to keep the partial mapping connected where possible.
    order: list[int] = []
    seen = [False] * n
    for s in sorted(range(n), key=lambda v: -len(g1.adjacency[v])):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            u = queue.pop()
            order.append(u)
            for w in g1.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)

    mapping = [-1] * n
    used = [False] * n
    mapped_targets: set[int] = set()
    e2 = g2.edge_set

    def extend(i: int) -> bool:
        if i == n:
            return True
        u = order[i]
        du = len(g1.adjacency[u])
        for v in range(n):
            if used[v]:
                continue
            if g2.colors[v] != g1.colors[u] or len(g2.adjacency[v]) != du:
                continue
            ok = True
            for w in g1.adjacency[u]:
                mw = mapping[w]
                if mw != -1:
                    if ((mw, v) if mw < v else (v, mw)) not in e2:
                        ok = False
                        break
            if ok:
                # mapped non-neighbors of u must stay non-neighbors of v
                deg_needed = sum(1 for w in g1.adjacency[u] if mapping[w] != -1)
                deg_have = sum(
                    1
                    for w in g2.adjacency[v]
                    if w in mapped_targets
                )
                if deg_needed != deg_have:
                    ok = False
            if ok:
                mapping[u] = v
                used[v] = True
                mapped_targets.add(v)
                if extend(i + 1):
                    return True
                mapping[u] = -1
                used[v] = False
                mapped_targets.discard(v)
        return False

    return extend(0)


def wl1_histogram(g: Graph, max_rounds: int | None = None) -> WlColoring:
    """Stable 1-WL refinement; colors re-indexed by sorted signature rank.

    Rank-based re-indexing makes the result independent of node order, so
    the histogram is permutation-invariant without any hashing collisions.
    """
    n = g.node_count
    limit = n if max_rounds is None else max_rounds
    ranks = sorted(set(g.colors))
    rank_of = {c: i for i, c in enumerate(ranks)}
    colors = [rank_of[c] for c in g.colors]
    rounds = 0
    for _ in range(max(limit, 1)):
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in g.adjacency[v])))
            for v in range(n)
        ]
        uniq = sorted(set(sigs))
        sig_rank = {s: i for i, s in enumerate(uniq)}
        new_colors = [sig_rank[s] for s in sigs]
        if new_colors == colors:
            break
        colors = new_colors
        rounds += 1
    return WlColoring(rounds, tuple(sorted(colors)))
