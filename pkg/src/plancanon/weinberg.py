"""Weinberg's canonical walk for triconnected planar skeletons.

The walk traverses every edge exactly once in each direction. Exit rules at
an arrival via dart ``d`` (reverse dart ``r``):

* first visit to the node: leave via the rotation successor of ``r``;
* node seen before and ``r`` untraversed: leave via ``r``;
* otherwise: leave via the first untraversed dart after ``r`` in rotation.

The canonical code minimizes the serialized (first-visit-number, edge-kind,
node-label) step stream over all ``2|E|`` start darts in both the embedding
and its mirror; by Whitney's theorem those are all candidate orders a
triconnected planar graph admits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .codes import COMMA, LPAREN, RPAREN, Code, wrap_tokens
from .graph import Graph
from .planarity import RotationSystem, embed, mirror
from .spqr import REAL, Skeleton


class WalkStallError(RuntimeError):
    """The walk ran out of exits before covering all darts."""


@dataclass(frozen=True)
class Walk:
    """A completed walk: visited nodes, first-visit numbering, provenance."""

    omega: tuple[int, ...]
    kappa: tuple[int, ...]
    start_dart: int
    mirrored: bool
    darts: tuple[int, ...]  # traversed darts; darts[i] leads from omega[i] to omega[i+1]


def kappa_of(omega: Sequence[int]) -> tuple[int, ...]:
    """First-visit numbering of a node sequence (1-based)."""
    if not omega:
        raise ValueError("kappa_of requires a nonempty sequence")
    seen: dict[int, int] = {}
    out = []
    for x in omega:
        k = seen.get(x)
        if k is None:
            k = len(seen) + 1
            seen[x] = k
        out.append(k)
    return tuple(out)


class _WalkState:
    """Incremental walk execution; one advance per arrival."""

    __slots__ = ("rs", "start", "omega", "kappa", "visited", "traversed", "darts", "pending")

    def __init__(self, rs: RotationSystem, start: int):
        self.rs = rs
        self.start = start
        tail = rs.dart_tail(start)
        self.omega = [tail]
        self.kappa = [1]
        self.visited = {tail: 1}
        self.traversed = {start}
        self.darts = [start]
        self.pending: int | None = start

    def advance(self) -> tuple[int, int]:
        """Process one arrival; returns (kappa value, arrival node)."""
        rs = self.rs
        d = self.pending
        assert d is not None
        x = rs.dart_head(d)
        k = self.visited.get(x)
        first = k is None
        if first:
            k = len(self.visited) + 1
            self.visited[x] = k
        self.omega.append(x)
        self.kappa.append(k)
        if len(self.traversed) == rs.dart_count:
            self.pending = None
            return k, x
        rev = d ^ 1
        if first:
            exit_d = rs.rotation_next(rev)
        elif rev not in self.traversed:
            exit_d = rev
        else:
            e = rs.rotation_next(rev)
            exit_d = None
            while e != rev:
                if e not in self.traversed:
                    exit_d = e
                    break
                e = rs.rotation_next(e)
            if exit_d is None:
                raise WalkStallError(
                    f"walk from dart {self.start} stalled at node {x} "
                    f"after {len(self.traversed)} of {rs.dart_count} darts"
                )
        if exit_d in self.traversed:
            raise WalkStallError(f"walk rule selected traversed dart {exit_d}")
        self.traversed.add(exit_d)
        self.darts.append(exit_d)
        self.pending = exit_d
        return k, x

    def finished(self) -> bool:
        return self.pending is None


def weinberg_walk(rs: RotationSystem, start: int, mirrored: bool = False) -> Walk:
    """Run the walk to completion from one start dart."""
    state = _WalkState(rs, start)
    while not state.finished():
        state.advance()
    return Walk(tuple(state.omega), tuple(state.kappa), start, mirrored, tuple(state.darts))


@dataclass(frozen=True)
class TriCodeResult:
    code: Code
    walks: tuple[Walk, ...]  # all candidates attaining the minimal code
    edge_pairs: tuple[tuple[int, int], ...]  # dense edge index -> dense endpoints
    node_map: tuple[int, ...]  # dense node index -> original skeleton node id


def _skeleton_embedding(skeleton: Skeleton) -> tuple[RotationSystem, Graph, list, dict]:
    if not skeleton.is_simple():
        raise ValueError("triconnected skeletons must be simple")
    orig = sorted(skeleton.nodes)
    dense = {v: i for i, v in enumerate(orig)}
    edge_list = sorted(
        (min(dense[e.u], dense[e.v]), max(dense[e.u], dense[e.v]), e) for e in skeleton.edges
    )
    g = Graph(len(orig), tuple((a, b) for a, b, _ in edge_list))
    by_pair = {(a, b): e for a, b, e in edge_list}
    kinds = [0 if by_pair[p].kind == REAL else 1 for p in g.edges]
    rs = embed(g)
    return rs, g, kinds, {"orig": orig, "by_pair": by_pair}


def tri_code_candidates(
    skeleton: Skeleton,
    labels: dict[int, Code],
    start_pairs: Sequence[tuple[int, int]] | None = None,
) -> TriCodeResult:
    """Minimal walk code and every walk attaining it.

    ``labels`` maps skeleton node ids to their current label codes. The
    serialized step stream is ``(kappa, label)`` for the start node and
    ``(kappa, edge-kind, label)`` for each subsequent arrival. By default
    all ``2|E|`` darts start a candidate walk in both the embedding and its
    mirror; ``start_pairs`` restricts starts to the given directed edges
    (still in both orientations of the embedding).
    """
    rs, g, kinds, ctx = _skeleton_embedding(skeleton)
    orig = ctx["orig"]
    deg = [len(a) for a in g.adjacency]
    if g.node_count < 4 or min(deg) < 3:
        raise ValueError("skeleton is not triconnected")
    label_tokens = [labels[orig[i]].tokens for i in range(g.node_count)]

    orientations = (rs, mirror(rs))
    total = rs.dart_count
    if start_pairs is None:
        start_darts = list(range(total))
    else:
        dense = {v: i for i, v in enumerate(orig)}
        edge_index = {e: i for i, e in enumerate(g.edges)}
        start_darts = []
        for s, t in start_pairs:
            a, b = dense[s], dense[t]
            i = edge_index[(a, b) if a < b else (b, a)]
            start_darts.append(2 * i if a < b else 2 * i + 1)
    # Candidate states, filtered lockstep on the serialized step items.
    states: list[tuple[_WalkState, bool]] = []
    first_items = []
    for mirrored, orient in ((False, orientations[0]), (True, orientations[1])):
        for d in start_darts:
            st = _WalkState(orient, d)
            states.append((st, mirrored))
            first_items.append((LPAREN, 1, COMMA) + label_tokens[orient.dart_tail(d)] + (RPAREN,))
    best = min(first_items)
    active = [i for i, it in enumerate(first_items) if it == best]
    items = [best]

    for _ in range(total):  # exactly 2|E| arrivals
        step_items = []
        for i in active:
            st, _ = states[i]
            k, x = st.advance()
            kind = kinds[st.darts[len(st.omega) - 2] // 2]
            step_items.append((LPAREN, k, COMMA, kind, COMMA) + label_tokens[x] + (RPAREN,))
        m = min(step_items)
        active = [i for i, it in zip(active, step_items) if it == m]
        items.append(m)

    code = wrap_tokens(items)
    walks = []
    for i in active:
        st, mirrored = states[i]
        omega = tuple(orig[x] for x in st.omega)
        walks.append(Walk(omega, tuple(st.kappa), st.start, mirrored, tuple(st.darts)))
    walks.sort(key=lambda w: (w.start_dart, w.mirrored))
    return TriCodeResult(code, tuple(walks), g.edges, tuple(orig))


def tri_code(skeleton: Skeleton, labels: dict[int, Code]) -> tuple[Code, Walk]:
    """Canonical code of a triconnected skeleton plus the walk realizing it.

    Ties between equally minimal walks break on the smallest
    (start dart id, mirrored flag) pair; the tie-break never affects the code.
    """
    result = tri_code_candidates(skeleton, labels)
    return result.code, result.walks[0]
