"""Independent reference implementations used to check the package.

Everything here is written from definitions (separation classes, Kuratowski
subdivisions, union-find, bit-packing) and deliberately avoids the package's
own algorithms so the two routes can disagree loudly.
"""

from __future__ import annotations

import random
from itertools import combinations

from plancanon.graph import Graph

# ---------------------------------------------------------------------------
# Reference graph6 encoder (written first, straight from the format spec)
# ---------------------------------------------------------------------------


def ref_graph6_encode(n: int, edges: set[tuple[int, int]]) -> str:
    if n <= 62:
        header = [n + 63]
    elif n <= 258047:
        header = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        header = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if ((i, j) in edges or (j, i) in edges) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        val = 32 * bits[k] + 16 * bits[k + 1] + 8 * bits[k + 2] + 4 * bits[k + 3] + 2 * bits[k + 4] + bits[k + 5]
        body.append(val + 63)
    return bytes(header + body).decode("ascii")


# ---------------------------------------------------------------------------
# Union-find component counter
# ---------------------------------------------------------------------------


def union_find_component_count(g: Graph) -> int:
    parent = list(range(g.node_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.node_count
    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


# ---------------------------------------------------------------------------
# Articulation points by node-deletion connectivity tests
# ---------------------------------------------------------------------------


def _component_count_without(g: Graph, removed: int) -> int:
    seen = {removed}
    count = 0
    for s in range(g.node_count):
        if s in seen:
            continue
        count += 1
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def articulation_points_oracle(g: Graph) -> set[int]:
    base = union_find_component_count(g)
    out = set()
    for v in range(g.node_count):
        isolated = 1 if not g.adjacency[v] else 0
        if _component_count_without(g, v) > base - isolated:
            out.add(v)
    return out


# ---------------------------------------------------------------------------
# Planarity oracle: exhaustive K5 / K3,3 subdivision search (small n)
# ---------------------------------------------------------------------------


def _disjoint_paths_exist(g: Graph, pairs: list[tuple[int, int]], branch: set[int]) -> bool:
    """Can all pairs be joined by internally-disjoint paths avoiding branch?"""

    def search(idx: int, used: set[int]) -> bool:
        if idx == len(pairs):
            return True
        s, t = pairs[idx]

        def paths_from(u: int, visited: set[int]):
            if t in g.adjacency[u]:
                yield visited
            for w in g.adjacency[u]:
                if w in branch or w in used or w in visited or w == t:
                    continue
                yield from paths_from(w, visited | {w})

        for internals in paths_from(s, set()):
            if search(idx + 1, used | internals):
                return True
        return False

    return search(0, set())


def has_k5_subdivision(g: Graph) -> bool:
    nodes = [v for v in range(g.node_count) if len(g.adjacency[v]) >= 4]
    for branch in combinations(nodes, 5):
        bset = set(branch)
        pairs = [(a, b) for a, b in combinations(branch, 2)]
        if _disjoint_paths_exist(g, pairs, bset):
            return True
    return False


def has_k33_subdivision(g: Graph) -> bool:
    nodes = [v for v in range(g.node_count) if len(g.adjacency[v]) >= 3]
    for six in combinations(nodes, 6):
        for left in combinations(six, 3):
            right = tuple(v for v in six if v not in left)
            if left[0] > right[0]:
                continue  # unordered bipartition
            pairs = [(a, b) for a in left for b in right]
            if _disjoint_paths_exist(g, pairs, set(six)):
                return True
    return False


def is_planar_oracle(g: Graph) -> bool:
    """Kuratowski: planar iff no K5 and no K3,3 subdivision."""
    return not (has_k5_subdivision(g) or has_k33_subdivision(g))


# ---------------------------------------------------------------------------
# Definitional SPQR decomposition (recursive split + merge)
# ---------------------------------------------------------------------------

# Working edges are (u, v, kind, pair_id, uid); uid keeps identity.


def _sep_classes(edges, u, v):
    adj = {}
    for e in edges:
        adj.setdefault(e[0], []).append(e)
        adj.setdefault(e[1], []).append(e)
    comp_of = {}
    comp = 0
    for w in adj:
        if w in (u, v) or w in comp_of:
            continue
        comp_of[w] = comp
        stack = [w]
        while stack:
            a = stack.pop()
            for e in adj[a]:
                for b in (e[0], e[1]):
                    if b not in (u, v) and b not in comp_of:
                        comp_of[b] = comp
                        stack.append(b)
        comp += 1
    classes = [[] for _ in range(comp)]
    direct = []
    for e in edges:
        a, b = e[0], e[1]
        if {a, b} == {u, v}:
            direct.append(e)
        elif a in (u, v):
            classes[comp_of[b]].append(e)
        else:
            classes[comp_of[a]].append(e)
    return [c for c in classes], direct


def _find_sep_pair_definitional(edges):
    verts = sorted({x for e in edges for x in (e[0], e[1])})
    for u, v in combinations(verts, 2):
        classes, direct = _sep_classes(edges, u, v)
        groups = [len(c) for c in classes] + [1] * len(direct)
        k = len(groups)
        if k < 2:
            continue
        if k == 2 and min(groups) == 1:
            continue
        return u, v
    return None


def naive_spqr_atoms(block_edges: list[tuple[int, int]]):
    """Split to completion at definitional separation pairs, then merge."""
    next_uid = [0]
    next_pair = [0]

    def mk(u, v, kind, pair):
        e = (u, v, kind, pair, next_uid[0])
        next_uid[0] += 1
        return e

    work = [[mk(u, v, "real", None) for u, v in block_edges]]
    atoms = []
    while work:
        M = work.pop()
        verts = sorted({x for e in M for x in (e[0], e[1])})
        degs = {}
        for e in M:
            degs[e[0]] = degs.get(e[0], 0) + 1
            degs[e[1]] = degs.get(e[1], 0) + 1
        if len(verts) == 2 or all(d == 2 for d in degs.values()):
            atoms.append(M)
            continue
        pair = _find_sep_pair_definitional(M)
        if pair is None:
            atoms.append(M)
            continue
        u, v = pair
        classes, direct = _sep_classes(M, u, v)
        if len(classes) == 2 and not direct:
            pid = next_pair[0]
            next_pair[0] += 1
            work.append(classes[0] + [mk(u, v, "virtual", pid)])
            work.append(classes[1] + [mk(u, v, "virtual", pid)])
        else:
            bond = list(direct)
            for cls in classes:
                pid = next_pair[0]
                next_pair[0] += 1
                bond.append(mk(u, v, "virtual", pid))
                work.append(cls + [mk(u, v, "virtual", pid)])
            atoms.append(bond)

    def kind_of(edges):
        vs = {x for e in edges for x in (e[0], e[1])}
        if len(vs) == 2:
            return "Q" if len(edges) == 1 else "P"
        degs = {}
        for e in edges:
            degs[e[0]] = degs.get(e[0], 0) + 1
            degs[e[1]] = degs.get(e[1], 0) + 1
        return "S" if all(d == 2 for d in degs.values()) else "R"

    # merge adjacent equal-kind S/P atoms
    parent = list(range(len(atoms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for i, edges in enumerate(atoms):
        for e in edges:
            if e[2] == "virtual":
                owner.setdefault(e[3], []).append(i)
    kinds = [kind_of(e) for e in atoms]
    dead_pairs = set()
    for pid, (a, b) in sorted(owner.items()):
        ra, rb = find(a), find(b)
        assert ra != rb
        if kinds[ra] == kinds[rb] and kinds[ra] in ("S", "P"):
            parent[rb] = ra
            dead_pairs.add(pid)
    merged = {}
    for i, edges in enumerate(atoms):
        merged.setdefault(find(i), []).extend(
            e for e in edges if not (e[2] == "virtual" and e[3] in dead_pairs)
        )
    out = []
    pair_owner = {}
    for aid, edges in enumerate(sorted(merged.values(), key=lambda es: min(e[4] for e in es))):
        out.append(edges)
        for e in edges:
            if e[2] == "virtual":
                pair_owner.setdefault(e[3], []).append(aid)
    return out, pair_owner, kind_of


def spqr_fingerprint_naive(block_edges):
    atoms, pair_owner, kind_of = naive_spqr_atoms(block_edges)

    def atom_fp(edges):
        reals = tuple(sorted((min(e[0], e[1]), max(e[0], e[1])) for e in edges if e[2] == "real"))
        virts = tuple(sorted((min(e[0], e[1]), max(e[0], e[1])) for e in edges if e[2] == "virtual"))
        return (kind_of(edges), reals, virts)

    fps = [atom_fp(e) for e in atoms]
    tree = []
    for pid, (a, b) in pair_owner.items():
        fa, fb = sorted([fps[a], fps[b]])
        tree.append((fa, fb))
    return sorted(fps), sorted(tree)


def spqr_fingerprint_package(tree) -> tuple[list, list]:
    """Same fingerprint, computed from a package SpqrTree."""
    fps = {}
    for n in tree.nodes:
        reals = tuple(sorted(n.skeleton.real_edges()))
        virts = tuple(sorted(e.endpoints() for e in n.skeleton.virtual_edges()))
        fps[n.id] = (n.kind, reals, virts)
    edges = []
    for _, a, b in tree.pairs:
        fa, fb = sorted([fps[a], fps[b]])
        edges.append((fa, fb))
    return sorted(fps.values()), sorted(edges)


# ---------------------------------------------------------------------------
# Exhaustive connected-graph class enumeration with oracle dedup
# ---------------------------------------------------------------------------


def connected_classes_up_to(max_n: int, oracle) -> dict[int, list[Graph]]:
    """One representative per isomorphism class of connected graphs, n <= max_n.

    Grows representatives by attaching a new node to every nonempty subset of
    an (n-1)-node representative; every connected graph arises this way from
    a non-cut vertex. Deduplication buckets by cheap invariants and settles
    ties with the supplied oracle (e.g. brute_force_isomorphic).
    """
    reps = {1: [Graph(1, ())]}
    for n in range(2, max_n + 1):
        buckets: dict = {}
        out = []
        for base in reps[n - 1]:
            for mask in range(1, 1 << (n - 1)):
                new_edges = tuple(
                    (i, n - 1) for i in range(n - 1) if mask & (1 << i)
                )
                g = Graph(n, base.edges + new_edges)
                degs = g.degree_sequence()
                tri = sum(
                    1
                    for a, b in combinations(range(n), 2)
                    if g.has_edge(a, b)
                    for c in range(n)
                    if c > b and g.has_edge(a, c) and g.has_edge(b, c)
                )
                key = (g.edge_count, degs, tri)
                found = False
                for rep in buckets.setdefault(key, []):
                    if oracle(g, rep):
                        found = True
                        break
                if not found:
                    buckets[key].append(g)
                    out.append(g)
        reps[n] = out
    return reps


def random_connected_planar(n: int, rng: random.Random, extra: int = 0) -> Graph:
    """Random connected planar graph built independently of the generators
    module: random tree plus rejection-sampled chords via the package's
    planarity test only."""
    from plancanon.planarity import is_planar as pkg_is_planar

    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        j = rng.randrange(i)
        u, v = order[i], order[j]
        edges.add((min(u, v), max(u, v)))
    tries = extra * 5
    added = 0
    while added < extra and tries > 0:
        tries -= 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e in edges:
            continue
        g2 = Graph(n, tuple(edges | {e}))
        if pkg_is_planar(g2):
            edges.add(e)
            added += 1
    return Graph(n, tuple(sorted(edges)))


def random_biconnected_planar_block(n: int, rng: random.Random, extra: int):
    """Random biconnected planar graph: cycle plus planarity-checked chords."""
    from plancanon.planarity import is_planar as pkg_is_planar

    cyc = list(range(n))
    rng.shuffle(cyc)
    edges = {
        (min(cyc[i], cyc[(i + 1) % n]), max(cyc[i], cyc[(i + 1) % n]))
        for i in range(n)
    }
    tries = extra * 6
    added = 0
    while added < extra and tries > 0:
        tries -= 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e in edges:
            continue
        if pkg_is_planar(Graph(n, tuple(edges | {e}))):
            edges.add(e)
            added += 1
    return tuple(sorted(edges))
