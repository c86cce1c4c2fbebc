"""Per-topology routing protocols realizing arbitrary permutations.

Every router returns a protocol that validates against its graph and
realizes the requested target exactly. Round-count contracts: path <= n,
grid <= 2*n1 + n2 (n1 <= n2), complete graph <= 2, trees <= 3n.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .graphs import Graph, is_connected, is_tree, spanning_tree
from .perms import Permutation, decompose_two_involutions
from .protocols import RoutingProtocol

_NUMPY_LINE_THRESHOLD = 64


def _sort_line_python(keys: list[int]) -> list[list[tuple[int, int]]]:
    n = len(keys)
    rounds: list[list[tuple[int, int]]] = []
    for phase in range(n + 1):
        if all(keys[i] <= keys[i + 1] for i in range(n - 1)):
            break
        swaps = []
        for i in range(phase % 2, n - 1, 2):
            if keys[i] > keys[i + 1]:
                keys[i], keys[i + 1] = keys[i + 1], keys[i]
                swaps.append((i, i + 1))
        if swaps:
            rounds.append(swaps)
    else:
        raise AssertionError("odd-even transposition failed to sort within n phases")
    return rounds


def _sort_line_numpy(keys: list[int]) -> list[list[tuple[int, int]]]:
    arr = np.asarray(keys, dtype=np.int64)
    n = len(arr)
    rounds: list[list[tuple[int, int]]] = []
    for phase in range(n + 1):
        if np.all(arr[:-1] <= arr[1:]):
            break
        start = phase % 2
        left = arr[start : n - 1 : 2]
        right = arr[start + 1 : n : 2]
        mask = left > right
        if mask.any():
            tmp = left[mask].copy()
            left[mask] = right[mask]
            right[mask] = tmp
            idx = (np.nonzero(mask)[0] * 2 + start).tolist()
            rounds.append([(i, i + 1) for i in idx])
    else:
        raise AssertionError("odd-even transposition failed to sort within n phases")
    keys[:] = arr.tolist()
    return rounds


def _sort_line(keys: list[int]) -> list[list[tuple[int, int]]]:
    """Odd-even transposition sort; returns swap rounds as position pairs.

    Phases alternate pairs (0,1),(2,3),... and (1,2),(3,4),...; a swap fires
    when the left key exceeds the right. Keys are sorted in place. At most
    len(keys) non-empty rounds are produced.
    """
    if len(keys) >= _NUMPY_LINE_THRESHOLD:
        return _sort_line_numpy(keys)
    return _sort_line_python(keys)


def path_route(n: int, target: Permutation) -> RoutingProtocol:
    """Route on the path 0-1-...-(n-1) by sorting destination indices."""
    if target.n != n:
        raise ValueError("permutation size mismatch")
    keys = list(target.dest)
    rounds = _sort_line(keys)
    assert len(rounds) <= n
    # Sort rounds are already normalized: pairs (i, i+1) with ascending i.
    return RoutingProtocol(n, tuple(tuple(rnd) for rnd in rounds))


def complete_route(n: int, target: Permutation) -> RoutingProtocol:
    """Route on K_n: 0 rounds for identity, 1 for an involution, else 2."""
    if target.n != n:
        raise ValueError("permutation size mismatch")
    if target.is_identity():
        return RoutingProtocol.from_rounds(n, [])
    if target.is_involution():
        return RoutingProtocol.from_rounds(n, [target.transpositions()])
    s1, s2 = decompose_two_involutions(target)
    return RoutingProtocol.from_rounds(
        n, [s2.transpositions(), s1.transpositions()]
    )


def cycle_route(n: int, target: Permutation) -> RoutingProtocol:
    """Route on the n-cycle via its spanning path."""
    return path_route(n, target)


# ---------------------------------------------------------------------------
# Grid routing: three phases of parallel line routing. Phase 1 places each
# pebble into an intermediate row chosen by decomposing the column-to-column
# destination multigraph (n1-regular bipartite) into n1 perfect matchings, so
# that afterwards every row holds pebbles with distinct destination columns.
# ---------------------------------------------------------------------------


def _perfect_matching_decomposition(mult: list[list[int]], degree: int) -> list[list[int]]:
    """Split a `degree`-regular bipartite multigraph into perfect matchings.

    mult[a][b] is the edge multiplicity. Returns `degree` matchings, each as
    a list where entry a is the right-vertex matched to left-vertex a.
    Repeated Kuhn augmenting-path search on the support; regularity
    guarantees each round finds a perfect matching.
    """
    k = len(mult)
    matchings: list[list[int]] = []
    for _ in range(degree):
        match_right = [-1] * k  # right vertex -> left vertex

        def try_augment(a: int, visited: list[bool]) -> bool:
            for b in range(k):
                if mult[a][b] > 0 and not visited[b]:
                    visited[b] = True
                    if match_right[b] < 0 or try_augment(match_right[b], visited):
                        match_right[b] = a
                        return True
            return False

        for a in range(k):
            if not try_augment(a, [False] * k):
                raise AssertionError("regular bipartite multigraph lacks a perfect matching")
        match_left = [-1] * k
        for b, a in enumerate(match_right):
            match_left[a] = b
            mult[a][b] -= 1
        matchings.append(match_left)
    return matchings


def _merge_line_rounds(
    line_rounds: list[list[list[tuple[int, int]]]],
) -> list[list[tuple[int, int]]]:
    depth = max((len(r) for r in line_rounds), default=0)
    merged: list[list[tuple[int, int]]] = []
    for j in range(depth):
        rnd = []
        for rounds in line_rounds:
            if j < len(rounds):
                rnd.extend(rounds[j])
        merged.append(rnd)
    return merged


def _route_line(vertices: list[int], keys: list[int]) -> list[list[tuple[int, int]]]:
    rounds = _sort_line(keys)
    return [[(vertices[i], vertices[j]) for i, j in rnd] for rnd in rounds]


def grid_route(n1: int, n2: int, target: Permutation) -> RoutingProtocol:
    """Route on the n1 x n2 grid in at most 2*min + max rounds."""
    n = n1 * n2
    if target.n != n:
        raise ValueError("permutation size mismatch")
    if target.is_identity():
        return RoutingProtocol.from_rounds(n, [])
    if n1 > n2:
        # Route on the transposed grid and map the protocol back.
        def fwd(i: int) -> int:
            return (i % n2) * n1 + (i // n2)

        def back(j: int) -> int:
            return (j % n1) * n2 + (j // n1)

        tdest = [0] * n
        for v in range(n):
            tdest[fwd(v)] = fwd(target.dest[v])
        proto = grid_route(n2, n1, Permutation(tuple(tdest)))
        rounds = [[(back(u), back(v)) for u, v in rnd] for rnd in proto.rounds]
        return RoutingProtocol.from_rounds(n, rounds)

    if n1 == 1:
        return path_route(n2, target)

    occ = list(range(n))  # vertex -> pebble
    dest_row = [target.dest[p] // n2 for p in range(n)]
    dest_col = [target.dest[p] % n2 for p in range(n)]

    # Phase 1 assignment: multigraph on columns, edge (c -> dest col) per pebble.
    mult = [[0] * n2 for _ in range(n2)]
    pool: dict[tuple[int, int], deque[int]] = {}
    for r in range(n1):
        for c in range(n2):
            p = occ[r * n2 + c]
            mult[c][dest_col[p]] += 1
            pool.setdefault((c, dest_col[p]), deque()).append(p)
    inter_row = [0] * n
    for i, matching in enumerate(_perfect_matching_decomposition(mult, n1)):
        for c in range(n2):
            p = pool[(c, matching[c])].popleft()
            inter_row[p] = i

    def apply_rounds(rounds: list[list[tuple[int, int]]]) -> None:
        for rnd in rounds:
            for u, v in rnd:
                occ[u], occ[v] = occ[v], occ[u]

    all_rounds: list[list[tuple[int, int]]] = []

    # Phase 1: per-column sort into intermediate rows.
    phase = _merge_line_rounds(
        [
            _route_line(
                [r * n2 + c for r in range(n1)],
                [inter_row[occ[r * n2 + c]] for r in range(n1)],
            )
            for c in range(n2)
        ]
    )
    apply_rounds(phase)
    all_rounds.extend(phase)

    # Phase 2: per-row sort to destination columns (distinct by construction).
    line_rounds = []
    for r in range(n1):
        keys = [dest_col[occ[r * n2 + c]] for c in range(n2)]
        assert len(set(keys)) == n2, "phase 1 left duplicate destination columns in a row"
        line_rounds.append(_route_line([r * n2 + c for c in range(n2)], keys))
    phase = _merge_line_rounds(line_rounds)
    apply_rounds(phase)
    all_rounds.extend(phase)

    # Phase 3: per-column sort to destination rows.
    phase = _merge_line_rounds(
        [
            _route_line(
                [r * n2 + c for r in range(n1)],
                [dest_row[occ[r * n2 + c]] for r in range(n1)],
            )
            for c in range(n2)
        ]
    )
    apply_rounds(phase)
    all_rounds.extend(phase)

    for v in range(n):
        assert target.dest[occ[v]] == v, "grid routing failed to realize target"
    assert len(all_rounds) <= 2 * n1 + n2
    return RoutingProtocol.from_rounds(n, all_rounds)


# ---------------------------------------------------------------------------
# Tree routing. Recursive centroid scheme: all pebbles whose destination
# lies in a different branch of the centroid are relayed through it, one
# centroid swap per round, following an Euler walk of the branch-to-branch
# transit multigraph. Branches stage their due pebbles toward the centroid
# in parallel while the relay runs. Afterwards each branch holds exactly its
# own pebbles and is routed recursively; sibling branches run in the same
# rounds. Path-shaped subtrees short-circuit to odd-even transposition.
# ---------------------------------------------------------------------------


class _TreeState:
    __slots__ = ("adj", "occ", "pos", "dst")

    def __init__(self, adj: tuple[tuple[int, ...], ...], dst: list[int]):
        n = len(adj)
        self.adj = adj
        self.occ = list(range(n))  # vertex -> pebble
        self.pos = list(range(n))  # pebble -> vertex
        self.dst = dst  # pebble -> destination vertex

    def swap(self, u: int, v: int) -> None:
        pu, pv = self.occ[u], self.occ[v]
        self.occ[u], self.occ[v] = pv, pu
        self.pos[pu], self.pos[pv] = v, u


def _path_order(state: _TreeState, verts: set[int]) -> list[int] | None:
    """Vertices in path order if the induced subtree is a path, else None."""
    if len(verts) == 1:
        return list(verts)
    deg = {}
    ends = []
    for v in verts:
        d = sum(1 for w in state.adj[v] if w in verts)
        if d > 2:
            return None
        deg[v] = d
        if d == 1:
            ends.append(v)
    start = min(ends)
    order = [start]
    prev = -1
    cur = start
    while len(order) < len(verts):
        nxt = next(w for w in state.adj[cur] if w in verts and w != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _euler_circuits(
    out_edges: dict[int, deque[tuple[int, int]]], start_region: int | None
) -> list[list[tuple[int, int, int]]]:
    """Decompose a balanced transit multigraph into circuits.

    out_edges maps region -> deque of (dest_region, pebble); every node has
    in-degree == out-degree. Returns circuits as lists of edges
    (src, dest, pebble). If start_region is given and has an out-edge, its
    circuit comes first and starts there.
    """
    circuits = []
    starts = []
    if start_region is not None and out_edges.get(start_region):
        starts.append(start_region)
    starts.extend(sorted(r for r in out_edges if r != start_region))
    for s in starts:
        while out_edges.get(s):
            # Hierholzer: walk until stuck (back at s), splicing sub-circuits.
            walk: list[tuple[int, int, int]] = []
            cur = s
            while out_edges.get(cur):
                dest, pebble = out_edges[cur].popleft()
                walk.append((cur, dest, pebble))
                cur = dest
            assert cur == s, "transit multigraph is not balanced"
            i = 0
            while i < len(walk):
                node = walk[i][1]
                if node != s and out_edges.get(node):
                    sub: list[tuple[int, int, int]] = []
                    cur = node
                    while out_edges.get(cur):
                        dest, pebble = out_edges[cur].popleft()
                        sub.append((cur, dest, pebble))
                        cur = dest
                    assert cur == node
                    walk[i + 1 : i + 1] = sub
                i += 1
            circuits.append(walk)
    return circuits


def _solve_tree(state: _TreeState, verts: set[int]) -> list[list[tuple[int, int]]]:
    if all(state.dst[state.occ[v]] == v for v in verts):
        return []
    order = _path_order(state, verts)
    if order is not None:
        index = {v: i for i, v in enumerate(order)}
        keys = [index[state.dst[state.occ[v]]] for v in order]
        pos_rounds = _sort_line(keys)
        rounds = []
        for rnd in pos_rounds:
            pairs = [(order[i], order[j]) for i, j in rnd]
            for u, v in pairs:
                state.swap(u, v)
            rounds.append(pairs)
        return rounds

    c = _centroid(state, verts)
    comp_of: dict[int, int] = {}
    roots: list[int] = []
    parent: dict[int, int] = {}
    components: list[set[int]] = []
    for nb in sorted(state.adj[c]):
        if nb not in verts or nb in comp_of:
            continue
        cid = len(roots)
        roots.append(nb)
        comp = {nb}
        comp_of[nb] = cid
        queue = deque([nb])
        while queue:
            u = queue.popleft()
            for w in state.adj[u]:
                if w in verts and w != c and w not in comp_of:
                    comp_of[w] = cid
                    parent[w] = u
                    comp.add(w)
                    queue.append(w)
        components.append(comp)
    parent.update({r: c for r in roots})

    def region(v: int) -> int:
        return -1 if v == c else comp_of[v]

    out_edges: dict[int, deque[tuple[int, int]]] = {}
    for v in sorted(verts):
        p = state.occ[v]
        r1, r2 = region(v), region(state.dst[p])
        if r1 != r2:
            out_edges.setdefault(r1, deque()).append((r2, p))

    rounds: list[list[tuple[int, int]]] = []
    if out_edges:
        circuits = _euler_circuits(out_edges, -1)
        # Plan entries: swap the centroid with branch `br`, handing over
        # pebble `deliver` and taking `pickup`.
        plan: list[tuple[int, int, int]] = []
        queues: dict[int, list[int]] = {r: [] for r in range(len(roots))}
        for circ in circuits:
            if circ[0][0] == -1:
                # Circuit through the centroid: m edges cost m-1 swaps; the
                # final package lands on c via the last pickup.
                for i in range(len(circ) - 1):
                    br = circ[i][1]
                    plan.append((br, circ[i][2], circ[i + 1][2]))
                    queues[br].append(circ[i + 1][2])
            else:
                # Detached circuit: kick the centroid's pebble into the first
                # region, walk the circuit, retrieve it with the last swap.
                kicked = state.occ[c] if not plan else plan[-1][2]
                entry = circ[0][0]
                plan.append((entry, kicked, circ[0][2]))
                queues[entry].append(circ[0][2])
                for i in range(len(circ) - 1):
                    br = circ[i][1]
                    plan.append((br, circ[i][2], circ[i + 1][2]))
                    queues[br].append(circ[i + 1][2])
                br = circ[-1][1]
                plan.append((br, circ[-1][2], kicked))
                queues[br].append(kicked)

        consumed = {r: 0 for r in queues}
        plan_idx = 0
        guard = 0
        while plan_idx < len(plan):
            guard += 1
            assert guard <= 16 * len(verts), "tree crossing phase failed to make progress"
            swaps: list[tuple[int, int]] = []
            used: set[int] = set()
            br, deliver, pickup = plan[plan_idx]
            root = roots[br]
            if state.occ[root] == pickup:
                assert state.occ[c] == deliver, "relay plan out of sync"
                state.swap(c, root)
                swaps.append((c, root))
                used.update((c, root))
                consumed[br] += 1
                plan_idx += 1
            for r, queue in queues.items():
                pending = queue[consumed[r] :]
                rank = {}
                for i, p in enumerate(pending):
                    if p not in rank:
                        rank[p] = i
                for i, p in enumerate(pending):
                    v = state.pos[p]
                    if v == c or comp_of.get(v) != r or v == roots[r]:
                        continue
                    pv = parent[v]
                    if v in used or pv in used:
                        continue
                    blocker = state.occ[pv]
                    if rank.get(blocker, len(pending)) < i:
                        continue
                    state.swap(v, pv)
                    swaps.append((v, pv))
                    used.update((v, pv))
            if swaps:
                rounds.append(swaps)

    assert state.dst[state.occ[c]] == c, "centroid pebble not settled after crossing"
    for cid, comp in enumerate(components):
        for v in comp:
            assert comp_of[state.dst[state.occ[v]]] == cid, "pebble stranded outside home branch"

    sub = [_solve_tree(state, comp) for comp in components]
    depth = max((len(s) for s in sub), default=0)
    for j in range(depth):
        rnd = []
        for s in sub:
            if j < len(s):
                rnd.extend(s[j])
        rounds.append(rnd)
    return rounds


def _centroid(state: _TreeState, verts: set[int]) -> int:
    total = len(verts)
    anchor = min(verts)
    order = []
    par = {anchor: anchor}
    queue = deque([anchor])
    while queue:
        u = queue.popleft()
        order.append(u)
        for w in state.adj[u]:
            if w in verts and w not in par:
                par[w] = u
                queue.append(w)
    size = {v: 1 for v in verts}
    for u in reversed(order):
        if u != anchor:
            size[par[u]] += size[u]
    best_v, best_score = -1, total + 1
    for v in sorted(verts):
        heaviest = total - size[v]
        for w in state.adj[v]:
            if w in verts and par.get(w) == v:
                heaviest = max(heaviest, size[w])
        if heaviest < best_score:
            best_v, best_score = v, heaviest
    assert best_score <= total // 2 or total <= 2
    return best_v


def tree_route(t: Graph, target: Permutation) -> RoutingProtocol:
    """Route on a tree; rounds are hard-capped at 3n."""
    if not is_tree(t):
        raise ValueError("input graph is not a tree")
    if target.n != t.n:
        raise ValueError("permutation size mismatch")
    state = _TreeState(t.adjacency, list(target.dest))
    rounds = _solve_tree(state, set(range(t.n)))
    for p in range(t.n):
        assert state.pos[p] == target.dest[p], "tree routing failed to realize target"
    assert len(rounds) <= 3 * t.n, f"tree routing used {len(rounds)} rounds on n={t.n}"
    return RoutingProtocol.from_rounds(t.n, rounds)


def route(g: Graph, target: Permutation) -> RoutingProtocol:
    """Dispatch to the specialized router for g's topology tag.

    Untagged graphs route over a BFS spanning tree; untagged trees route
    directly.
    """
    if target.n != g.n:
        raise ValueError("permutation size mismatch")
    if not is_connected(g):
        raise ValueError("disconnected")
    if target.is_identity():
        return RoutingProtocol.from_rounds(g.n, [])
    tag = g.topology
    if tag is not None:
        if tag.kind == "path":
            return path_route(g.n, target)
        if tag.kind == "cycle":
            return cycle_route(g.n, target)
        if tag.kind == "complete":
            return complete_route(g.n, target)
        if tag.kind == "grid":
            return grid_route(tag["n1"], tag["n2"], target)
        if tag.kind in ("star", "random_tree"):
            return tree_route(g, target)
        if tag.kind == "cycle_grid":
            from .reduction import cycle_grid_route

            return cycle_grid_route(tag["rows"], tag["cols"], target)
        if tag.kind == "brick_wall":
            from .reduction import brick_wall_route

            return brick_wall_route(tag["n1"], tag["n2"], tag["b1"], tag["b2"], target)
    if is_tree(g):
        return tree_route(g, target)
    return tree_route(spanning_tree(g), target)
