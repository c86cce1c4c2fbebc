"""Protocol lifting between graphs and routers for the composite topologies.

lift_protocol turns a protocol on a denser virtual graph into one on the
host: virtual-only edges are grouped into classes whose member edges carry
vertex-disjoint host detours, so each class simulates any subset of its
transpositions in at most c' rounds. The cycle-grid router lifts a grid
protocol through two such classes. The brick-wall router simulates a grid
on the black lattice (vertical steps run inside brick-boundary cycles, four
brick colors at a time) and reduces red-vertex traffic to black traffic by
parking.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .graphs import Graph, normalize_edge
from .perms import Permutation, complete_partial_map, decompose_two_involutions
from .protocols import (
    Round,
    RoutingProtocol,
    apply_protocol,
    normalize_round,
    validate_protocol,
)
from .routers import _sort_line, grid_route
from .topologies import BrickWallLayout, brick_wall_layout, cycle_grid_layout


@dataclass(frozen=True)
class EdgeClass:
    label: str
    edges: tuple[tuple[int, int], ...]
    # edge -> host swap rounds realizing exactly that transposition; the
    # fragments of one class touch pairwise disjoint vertex sets
    fragments: dict[tuple[int, int], tuple[Round, ...]]

    def protocol(self, n: int, active=None) -> RoutingProtocol:
        """Host protocol realizing the transpositions of `active` edges."""
        chosen = self.edges if active is None else tuple(active)
        depth = max((len(self.fragments[e]) for e in chosen), default=0)
        rounds = []
        for r in range(depth):
            rnd: list[tuple[int, int]] = []
            for e in chosen:
                frag = self.fragments[e]
                if r < len(frag):
                    rnd.extend(frag[r])
            if rnd:
                rounds.append(rnd)
        return RoutingProtocol.from_rounds(n, rounds)


@dataclass(frozen=True)
class EdgeClassPartition:
    host: Graph
    virtual_graph: Graph
    classes: tuple[EdgeClass, ...]
    c_prime: int

    def __post_init__(self) -> None:
        if self.host.n != self.virtual_graph.n:
            raise ValueError("host and virtual graph must share a vertex set")
        added = self.virtual_graph.edges - self.host.edges
        seen: set[tuple[int, int]] = set()
        for cls in self.classes:
            touched: set[int] = set()
            for e in cls.edges:
                if e in seen:
                    raise ValueError(f"edge {e} appears in two classes")
                if e not in added:
                    raise ValueError(f"class edge {e} is not a virtual-only edge")
                seen.add(e)
                frag = cls.fragments[e]
                if len(frag) > self.c_prime:
                    raise ValueError(f"fragment for {e} exceeds c'={self.c_prime}")
                verts = {v for rnd in frag for p in rnd for v in p}
                if touched & verts:
                    raise ValueError(f"fragments of class {cls.label} overlap")
                touched |= verts
            # The full class protocol must realize exactly its transpositions.
            proto = cls.protocol(self.host.n)
            want = Permutation.from_cycles(self.host.n, cls.edges)
            report = validate_protocol(self.host, proto, want)
            if not report:
                raise ValueError(f"class {cls.label} protocol invalid: {report.reason}")
        if seen != added:
            raise ValueError("classes do not cover all virtual-only edges")


def lift_protocol(
    p_virtual: RoutingProtocol, ecp: EdgeClassPartition
) -> RoutingProtocol:
    """Replay a virtual-graph protocol on the host graph.

    Each virtual round becomes one host round for the pairs that are host
    edges, plus up to c' rounds per activated class. Total rounds are
    asserted <= (1 + c*c') * rounds(p_virtual); the realized permutation is
    unchanged.
    """
    if p_virtual.n != ecp.host.n:
        raise ValueError("protocol size mismatch")
    cap = 1 + len(ecp.classes) * ecp.c_prime
    edge_class: dict[tuple[int, int], EdgeClass] = {}
    for cls in ecp.classes:
        for e in cls.edges:
            edge_class[e] = cls
    rounds: list = []
    for rnd in p_virtual.rounds:
        emitted = 0
        host_pairs = []
        active: dict[str, list[tuple[int, int]]] = {}
        for u, v in rnd:
            e = normalize_edge(u, v)
            if ecp.host.has_edge(u, v):
                host_pairs.append(e)
            elif e in edge_class:
                active.setdefault(edge_class[e].label, []).append(e)
            else:
                raise ValueError(f"virtual round uses edge {e} outside the virtual graph")
        if host_pairs:
            rounds.append(host_pairs)
            emitted += 1
        for cls in ecp.classes:
            chosen = active.get(cls.label)
            if chosen:
                sub = cls.protocol(ecp.host.n, chosen)
                rounds.extend(sub.rounds)
                emitted += len(sub.rounds)
        assert emitted <= cap, "lifted round exceeds 1 + c*c'"
    lifted = RoutingProtocol.from_rounds(ecp.host.n, rounds)
    assert len(lifted.rounds) <= cap * len(p_virtual.rounds)
    return lifted


def _three_round_fragment(path4: tuple[int, int, int, int]) -> tuple[Round, ...]:
    """Transpose the two ends of a 3-edge path, restoring the middle."""
    a, b, c, d = path4
    return (
        normalize_round([(a, b), (c, d)]),
        normalize_round([(b, c)]),
        normalize_round([(a, b), (c, d)]),
    )


def cycle_grid_partition(rows: int, cols: int) -> EdgeClassPartition:
    layout = cycle_grid_layout(rows, cols)
    host = Graph.from_edges(layout.n, layout.host_edges)
    virtual_edges = set(layout.host_edges)
    for e in layout.detours:
        virtual_edges.add(e)
    virtual = Graph.from_edges(layout.n, virtual_edges)
    classes = []
    for label in ("dotted", "dashed"):
        edges = layout.classes[label]
        fragments = {e: _three_round_fragment(layout.detours[e]) for e in edges}
        classes.append(EdgeClass(label, edges, fragments))
    return EdgeClassPartition(host, virtual, tuple(classes), c_prime=3)


def cycle_grid_route(rows: int, cols: int, target: Permutation) -> RoutingProtocol:
    """Route on the octagon grid by lifting a virtual-grid protocol."""
    layout = cycle_grid_layout(rows, cols)
    if target.n != layout.n:
        raise ValueError("permutation size mismatch")
    if target.is_identity():
        return RoutingProtocol(layout.n, ())
    virtual_proto = grid_route(layout.virtual_rows, layout.virtual_cols, target)
    lifted = lift_protocol(virtual_proto, cycle_grid_partition(rows, cols))
    lo, hi = sorted((layout.virtual_rows, layout.virtual_cols))
    assert len(lifted.rounds) <= 7 * (2 * lo + hi)
    return lifted


# ---------------------------------------------------------------------------
# Brick wall routing
# ---------------------------------------------------------------------------


class _BrickWallRouter:
    def __init__(self, layout: BrickWallLayout):
        self.layout = layout
        self.host = Graph.from_edges(layout.n, layout.host_edges)
        self.grid_rows = layout.n1 + 1
        self.grid_cols = layout.width + 1
        # brick lookup per layer by left column
        self.layer_bricks: list[list[int]] = [[] for _ in range(layout.n1)]
        for idx, brick in enumerate(layout.bricks):
            self.layer_bricks[brick.layer].append(idx)
        self.layer_lefts = [
            [layout.bricks[i].left_col for i in bricks] for bricks in self.layer_bricks
        ]
        self.red_home: dict[int, tuple[int, int]] = {}
        for key, reds in layout.connectors.items():
            for r in reds:
                self.red_home[r] = key
        # canonical brick per connector: the brick it is a left side of,
        # else (rightmost connector) the brick it is a right side of
        self.connector_brick: dict[tuple[int, int], int] = {}
        for key in layout.connectors:
            layer, col = key
            pick = None
            for idx in self.layer_bricks[layer]:
                if layout.bricks[idx].left_col == col:
                    pick = idx
                    break
            if pick is None:
                for idx in self.layer_bricks[layer]:
                    if layout.bricks[idx].right_col == col:
                        pick = idx
            assert pick is not None
            self.connector_brick[key] = pick
        self.cycle_pos = [
            {v: i for i, v in enumerate(b.cycle)} for b in layout.bricks
        ]

    # -- primitive: route an involution inside one brick's boundary cycle --

    def _brick_cycle_rounds(self, brick_idx: int, pairs) -> list[list[tuple[int, int]]]:
        cycle = self.layout.bricks[brick_idx].cycle
        pos = self.cycle_pos[brick_idx]
        keys = list(range(len(cycle)))
        for u, v in pairs:
            keys[pos[u]], keys[pos[v]] = keys[pos[v]], keys[pos[u]]
        rounds = _sort_line(keys)
        return [
            [(cycle[i], cycle[j]) for i, j in rnd]
            for rnd in rounds
        ]

    def _bricks_phase_rounds(
        self, work: dict[int, list[tuple[int, int]]]
    ) -> list[list[tuple[int, int]]]:
        """Run per-brick cycle routing, same-color bricks in parallel."""
        rounds: list[list[tuple[int, int]]] = []
        for color in self.layout.colors:
            per_brick = [
                self._brick_cycle_rounds(idx, pairs)
                for idx, pairs in sorted(work.items())
                if self.layout.bricks[idx].color == color and pairs
            ]
            depth = max((len(r) for r in per_brick), default=0)
            for t in range(depth):
                rnd: list[tuple[int, int]] = []
                for sub in per_brick:
                    if t < len(sub):
                        rnd.extend(sub[t])
                rounds.append(rnd)
        return rounds

    def _vertical_brick(self, layer: int, col: int) -> int:
        lefts = self.layer_lefts[layer]
        j = bisect_right(lefts, col) - 1
        idx = self.layer_bricks[layer][j]
        assert (
            self.layout.bricks[idx].left_col <= col <= self.layout.bricks[idx].right_col
        )
        return idx

    # -- black-lattice permutations via grid simulation --

    def _route_black_perm(self, gp: Permutation) -> list[list[tuple[int, int]]]:
        """Realize a permutation of the black lattice, reds restored."""
        if gp.is_identity():
            return []
        L = self.layout
        proto = grid_route(self.grid_rows, self.grid_cols, gp)
        rounds: list[list[tuple[int, int]]] = []
        for rnd in proto.rounds:
            direct: list[tuple[int, int]] = []
            work: dict[int, list[tuple[int, int]]] = {}
            for u, v in rnd:
                if self.host.has_edge(u, v):
                    direct.append((u, v))
                    continue
                ru, cu = L.black_coord(u)
                rv, cv = L.black_coord(v)
                assert cu == cv and rv == ru + 1, "unexpected virtual grid edge"
                idx = self._vertical_brick(ru, cu)
                work.setdefault(idx, []).append((u, v))
            if direct:
                rounds.append(direct)
            rounds.extend(self._bricks_phase_rounds(work))
        return rounds

    # -- parking-slot allocation inside a brick --

    def _brick_blacks(self, brick_idx: int) -> list[int]:
        # top side ascending, then bottom side ascending
        b = self.layout.bricks[brick_idx]
        L = self.layout
        top = [L.black(b.layer, c) for c in range(b.left_col, b.right_col + 1)]
        bottom = [L.black(b.layer + 1, c) for c in range(b.left_col, b.right_col + 1)]
        return top + bottom

    # -- the three involution pieces --

    def route_involution(self, sigma: Permutation) -> list[list[tuple[int, int]]]:
        """Split by endpoint colors; the three pieces have disjoint supports."""
        L = self.layout
        black_black = []
        red_red = []
        mixed = []  # stored as (black, red)
        for u, v in sigma.transpositions():
            ub, vb = L.is_black(u), L.is_black(v)
            if ub and vb:
                black_black.append((u, v))
            elif not ub and not vb:
                red_red.append((u, v))
            else:
                mixed.append((u, v) if ub else (v, u))
        rounds: list[list[tuple[int, int]]] = []
        rounds.extend(self._route_mixed(mixed))
        rounds.extend(self._route_red_red(red_red))
        if black_black:
            partial = {}
            for u, v in black_black:
                partial[u] = v
                partial[v] = u
            gp = complete_partial_map(L.black_count, partial)
            rounds.extend(self._route_black_perm(gp))
        return rounds

    def _pack_waves(self, demands: list[tuple[int, list[tuple[int, int]]]]):
        """Greedy wave packing: each item needs parking slots in given bricks.

        demands: list of (item index, [(brick, how many slots), ...] flattened
        as repeated brick entries). Yields lists of item indices per wave.
        """
        pending = list(range(len(demands)))
        capacity = {
            idx: len(self._brick_blacks(idx)) for idx in range(len(self.layout.bricks))
        }
        while pending:
            used: dict[int, int] = {}
            wave: list[int] = []
            deferred: list[int] = []
            for item in pending:
                _, needs = demands[item]
                ok = True
                trial: dict[int, int] = {}
                for brick, count in needs:
                    trial[brick] = trial.get(brick, 0) + count
                    if used.get(brick, 0) + trial[brick] > capacity[brick]:
                        ok = False
                        break
                if ok:
                    for brick, count in trial.items():
                        used[brick] = used.get(brick, 0) + count
                    wave.append(item)
                else:
                    deferred.append(item)
            assert wave, "wave packing made no progress"
            yield wave
            pending = deferred

    def _route_red_red(self, pairs: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
        if not pairs:
            return []
        demands = []
        for i, (x, y) in enumerate(pairs):
            bx = self.connector_brick[self.red_home[x]]
            by = self.connector_brick[self.red_home[y]]
            demands.append((i, [(bx, 1), (by, 1)]))
        rounds: list[list[tuple[int, int]]] = []
        for wave in self._pack_waves(demands):
            rounds.extend(self._red_red_wave([pairs[i] for i in wave]))
        return rounds

    def _red_red_wave(self, pairs) -> list[list[tuple[int, int]]]:
        used: set[int] = set()
        park: dict[int, int] = {}
        brick_jobs: dict[int, list[tuple[int, int]]] = {}
        for x, y in pairs:
            for red in (x, y):
                idx = self.connector_brick[self.red_home[red]]
                slot = next(b for b in self._brick_blacks(idx) if b not in used)
                used.add(slot)
                park[red] = slot
                brick_jobs.setdefault(idx, []).append((red, slot))
        parking = self._bricks_phase_rounds(brick_jobs)
        partial: dict[int, int] = {}
        for x, y in pairs:
            partial[park[x]] = park[y]
            partial[park[y]] = park[x]
        gp = complete_partial_map(self.layout.black_count, partial)
        rounds = list(parking)
        rounds.extend(self._route_black_perm(gp))
        rounds.extend(self._bricks_phase_rounds(brick_jobs))  # unpark
        return rounds

    def _route_mixed(self, pairs: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
        if not pairs:
            return []
        demands = []
        for i, (a, x) in enumerate(pairs):
            idx = self.connector_brick[self.red_home[x]]
            demands.append((i, [(idx, 1)]))
        rounds: list[list[tuple[int, int]]] = []
        for wave in self._pack_waves(demands):
            rounds.extend(self._mixed_wave([pairs[i] for i in wave]))
        return rounds

    def _mixed_wave(self, pairs) -> list[list[tuple[int, int]]]:
        # Reserve blacks that already sit inside the red's brick, then
        # allocate staging slots for the rest.
        used: set[int] = set()
        brick_of: dict[int, int] = {}
        for a, x in pairs:
            idx = self.connector_brick[self.red_home[x]]
            brick_of[x] = idx
            if a in self._brick_blacks(idx):
                used.add(a)
        stage: dict[int, int] = {}
        brick_jobs: dict[int, list[tuple[int, int]]] = {}
        partial: dict[int, int] = {}
        for a, x in pairs:
            idx = brick_of[x]
            blacks = self._brick_blacks(idx)
            if a in blacks:
                slot = a
            else:
                slot = next(b for b in blacks if b not in used)
                used.add(slot)
            stage[a] = slot
            partial[a] = slot
            brick_jobs.setdefault(idx, []).append((slot, x))
        gp = complete_partial_map(self.layout.black_count, partial)
        rounds = list(self._route_black_perm(gp))
        rounds.extend(self._bricks_phase_rounds(brick_jobs))  # exchange
        rounds.extend(self._route_black_perm(gp.inverse()))  # unstage
        return rounds


def brick_wall_route(
    n1: int, n2: int, b1: int, b2: int, target: Permutation
) -> RoutingProtocol:
    """Route on the brick wall; rounds capped at 40*(b1+b2)*(n1+b2*n2)."""
    layout = brick_wall_layout(n1, n2, b1, b2)
    if target.n != layout.n:
        raise ValueError("permutation size mismatch")
    if target.is_identity():
        return RoutingProtocol(layout.n, ())
    router = _BrickWallRouter(layout)
    s1, s2 = decompose_two_involutions(target)
    rounds: list[list[tuple[int, int]]] = []
    for sigma in (s2, s1):  # right factor first
        if not sigma.is_identity():
            rounds.extend(router.route_involution(sigma))
    proto = RoutingProtocol.from_rounds(layout.n, rounds)
    assert apply_protocol(proto) == target, "brick wall routing failed to realize target"
    cap = 40 * (b1 + b2) * (n1 + b2 * n2)
    assert len(proto.rounds) <= cap, f"brick wall used {len(proto.rounds)} rounds > {cap}"
    return proto
