"""Canonical builders for every supported constraint graph.

Each builder is deterministic and tags the produced graph so routing can
dispatch to the matching specialized router. The module also carries the
known round-count upper bounds per topology kind and the canonical layouts
for the two composite topologies (cycle-grid, brick wall).
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .graphs import Graph, normalize_edge

KINDS = (
    "path",
    "cycle",
    "complete",
    "star",
    "grid",
    "random_tree",
    "random_connected",
    "cycle_grid",
    "brick_wall",
)

_PARAM_NAMES = {
    "path": ("n",),
    "cycle": ("n",),
    "complete": ("n",),
    "star": ("n",),
    "grid": ("n1", "n2"),
    "random_tree": ("n", "seed"),
    "random_connected": ("n", "m", "seed"),
    "cycle_grid": ("rows", "cols"),
    "brick_wall": ("n1", "n2", "b1", "b2"),
}


@dataclass(frozen=True)
class TopologySpec:
    kind: str
    params: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown topology kind {self.kind!r}")
        names = tuple(name for name, _ in self.params)
        if names != _PARAM_NAMES[self.kind]:
            raise ValueError(
                f"{self.kind} expects parameters {_PARAM_NAMES[self.kind]}, got {names}"
            )
        _validate_params(self.kind, dict(self.params))

    @classmethod
    def make(cls, kind: str, **kwargs: int) -> "TopologySpec":
        if kind not in _PARAM_NAMES:
            raise ValueError(f"unknown topology kind {kind!r}")
        try:
            params = tuple((name, int(kwargs.pop(name))) for name in _PARAM_NAMES[kind])
        except KeyError as exc:
            raise ValueError(f"{kind} requires parameter {exc.args[0]!r}") from None
        if kwargs:
            raise ValueError(f"unexpected parameters for {kind}: {sorted(kwargs)}")
        return cls(kind, params)

    def __getitem__(self, name: str) -> int:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)


def _validate_params(kind: str, p: dict[str, int]) -> None:
    if kind in ("path", "cycle", "complete", "star", "random_tree"):
        if p["n"] < 1:
            raise ValueError(f"{kind}: n must be >= 1")
    if kind == "grid" and (p["n1"] < 1 or p["n2"] < 1):
        raise ValueError("grid: n1 and n2 must be >= 1")
    if kind == "random_connected":
        n, m = p["n"], p["m"]
        if n < 1 or m < n - 1 or m > n * (n - 1) // 2:
            raise ValueError("random_connected: need n-1 <= m <= n(n-1)/2")
    if kind == "cycle_grid" and (p["rows"] < 1 or p["cols"] < 1):
        raise ValueError("cycle_grid: rows and cols must be >= 1")
    if kind == "brick_wall":
        n1, n2, b1, b2 = p["n1"], p["n2"], p["b1"], p["b2"]
        if n1 < 1 or n2 < 1:
            raise ValueError("brick_wall: n1 and n2 must be >= 1")
        if b1 < 2:
            raise ValueError("brick_wall: b1 must be >= 2")
        if b2 < 3:
            raise ValueError("brick_wall: b2 must be >= 3")
        if b1 >= b2:
            raise ValueError("brick_wall: b1 must be < b2")
        if b2 % 2 == 0:
            raise ValueError("brick_wall: b2 must be odd")


def grid_index(r: int, c: int, n2: int) -> int:
    return r * n2 + c


def _path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def _prufer_tree(n: int, seed: int) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    rng = Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    # Standard decode: repeatedly join the smallest leaf to the next code entry.
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append(normalize_edge(leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append(normalize_edge(u, w))
    return edges


def build(spec: TopologySpec) -> Graph:
    """Construct the canonical graph for a topology spec."""
    kind = spec.kind
    if kind == "path":
        edges = _path_edges(spec["n"])
        return Graph.from_edges(spec["n"], edges, spec)
    if kind == "cycle":
        n = spec["n"]
        edges = _path_edges(n)
        if n >= 3:
            edges.append((0, n - 1))
        return Graph.from_edges(n, edges, spec)
    if kind == "complete":
        n = spec["n"]
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        return Graph.from_edges(n, edges, spec)
    if kind == "star":
        n = spec["n"]
        return Graph.from_edges(n, [(0, v) for v in range(1, n)], spec)
    if kind == "grid":
        n1, n2 = spec["n1"], spec["n2"]
        edges = []
        for r in range(n1):
            for c in range(n2):
                if c + 1 < n2:
                    edges.append((grid_index(r, c, n2), grid_index(r, c + 1, n2)))
                if r + 1 < n1:
                    edges.append((grid_index(r, c, n2), grid_index(r + 1, c, n2)))
        return Graph.from_edges(n1 * n2, edges, spec)
    if kind == "random_tree":
        n, seed = spec["n"], spec["seed"]
        return Graph.from_edges(n, _prufer_tree(n, seed), spec)
    if kind == "random_connected":
        n, m, seed = spec["n"], spec["m"], spec["seed"]
        edges = set(_prufer_tree(n, seed))
        rng = Random(seed + 1)
        while len(edges) < m:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u != v:
                edges.add(normalize_edge(u, v))
        return Graph.from_edges(n, edges, spec)
    if kind == "cycle_grid":
        layout = cycle_grid_layout(spec["rows"], spec["cols"])
        return Graph.from_edges(layout.n, layout.host_edges, spec)
    if kind == "brick_wall":
        layout = brick_wall_layout(spec["n1"], spec["n2"], spec["b1"], spec["b2"])
        return Graph.from_edges(layout.n, layout.host_edges, spec)
    raise ValueError(f"unknown topology kind {kind!r}")


def rt_upper_bound(spec: TopologySpec) -> int | str:
    """Known upper bound on the routing round count for this topology."""
    kind = spec.kind
    if kind == "path":
        return spec["n"]
    if kind == "cycle":
        # A cycle contains a spanning path, so the path bound applies.
        return spec["n"]
    if kind == "complete":
        return 2 if spec["n"] >= 2 else 0
    if kind in ("star", "random_tree"):
        return 3 * spec["n"]
    if kind == "grid":
        lo, hi = sorted((spec["n1"], spec["n2"]))
        return 2 * lo + hi
    if kind == "random_connected":
        return 3 * spec["n"]
    if kind == "cycle_grid":
        lo, hi = sorted((2 * spec["rows"], 4 * spec["cols"]))
        return 7 * (2 * lo + hi)
    if kind == "brick_wall":
        n1, n2, b1, b2 = spec["n1"], spec["n2"], spec["b1"], spec["b2"]
        return 40 * (b1 + b2) * (n1 + b2 * n2)
    return "unknown"


# ---------------------------------------------------------------------------
# Cycle-grid layout: a rows x cols grid of octagons, each flattened to a
# 2x4 block of the virtual grid. Adjacent octagons share two host edges:
# horizontal neighbors at both block rows, vertical neighbors at block
# columns 1 and 2.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleGridLayout:
    rows: int
    cols: int
    n: int
    host_edges: tuple[tuple[int, int], ...]
    virtual_rows: int
    virtual_cols: int
    # added virtual edge -> the length-3 host detour path (4 vertices)
    detours: dict[tuple[int, int], tuple[int, int, int, int]]
    # class label -> edges; detours within one class are vertex-disjoint
    classes: dict[str, tuple[tuple[int, int], ...]]


def cycle_grid_layout(rows: int, cols: int) -> CycleGridLayout:
    vcols = 4 * cols
    vrows = 2 * rows
    n = vrows * vcols

    def vid(vr: int, vc: int) -> int:
        return vr * vcols + vc

    host: list[tuple[int, int]] = []
    detours: dict[tuple[int, int], tuple[int, int, int, int]] = {}
    dotted: list[tuple[int, int]] = []
    dashed: list[tuple[int, int]] = []

    for octr in range(rows):
        for octc in range(cols):
            top, bot = 2 * octr, 2 * octr + 1
            c0 = 4 * octc
            for j in range(3):
                host.append(normalize_edge(vid(top, c0 + j), vid(top, c0 + j + 1)))
                host.append(normalize_edge(vid(bot, c0 + j), vid(bot, c0 + j + 1)))
            host.append(normalize_edge(vid(top, c0), vid(bot, c0)))
            host.append(normalize_edge(vid(top, c0 + 3), vid(bot, c0 + 3)))
            if octc + 1 < cols:
                host.append(normalize_edge(vid(top, c0 + 3), vid(top, c0 + 4)))
                host.append(normalize_edge(vid(bot, c0 + 3), vid(bot, c0 + 4)))
            if octr + 1 < rows:
                below = 2 * octr + 2
                host.append(normalize_edge(vid(bot, c0 + 1), vid(below, c0 + 1)))
                host.append(normalize_edge(vid(bot, c0 + 2), vid(below, c0 + 2)))

            # Added in-octagon verticals at block columns 1 and 2; the detour
            # for each runs around the octagon side the other one leaves free.
            e1 = normalize_edge(vid(top, c0 + 1), vid(bot, c0 + 1))
            detours[e1] = (vid(top, c0 + 1), vid(top, c0), vid(bot, c0), vid(bot, c0 + 1))
            dotted.append(e1)
            e2 = normalize_edge(vid(top, c0 + 2), vid(bot, c0 + 2))
            detours[e2] = (vid(top, c0 + 2), vid(top, c0 + 3), vid(bot, c0 + 3), vid(bot, c0 + 2))
            dashed.append(e2)

            # Added gap verticals at block columns 0 and 3, detouring through
            # the inter-octagon couplers at columns 1 and 2.
            if octr + 1 < rows:
                below = 2 * octr + 2
                g0 = normalize_edge(vid(bot, c0), vid(below, c0))
                detours[g0] = (vid(bot, c0), vid(bot, c0 + 1), vid(below, c0 + 1), vid(below, c0))
                dashed.append(g0)
                g3 = normalize_edge(vid(bot, c0 + 3), vid(below, c0 + 3))
                detours[g3] = (vid(bot, c0 + 3), vid(bot, c0 + 2), vid(below, c0 + 2), vid(below, c0 + 3))
                dotted.append(g3)

    return CycleGridLayout(
        rows=rows,
        cols=cols,
        n=n,
        host_edges=tuple(sorted(set(host))),
        virtual_rows=vrows,
        virtual_cols=vcols,
        detours=detours,
        classes={"dotted": tuple(dotted), "dashed": tuple(dashed)},
    )


# ---------------------------------------------------------------------------
# Brick-wall layout. Black vertices form an (n1+1) x (n2(b2-1)+1) lattice;
# vertical brick sides are chains of b1-2 red vertices hanging between
# vertically aligned blacks at the connector columns. Boundary connectors at
# columns 0 and n2(b2-1) exist in every layer so the graph stays connected.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Brick:
    layer: int
    left_col: int
    right_col: int
    color: str
    # boundary cycle, starting at black(layer, left_col), clockwise
    cycle: tuple[int, ...]


@dataclass(frozen=True)
class BrickWallLayout:
    n1: int
    n2: int
    b1: int
    b2: int
    n: int
    width: int  # last black column index, = n2*(b2-1)
    host_edges: tuple[tuple[int, int], ...]
    black_count: int
    # connector (layer, col) -> red chain ids ordered top to bottom
    connectors: dict[tuple[int, int], tuple[int, ...]]
    bricks: tuple[Brick, ...]
    colors: tuple[str, ...]

    def black(self, r: int, c: int) -> int:
        return r * (self.width + 1) + c

    def black_coord(self, v: int) -> tuple[int, int]:
        return divmod(v, self.width + 1)

    def is_black(self, v: int) -> bool:
        return v < self.black_count


def _connector_cols(layer: int, b2: int, width: int) -> list[int]:
    period = b2 - 1
    offset = 0 if layer % 2 == 0 else period // 2
    cols = {0, width}
    cols.update(range(offset, width + 1, period))
    return sorted(cols)


def brick_wall_layout(n1: int, n2: int, b1: int, b2: int) -> BrickWallLayout:
    _validate_params("brick_wall", {"n1": n1, "n2": n2, "b1": b1, "b2": b2})
    width = n2 * (b2 - 1)
    black_count = (n1 + 1) * (width + 1)

    def black(r: int, c: int) -> int:
        return r * (width + 1) + c

    host: list[tuple[int, int]] = []
    for r in range(n1 + 1):
        for c in range(width):
            host.append((black(r, c), black(r, c + 1)))

    connectors: dict[tuple[int, int], tuple[int, ...]] = {}
    next_id = black_count
    for layer in range(n1):
        for col in _connector_cols(layer, b2, width):
            reds = tuple(range(next_id, next_id + b1 - 2))
            next_id += b1 - 2
            connectors[(layer, col)] = reds
            chain = [black(layer, col), *reds, black(layer + 1, col)]
            for a, b in zip(chain, chain[1:]):
                host.append(normalize_edge(a, b))

    bricks: list[Brick] = []
    colors = ("green", "white", "yellow", "blue")
    for layer in range(n1):
        cols = _connector_cols(layer, b2, width)
        for j in range(len(cols) - 1):
            left, right = cols[j], cols[j + 1]
            color = colors[(0 if layer % 2 == 0 else 2) + j % 2]
            cycle: list[int] = [black(layer, c) for c in range(left, right + 1)]
            cycle.extend(connectors[(layer, right)])
            cycle.extend(black(layer + 1, c) for c in range(right, left - 1, -1))
            cycle.extend(reversed(connectors[(layer, left)]))
            bricks.append(Brick(layer, left, right, color, tuple(cycle)))

    layout = BrickWallLayout(
        n1=n1,
        n2=n2,
        b1=b1,
        b2=b2,
        n=next_id,
        width=width,
        host_edges=tuple(sorted(set(host))),
        black_count=black_count,
        connectors=connectors,
        bricks=tuple(bricks),
        colors=colors,
    )
    _check_color_disjointness(layout)
    return layout


def _check_color_disjointness(layout: BrickWallLayout) -> None:
    seen: dict[str, set[int]] = {c: set() for c in layout.colors}
    for brick in layout.bricks:
        verts = set(brick.cycle)
        overlap = seen[brick.color] & verts
        if overlap:
            raise AssertionError(
                f"bricks of color {brick.color} share vertices {sorted(overlap)[:4]}"
            )
        seen[brick.color] |= verts
