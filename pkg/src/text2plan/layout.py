"""Room placement, doors and furniture in exact arithmetic.

Coordinates are layout units with the origin top-left and y growing
downward. Values stay Python ints whenever they are integral; centring a
door on an odd-length segment yields a ``Fraction``, never a float.

Walls are numbered clockwise starting from the top: 1 top, 2 right,
3 bottom, 4 left. Offsets along a wall always run in the direction of the
increasing coordinate (x for walls 1 and 3, y for walls 2 and 4).
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import FurnitureOverflow, PlacementFailure, UnsupportedShape, WallOverflow
from .extractor import DoorConnectivityGraph, RoomSpec
from .symbols import FOOTPRINTS

log = logging.getLogger("text2plan.layout")

Number = int | Fraction

HORIZONTAL_WALLS = (1, 3)


def exact(value) -> Number:
    """Exact value of an int, Fraction, float or numeric string."""
    if isinstance(value, bool):
        raise TypeError("booleans are not lengths")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, float):
        q = Fraction(repr(value))
    else:
        q = Fraction(str(value))
    return q.numerator if q.denominator == 1 else q


def _div(a: Number, b: int) -> Number:
    return exact(Fraction(a) / b)


def encode_number(x: Number):
    x = exact(x)
    return x if isinstance(x, int) else f"{x.numerator}/{x.denominator}"


def decode_number(v) -> Number:
    if isinstance(v, float):
        raise ValueError(f"floating point coordinate {v!r} in plan")
    return exact(v)


@dataclass(frozen=True)
class Rect:
    x0: Number
    y0: Number
    x1: Number
    y1: Number

    @property
    def width(self) -> Number:
        return self.x1 - self.x0

    @property
    def height(self) -> Number:
        return self.y1 - self.y0

    def overlaps(self, other: "Rect") -> bool:
        """True when the interiors intersect; touching edges do not count."""
        return self.x0 < other.x1 and other.x0 < self.x1 and self.y0 < other.y1 and other.y0 < self.y1

    def contains(self, other: "Rect") -> bool:
        return self.x0 <= other.x0 and self.y0 <= other.y0 and other.x1 <= self.x1 and other.y1 <= self.y1

    def translate(self, dx: Number, dy: Number) -> "Rect":
        return Rect(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy)

    def scale(self, k: int) -> "Rect":
        return Rect(self.x0 * k, self.y0 * k, self.x1 * k, self.y1 * k)

    def union(self, other: "Rect") -> "Rect":
        return Rect(min(self.x0, other.x0), min(self.y0, other.y0), max(self.x1, other.x1), max(self.y1, other.y1))

    def wall(self, k: int) -> tuple[tuple[Number, Number], tuple[Number, Number]]:
        """Wall ``k`` as a clockwise segment."""
        x0, y0, x1, y1 = self.x0, self.y0, self.x1, self.y1
        return {
            1: ((x0, y0), (x1, y0)),
            2: ((x1, y0), (x1, y1)),
            3: ((x1, y1), (x0, y1)),
            4: ((x0, y1), (x0, y0)),
        }[k]

    def wall_line(self, k: int) -> tuple[Number, Number, Number]:
        """``(fixed coordinate, start, end)`` with start < end along the wall."""
        if k == 1:
            return self.y0, self.x0, self.x1
        if k == 2:
            return self.x1, self.y0, self.y1
        if k == 3:
            return self.y1, self.x0, self.x1
        if k == 4:
            return self.x0, self.y0, self.y1
        raise ValueError(f"no wall {k}")

    def to_json(self) -> list:
        return [encode_number(v) for v in (self.x0, self.y0, self.x1, self.y1)]

    @classmethod
    def from_json(cls, data: Sequence) -> "Rect":
        return cls(*(decode_number(v) for v in data))


def wall_length(rect: Rect, k: int) -> Number:
    return rect.width if k in HORIZONTAL_WALLS else rect.height


def opposite_wall(k: int) -> int:
    return (k + 1) % 4 + 1


def _segment(k: int, fixed: Number, a: Number, b: Number) -> tuple[tuple[Number, Number], tuple[Number, Number]]:
    """Segment on the line of wall ``k`` from coordinate ``a`` to ``b``."""
    if k in HORIZONTAL_WALLS:
        return (a, fixed), (b, fixed)
    return (fixed, a), (fixed, b)


def _clearance(rect: Rect, k: int, a: Number, b: Number, depth: Number) -> Rect:
    """Square-ish zone in front of an opening ``[a, b]`` on wall ``k``, inside ``rect``."""
    if k == 1:
        return Rect(a, rect.y0, b, rect.y0 + depth)
    if k == 3:
        return Rect(a, rect.y1 - depth, b, rect.y1)
    if k == 2:
        return Rect(rect.x1 - depth, a, rect.x1, b)
    return Rect(rect.x0, a, rect.x0 + depth, b)


# -- plan data model ---------------------------------------------------------


@dataclass(frozen=True)
class LayoutParams:
    door_width: Number = 40
    tile_gap: Number = 60
    slide_step: Number = 5
    footprints: Mapping[str, tuple[Number, Number]] = field(default_factory=lambda: dict(FOOTPRINTS))

    def scaled(self, k: int) -> "LayoutParams":
        """Every length multiplied by ``k``; used for scale-equivariant runs."""
        return LayoutParams(
            self.door_width * k,
            self.tile_gap * k,
            self.slide_step * k,
            {s: (w * k, d * k) for s, (w, d) in self.footprints.items()},
        )


@dataclass(frozen=True)
class PlacedRoom:
    id: str
    type: str
    rect: Rect

    @property
    def walls(self):
        return [self.rect.wall(k) for k in (1, 2, 3, 4)]

    @property
    def label_anchor(self) -> tuple[Number, Number]:
        return _div(self.rect.x0 + self.rect.x1, 2), _div(self.rect.y0 + self.rect.y1, 2)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "type": self.type,
            "rect": self.rect.to_json(),
            "walls": [[encode_number(v) for p in w for v in p] for w in self.walls],
            "label_anchor": [encode_number(v) for v in self.label_anchor],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PlacedRoom":
        return cls(data["id"], data["type"], Rect.from_json(data["rect"]))


@dataclass(frozen=True)
class Door:
    """An opening of ``width`` on wall ``wall_a`` of ``room_a``.

    ``room_b`` is the room on the other side, or None for exterior doors.
    ``clearances`` are the zones furniture must keep free, one per room the
    door opens into.
    """

    room_a: str
    wall_a: int
    room_b: str | None
    wall_b: int | None
    segment: tuple[tuple[Number, Number], tuple[Number, Number]]
    width: Number
    kind: str  # "interior" or "exterior"
    clearances: tuple[Rect, ...]

    def to_json(self) -> dict:
        return {
            "room_a": self.room_a,
            "wall_a": self.wall_a,
            "room_b": self.room_b,
            "wall_b": self.wall_b,
            "segment": [encode_number(v) for p in self.segment for v in p],
            "width": encode_number(self.width),
            "kind": self.kind,
            "clearances": [c.to_json() for c in self.clearances],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Door":
        s = [decode_number(v) for v in data["segment"]]
        return cls(
            data["room_a"],
            int(data["wall_a"]),
            data.get("room_b"),
            None if data.get("wall_b") is None else int(data["wall_b"]),
            ((s[0], s[1]), (s[2], s[3])),
            decode_number(data["width"]),
            data["kind"],
            tuple(Rect.from_json(c) for c in data["clearances"]),
        )


@dataclass(frozen=True)
class FurniturePlacement:
    room_id: str
    symbol: str
    rect: Rect
    rotation: int

    def to_json(self) -> dict:
        return {"room": self.room_id, "symbol": self.symbol, "rect": self.rect.to_json(), "rotation": self.rotation}

    @classmethod
    def from_json(cls, data: Mapping) -> "FurniturePlacement":
        return cls(data["room"], data["symbol"], Rect.from_json(data["rect"]), int(data["rotation"]))


@dataclass
class FloorPlan:
    rooms: list[PlacedRoom] = field(default_factory=list)
    doors: list[Door] = field(default_factory=list)
    furniture: list[FurniturePlacement] = field(default_factory=list)
    # DFS tree edges as (parent, child, kind), in placement order
    tree_edges: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def bbox(self) -> Rect:
        if not self.rooms:
            return Rect(0, 0, 0, 0)
        box = self.rooms[0].rect
        for r in self.rooms[1:]:
            box = box.union(r.rect)
        return box

    def room(self, room_id: str) -> PlacedRoom:
        for r in self.rooms:
            if r.id == room_id:
                return r
        raise KeyError(room_id)

    def doors_between(self, a: str, b: str) -> list[Door]:
        return [d for d in self.doors if {d.room_a, d.room_b} == {a, b}]

    def to_json(self) -> dict:
        return {
            "bbox": self.bbox.to_json(),
            "rooms": [r.to_json() for r in self.rooms],
            "doors": [d.to_json() for d in self.doors],
            "furniture": [f.to_json() for f in self.furniture],
            "tree_edges": [list(e) for e in self.tree_edges],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FloorPlan":
        return cls(
            [PlacedRoom.from_json(r) for r in data["rooms"]],
            [Door.from_json(d) for d in data["doors"]],
            [FurniturePlacement.from_json(f) for f in data["furniture"]],
            [tuple(e) for e in data.get("tree_edges", [])],
        )


def dump_plan(plan: FloorPlan) -> str:
    return json.dumps(plan.to_json(), indent=2) + "\n"


def load_plan(text: str) -> FloorPlan:
    data = json.loads(text)
    if not isinstance(data, dict) or "rooms" not in data or "doors" not in data:
        raise ValueError("plan.json must hold an object with rooms and doors")
    return FloorPlan.from_json(data)


# -- rooms -------------------------------------------------------------------


def synthesize_local(spec: RoomSpec) -> Rect:
    """The room in its own frame: top-left corner at the origin."""
    if spec.shape != "rectangle" or spec.sides != 4:
        raise UnsupportedShape(f"{spec.id}: only rectangles can be laid out, got {spec.shape!r}")
    w, h = exact(spec.dimensions[0]), exact(spec.dimensions[1])
    if w <= 0 or h <= 0:
        raise UnsupportedShape(f"{spec.id}: non-positive dimensions")
    return Rect(0, 0, w, h)


def choose_entry_room(dcg: DoorConnectivityGraph, specs: Sequence[RoomSpec]) -> str:
    """A room flagged as entrance, else a hall, else the lowest id."""
    ids = set(dcg.nodes) if dcg.nodes else {s.id for s in specs}
    pool = [s for s in specs if s.id in ids]
    if not pool:
        raise ValueError("no rooms to choose an entry from")
    for chosen in ([s for s in pool if s.entrance], [s for s in pool if s.type == "hall"], pool):
        if chosen:
            return min(s.id for s in chosen)
    raise AssertionError("unreachable")


def _attach_rect(parent: Rect, k: int, local: Rect, offset: Number) -> Rect:
    """Child flush against wall ``k`` of ``parent``, shifted by ``offset`` along it."""
    w, h = local.width, local.height
    if k == 1:
        return Rect(parent.x0 + offset, parent.y0 - h, parent.x0 + offset + w, parent.y0)
    if k == 3:
        return Rect(parent.x0 + offset, parent.y1, parent.x0 + offset + w, parent.y1 + h)
    if k == 2:
        return Rect(parent.x1, parent.y0 + offset, parent.x1 + w, parent.y0 + offset + h)
    return Rect(parent.x0 - w, parent.y0 + offset, parent.x0, parent.y0 + offset + h)


def attachment_candidates(parent: Rect, k: int, local: Rect, placed: Iterable[Rect], min_shared: Number):
    """Offsets to try on wall ``k``: 0 (corner aligned) first, then ascending.

    Offsets range over every position that leaves at least ``min_shared`` of
    wall in common. Between the range minimum and the right edges of rooms
    already on that side, feasibility cannot change, so those event points
    are exactly the offsets an exhaustive ascending scan would accept first.
    """
    along = local.width if k in HORIZONTAL_WALLS else local.height
    start = parent.x0 if k in HORIZONTAL_WALLS else parent.y0
    lo = min_shared - along
    hi = wall_length(parent, k) - min_shared
    if lo > hi:
        return []
    events = {lo}
    for r in placed:
        edge = (r.x1 if k in HORIZONTAL_WALLS else r.y1) - start
        if lo < edge <= hi:
            events.add(edge)
    ordered = sorted(events)
    if lo <= 0 <= hi:
        ordered = [0] + [o for o in ordered if o != 0]
    return ordered


def _shared_interval(a: Rect, ka: int, b: Rect) -> tuple[int, Number, Number] | None:
    """Overlap of wall ``ka`` of ``a`` with the facing wall of ``b``."""
    kb = opposite_wall(ka)
    fa, a0, a1 = a.wall_line(ka)
    fb, b0, b1 = b.wall_line(kb)
    if fa != fb:
        return None
    lo, hi = max(a0, b0), min(a1, b1)
    if hi <= lo:
        return None
    return kb, lo, hi


def shared_wall(a: Rect, b: Rect) -> tuple[int, int, Number, Number] | None:
    """Longest common wall stretch of two rooms: ``(wall_a, wall_b, lo, hi)``."""
    best = None
    for ka in (1, 2, 3, 4):
        s = _shared_interval(a, ka, b)
        if s and (best is None or s[2] - s[1] > best[3] - best[2]):
            best = (ka, s[0], s[1], s[2])
    return best


def _interior_door(a: PlacedRoom, b: PlacedRoom, ka: int, kb: int, lo: Number, hi: Number, width: Number) -> Door:
    mid = _div(lo + hi, 2)
    s0, s1 = mid - _div(width, 2), mid + _div(width, 2)
    fixed = a.rect.wall_line(ka)[0]
    return Door(
        a.id,
        ka,
        b.id,
        kb,
        _segment(ka, fixed, s0, s1),
        width,
        "interior",
        (_clearance(a.rect, ka, s0, s1, width), _clearance(b.rect, kb, s0, s1, width)),
    )


def dfs_tree(dcg: DoorConnectivityGraph, entry: str) -> list[tuple[str, str, str]]:
    """Tree edges ``(parent, child, kind)`` in DFS preorder of the children.

    Neighbours are visited in node-list order, so the tree depends only on
    the graph, never on geometry.
    """
    seen = {entry}
    tree = []
    stack = [(entry, iter(dcg.neighbors(entry)))]
    while stack:
        parent, pending = stack[-1]
        child = next((m for m in pending if m not in seen), None)
        if child is None:
            stack.pop()
            continue
        seen.add(child)
        tree.append((parent, child, dcg.edge(parent, child).kind))
        stack.append((child, iter(dcg.neighbors(child))))
    return tree


# backtracking is only needed when greedy attachment boxes a room in; the
# budget bounds the search on pathological inputs
SEARCH_BUDGET = 20000


def _attach_all(entry: str, tree, local: Mapping[str, Rect], min_shared: Number):
    """First placement (in scan order, room by room) that fits everyone.

    Returns ``(rects, failed_index)``: on success ``failed_index`` is None.
    When the greedy first choice works this is exactly the greedy result.
    """
    rects = {entry: local[entry]}
    budget = [SEARCH_BUDGET]
    deepest = [0]

    def place(i: int) -> bool:
        if i == len(tree):
            return True
        deepest[0] = max(deepest[0], i)
        parent, child, _ = tree[i]
        placed = list(rects.values())
        for k in (1, 2, 3, 4):
            for offset in attachment_candidates(rects[parent], k, local[child], placed, min_shared):
                budget[0] -= 1
                if budget[0] < 0:
                    return False
                cand = _attach_rect(rects[parent], k, local[child], offset)
                if any(cand.overlaps(r) for r in placed):
                    continue
                rects[child] = cand
                if place(i + 1):
                    return True
                del rects[child]
        return False

    if place(0):
        return rects, None
    return rects, deepest[0]


def _place_component(
    nodes: list[str],
    dcg: DoorConnectivityGraph,
    specs: Mapping[str, RoomSpec],
    params: LayoutParams,
    plan: FloorPlan,
) -> None:
    entry = choose_entry_room(DoorConnectivityGraph(nodes, []), [specs[n] for n in nodes])
    local = {n: synthesize_local(specs[n]) for n in nodes}
    tree = dfs_tree(dcg, entry)
    rects, failed = _attach_all(entry, tree, local, params.door_width)
    if failed is not None:
        parent, child, _ = tree[failed]
        # the greedy prefix is the most useful partial picture
        order = [entry] + [c for _, c, _ in tree[:failed]]
        greedy, _ = _attach_all(entry, tree[:failed], local, params.door_width)
        partial = {n: PlacedRoom(n, specs[n].type, greedy[n]) for n in order}
        plan.rooms.extend(partial[n] for n in order)
        plan.tree_edges.extend(tree[:failed])
        for a, b, kind in tree[:failed]:
            if kind == "door":
                ka, kb, lo, hi = shared_wall(greedy[a], greedy[b])
                plan.doors.append(_interior_door(partial[a], partial[b], ka, kb, lo, hi, params.door_width))
        raise PlacementFailure(f"no free wall of {parent} can take {child}", partial_plan=plan)
    order = [entry] + [c for _, c, _ in tree]

    # tile to the right of what is already placed
    if plan.rooms:
        x0 = min(rects[n].x0 for n in order)
        dx = plan.bbox.x1 + params.tile_gap - x0
        rects = {n: r.translate(dx, 0) for n, r in rects.items()}
    placed_rooms = {n: PlacedRoom(n, specs[n].type, rects[n]) for n in order}
    plan.rooms.extend(placed_rooms[n] for n in order)
    plan.tree_edges.extend(tree)

    tree_pairs = {frozenset((a, b)) for a, b, _ in tree}
    for a, b, kind in tree:
        if kind != "door":
            continue
        ka, kb, lo, hi = shared_wall(rects[a], rects[b])
        plan.doors.append(_interior_door(placed_rooms[a], placed_rooms[b], ka, kb, lo, hi, params.door_width))
    for e in dcg.edges:
        if e.a not in rects or frozenset((e.a, e.b)) in tree_pairs:
            continue
        s = shared_wall(rects[e.a], rects[e.b])
        if e.kind == "adjacent":
            if s is None:
                log.warning("%s and %s are meant to be adjacent but share no wall", e.a, e.b)
            continue
        if s is None or s[3] - s[2] < params.door_width:
            log.warning("door between %s and %s dropped: rooms share no wall stretch of %s", e.a, e.b, params.door_width)
            continue
        plan.doors.append(_interior_door(placed_rooms[e.a], placed_rooms[e.b], *s, params.door_width))


def dfs_place(
    dcg: DoorConnectivityGraph,
    specs: Sequence[RoomSpec],
    seed: int = 0,
    params: LayoutParams = LayoutParams(),
) -> FloorPlan:
    """Place every room by depth-first traversal of the connectivity graph.

    The entry room of the first component gets its top-left corner at the
    origin. Each tree edge attaches the child to the first free wall of the
    parent (walls clockwise from the top, offsets as in
    :func:`attachment_candidates`). If an early choice boxes a later room
    in, the search backs up to the next candidate of the previous room, so
    the result is the first arrangement in scan order that fits. Tree door edges get a door centred on
    the shared stretch; other door edges get one only if the rooms happen
    to share at least a door width of wall. Further components are tiled
    to the right. ``seed`` is accepted for interface symmetry; placement
    itself uses no randomness.
    """
    by_id = {s.id: s for s in specs}
    if len(by_id) != len(specs):
        raise ValueError("room ids must be unique")
    nodes = list(dcg.nodes) + [s.id for s in specs if s.id not in set(dcg.nodes)]
    graph = DoorConnectivityGraph(nodes, list(dcg.edges))
    plan = FloorPlan()
    comps = graph.components()
    if len(comps) > 1:
        log.warning("connectivity graph has %d components; tiling them left to right", len(comps))
    # the component holding the overall entry room goes first
    if comps:
        entry = choose_entry_room(graph, specs)
        comps.sort(key=lambda c: entry not in c)
    for comp in comps:
        _place_component(comp, graph, by_id, params, plan)
    return plan


# -- exterior doors ----------------------------------------------------------


def wall_door_offsets(length: Number, count: int, width: Number) -> list[Number]:
    """Start offsets of ``count`` doors spread evenly along a wall."""
    gap = _div(length - count * width, count + 1)
    if gap < 0:
        raise WallOverflow(f"{count} doors of width {width} do not fit on a wall of {length}")
    return [gap + i * (gap + width) for i in range(count)]


def place_doors(plan: FloorPlan, specs: Sequence[RoomSpec], params: LayoutParams = LayoutParams()) -> FloorPlan:
    """Add the doors a room asks for on walls without a connecting door.

    The outward clearance goes to whichever room, if any, lies behind the
    opening; otherwise the door is marked exterior.
    """
    by_id = {s.id: s for s in specs}
    doors = list(plan.doors)
    used = {(d.room_a, d.wall_a) for d in plan.doors} | {(d.room_b, d.wall_b) for d in plan.doors if d.room_b}
    w = params.door_width
    for room in plan.rooms:
        spec = by_id.get(room.id)
        if spec is None:
            continue
        for wall, count in spec.door_placement:
            if (room.id, wall) in used:
                continue
            fixed, start, _ = room.rect.wall_line(wall)
            for off in wall_door_offsets(wall_length(room.rect, wall), count, w):
                a, b = start + off, start + off + w
                seg = _segment(wall, fixed, a, b)
                inside = _clearance(room.rect, wall, a, b, w)
                outside = _clearance(_outside_strip(room.rect, wall, w), opposite_wall(wall), a, b, w)
                facing = [r for r in plan.rooms if r.id != room.id and r.rect.overlaps(outside)]
                behind = next((r for r in facing if _covers(r.rect, opposite_wall(wall), fixed, a, b)), None)
                if behind is not None:
                    log.info("door on wall %d of %s opens into %s", wall, room.id, behind.id)
                    doors.append(Door(room.id, wall, behind.id, opposite_wall(wall), seg, w, "interior", (inside, outside)))
                    # the neighbour's own request for that wall is now served
                    used.add((behind.id, opposite_wall(wall)))
                elif facing:
                    log.warning("door on wall %d of %s partly faces %s", wall, room.id, facing[0].id)
                    doors.append(Door(room.id, wall, None, None, seg, w, "exterior", (inside, outside)))
                else:
                    doors.append(Door(room.id, wall, None, None, seg, w, "exterior", (inside,)))
    return replace(plan, doors=doors)


def _covers(rect: Rect, k: int, fixed: Number, a: Number, b: Number) -> bool:
    f, lo, hi = rect.wall_line(k)
    return f == fixed and lo <= a and b <= hi


def _outside_strip(rect: Rect, k: int, depth: Number) -> Rect:
    """The band of width ``depth`` just outside wall ``k``."""
    if k == 1:
        return Rect(rect.x0, rect.y0 - depth, rect.x1, rect.y0)
    if k == 3:
        return Rect(rect.x0, rect.y1, rect.x1, rect.y1 + depth)
    if k == 2:
        return Rect(rect.x1, rect.y0, rect.x1 + depth, rect.y1)
    return Rect(rect.x0 - depth, rect.y0, rect.x0, rect.y1)


# -- furniture ---------------------------------------------------------------

ROTATION_FOR_WALL = {1: 0, 2: 90, 3: 180, 4: 270}


def _wall_positions(length: Number, size: Number, step: Number) -> list[Number]:
    if size > length:
        return []
    out, p = [], 0
    while p < length - size:
        out.append(p)
        p += step
    out.append(length - size)
    return out


def _against_wall(room: Rect, k: int, offset: Number, width: Number, depth: Number) -> Rect:
    # offset measured clockwise from the wall's starting corner
    if k == 1:
        return Rect(room.x0 + offset, room.y0, room.x0 + offset + width, room.y0 + depth)
    if k == 2:
        return Rect(room.x1 - depth, room.y0 + offset, room.x1, room.y0 + offset + width)
    if k == 3:
        return Rect(room.x1 - offset - width, room.y1 - depth, room.x1 - offset, room.y1)
    return Rect(room.x0, room.y1 - offset - width, room.x0 + depth, room.y1 - offset)


def furniture_candidates(room: Rect, corner: int, width: Number, depth: Number, step: Number):
    """Clockwise walk around the walls starting at ``corner``.

    Corners are numbered like the walls that leave them clockwise:
    0 top-left (wall 1), 1 top-right (wall 2), 2 bottom-right, 3 bottom-left.
    """
    for i in range(4):
        k = (corner + i) % 4 + 1
        across = room.height if k in HORIZONTAL_WALLS else room.width
        if depth > across:
            continue
        for off in _wall_positions(wall_length(room, k), width, step):
            yield k, _against_wall(room, k, off, width, depth)


def place_furniture(
    room: PlacedRoom,
    furnitures: Sequence[tuple[str, int]],
    doors: Sequence[Door],
    seed: int = 0,
    params: LayoutParams = LayoutParams(),
    strict: bool = False,
) -> list[FurniturePlacement]:
    """Greedy wall-hugging placement, deterministic for ``(seed, room.id)``.

    Each item starts in a randomly chosen corner and slides clockwise in
    steps of ``params.slide_step`` until it clears earlier items and every
    door clearance.
    """
    rng = random.Random(f"{seed}/{room.id}")
    blocked = [c for d in doors for c in d.clearances if c.overlaps(room.rect)]
    out: list[FurniturePlacement] = []
    for symbol, count in furnitures:
        width, depth = params.footprints[symbol]
        for _ in range(count):
            corner = rng.randrange(4)
            taken = blocked + [f.rect for f in out]
            spot = next(
                (
                    (k, r)
                    for k, r in furniture_candidates(room.rect, corner, width, depth, params.slide_step)
                    if not any(r.overlaps(t) for t in taken)
                ),
                None,
            )
            if spot is None:
                msg = f"no room for {symbol} in {room.id}"
                if strict:
                    raise FurnitureOverflow(msg)
                log.warning("%s; skipped", msg)
                continue
            out.append(FurniturePlacement(room.id, symbol, spot[1], ROTATION_FOR_WALL[spot[0]]))
    return out


def layout_plan(
    specs: Sequence[RoomSpec],
    dcg: DoorConnectivityGraph,
    seed: int = 0,
    params: LayoutParams = LayoutParams(),
    strict: bool = False,
) -> FloorPlan:
    """Rooms, then doors, then furniture."""
    plan = place_doors(dfs_place(dcg, specs, seed, params), specs, params)
    by_id = {s.id: s for s in specs}
    furniture = []
    for room in plan.rooms:
        furniture.extend(place_furniture(room, by_id[room.id].furnitures, plan.doors, seed, params, strict))
    return replace(plan, furniture=furniture)


def scale_specs(specs: Sequence[RoomSpec], k: int) -> list[RoomSpec]:
    return [replace(s, dimensions=[exact(d) * k for d in s.dimensions]) for s in specs]
