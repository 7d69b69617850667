"""Brute-force geometric checks for a FloorPlan.

Everything here is pairwise and deliberately naive so it can serve as an
oracle for the layout code.
"""

from __future__ import annotations

from itertools import combinations

from .layout import FloorPlan, Rect


def _on_boundary(rect: Rect, seg) -> bool:
    (ax, ay), (bx, by) = seg
    if ay == by:
        return ay in (rect.y0, rect.y1) and rect.x0 <= min(ax, bx) and max(ax, bx) <= rect.x1
    if ax == bx:
        return ax in (rect.x0, rect.x1) and rect.y0 <= min(ay, by) and max(ay, by) <= rect.y1
    return False


def _length(seg):
    (ax, ay), (bx, by) = seg
    return abs(bx - ax) + abs(by - ay)


def _segments_overlap(s, t) -> bool:
    """Collinear axis-parallel segments sharing more than a point."""
    (ax, ay), (bx, by) = s
    (cx, cy), (dx, dy) = t
    if ay == by == cy == dy:
        return max(min(ax, bx), min(cx, dx)) < min(max(ax, bx), max(cx, dx))
    if ax == bx == cx == dx:
        return max(min(ay, by), min(cy, dy)) < min(max(ay, by), max(cy, dy))
    return False


def verify_plan(plan: FloorPlan, dcg=None) -> list[str]:
    """List of human-readable violations; empty when the plan is sound.

    With ``dcg`` given, its door edges that the plan records as tree edges
    must each be realised by exactly one door.
    """
    problems = []
    rooms = {r.id: r for r in plan.rooms}
    if len(rooms) != len(plan.rooms):
        problems.append("duplicate room ids")
    for r in plan.rooms:
        if not (r.rect.width > 0 and r.rect.height > 0):
            problems.append(f"{r.id}: degenerate rectangle")
    for a, b in combinations(plan.rooms, 2):
        if a.rect.overlaps(b.rect):
            problems.append(f"rooms {a.id} and {b.id} overlap")

    for i, d in enumerate(plan.doors):
        if _length(d.segment) != d.width:
            problems.append(f"door {i}: length {_length(d.segment)} != width {d.width}")
        if d.room_a not in rooms or not _on_boundary(rooms[d.room_a].rect, d.segment):
            problems.append(f"door {i}: not on the boundary of {d.room_a}")
        if d.room_b is not None and (d.room_b not in rooms or not _on_boundary(rooms[d.room_b].rect, d.segment)):
            problems.append(f"door {i}: not on the boundary of {d.room_b}")

    for (i, d), (j, e) in combinations(enumerate(plan.doors), 2):
        if _segments_overlap(d.segment, e.segment):
            problems.append(f"doors {i} and {j} overlap")

    tree = plan.tree_edges
    if dcg is not None:
        kinds = {frozenset((e.a, e.b)): e.kind for e in dcg.edges}
        tree = [(a, b, kinds.get(frozenset((a, b)), k)) for a, b, k in plan.tree_edges]
    for a, b, kind in tree:
        if kind != "door":
            continue
        n = len([d for d in plan.doors if {d.room_a, d.room_b} == {a, b}])
        if n != 1:
            problems.append(f"tree edge {a}-{b}: {n} doors instead of 1")

    clearances = [c for d in plan.doors for c in d.clearances]
    for i, f in enumerate(plan.furniture):
        room = rooms.get(f.room_id)
        if room is None or not room.rect.contains(f.rect):
            problems.append(f"furniture {i} ({f.symbol}) outside {f.room_id}")
        if f.rotation % 90:
            problems.append(f"furniture {i}: rotation {f.rotation}")
        for c in clearances:
            if f.rect.overlaps(c):
                problems.append(f"furniture {i} ({f.symbol}) blocks a door clearance")
                break
    for (i, f), (j, g) in combinations(enumerate(plan.furniture), 2):
        if f.rect.overlaps(g.rect):
            problems.append(f"furniture {i} and {j} overlap")

    box = plan.bbox
    for r in plan.rooms:
        if not box.contains(r.rect):
            problems.append(f"bbox misses room {r.id}")
    return problems
