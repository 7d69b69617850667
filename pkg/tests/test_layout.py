import json
import logging
import random
from dataclasses import replace
from fractions import Fraction

import pytest

from conftest import HALL_RECORD, scale_plan_json
from text2plan.errors import FurnitureOverflow, PlacementFailure, UnsupportedShape, WallOverflow
from text2plan.extractor import DoorConnectivityGraph, Edge, RoomSpec, build_dcg
from text2plan.generator import generate_document, size_for_seed
from text2plan.layout import (
    Door,
    FloorPlan,
    FurniturePlacement,
    LayoutParams,
    PlacedRoom,
    Rect,
    attachment_candidates,
    choose_entry_room,
    decode_number,
    dfs_place,
    dfs_tree,
    dump_plan,
    encode_number,
    exact,
    furniture_candidates,
    layout_plan,
    load_plan,
    opposite_wall,
    place_furniture,
    scale_specs,
    shared_wall,
    synthesize_local,
    wall_door_offsets,
)
from text2plan.verify import verify_plan


def room(rid, w, h, doors=((1, 1),), furn=(), rtype=None, entrance=False):
    return RoomSpec(
        rid,
        rtype or rid.rstrip("0123456789"),
        dimensions=[w, h, w, h],
        door_placement=list(doors),
        furnitures=list(furn),
        entrance=entrance,
    )


def graph(nodes, *edges):
    return DoorConnectivityGraph(list(nodes), [Edge(a, b, k) for a, b, k in edges])


# -- numbers and rectangles --------------------------------------------------


def test_exact_numbers():
    assert exact(3) == 3 and isinstance(exact(3), int)
    assert exact(2.5) == Fraction(5, 2)
    assert exact(4.0) == 4 and isinstance(exact(4.0), int)
    assert exact("7/2") == Fraction(7, 2)
    with pytest.raises(TypeError):
        exact(True)


def test_number_encoding():
    assert encode_number(Fraction(5, 2)) == "5/2"
    assert encode_number(6) == 6
    assert decode_number("5/2") == Fraction(5, 2)
    with pytest.raises(ValueError):
        decode_number(2.5)


def test_rect_overlap_ignores_touching():
    a = Rect(0, 0, 10, 10)
    assert not a.overlaps(Rect(10, 0, 20, 10))
    assert not a.overlaps(Rect(0, 10, 10, 20))
    assert a.overlaps(Rect(9, 9, 20, 20))
    assert a.contains(Rect(0, 0, 10, 10))


def test_walls_are_clockwise_from_top():
    r = Rect(0, 0, 4, 3)
    assert r.wall(1) == ((0, 0), (4, 0))
    assert r.wall(2) == ((4, 0), (4, 3))
    assert r.wall(3) == ((4, 3), (0, 3))
    assert r.wall(4) == ((0, 3), (0, 0))
    assert [opposite_wall(k) for k in (1, 2, 3, 4)] == [3, 4, 1, 2]


def test_synthesize_local():
    assert synthesize_local(room("hall1", 250, 200)) == Rect(0, 0, 250, 200)
    tri = RoomSpec("hall1", "hall", shape="triangle", sides=3, dimensions=[100, 100, 100])
    with pytest.raises(UnsupportedShape):
        synthesize_local(tri)


def test_shared_wall():
    a, b = Rect(0, 0, 200, 150), Rect(50, -150, 200, 0)
    assert shared_wall(a, b) == (1, 3, 50, 200)
    assert shared_wall(a, Rect(300, 0, 400, 10)) is None


def test_attachment_candidates_start_with_zero():
    parent, local = Rect(0, 0, 200, 150), Rect(0, 0, 150, 150)
    cands = attachment_candidates(parent, 1, local, [parent], 40)
    assert cands[0] == 0
    assert cands[1:] == sorted(cands[1:])
    assert min(cands) == 40 - 150 and max(cands) <= 200 - 40


# -- entry room and DFS ------------------------------------------------------


def test_entry_room_priority():
    specs = [room("kitchen1", 100, 100), room("hall1", 100, 100), room("bathroom1", 100, 100)]
    g = graph([s.id for s in specs])
    assert choose_entry_room(g, specs) == "hall1"
    specs[2] = replace(specs[2], entrance=True)
    assert choose_entry_room(g, specs) == "bathroom1"
    plain = [room("kitchen1", 100, 100), room("bedroom1", 100, 100)]
    assert choose_entry_room(graph(["kitchen1", "bedroom1"]), plain) == "bedroom1"


def test_dfs_tree_uses_node_order():
    g = graph(["a", "b", "c", "d"], ("a", "c", "door"), ("a", "b", "door"), ("b", "d", "adjacent"), ("c", "d", "door"))
    assert dfs_tree(g, "a") == [("a", "b", "door"), ("b", "d", "adjacent"), ("d", "c", "door")]


# -- placement goldens -------------------------------------------------------


def test_two_room_golden():
    # A is the entry at the origin; B goes on A's top wall at offset 0 and the
    # door is centred on the 150-long shared stretch: 75 +- 20.
    specs = [room("hall1", 200, 150), room("kitchen1", 150, 150)]
    plan = dfs_place(graph(["hall1", "kitchen1"], ("hall1", "kitchen1", "door")), specs)
    assert plan.room("hall1").rect == Rect(0, 0, 200, 150)
    assert plan.room("kitchen1").rect == Rect(0, -150, 150, 0)
    (door,) = plan.doors
    assert door.segment == ((55, 0), (95, 0))
    assert (door.room_a, door.wall_a, door.room_b, door.wall_b) == ("hall1", 1, "kitchen1", 3)
    assert door.kind == "interior"
    assert door.clearances == (Rect(55, 0, 95, 40), Rect(55, -40, 95, 0))


def test_adjacent_edge_has_no_door():
    specs = [room("hall1", 200, 150), room("kitchen1", 150, 150)]
    plan = dfs_place(graph(["hall1", "kitchen1"], ("hall1", "kitchen1", "adjacent")), specs)
    assert plan.doors == []
    assert shared_wall(plan.room("hall1").rect, plan.room("kitchen1").rect)[3] - 0 >= 40


def test_second_child_goes_clockwise():
    specs = [room("hall1", 200, 150), room("kitchen1", 200, 100), room("bedroom1", 100, 150)]
    g = graph([s.id for s in specs], ("hall1", "kitchen1", "door"), ("hall1", "bedroom1", "door"))
    plan = dfs_place(g, specs)
    assert plan.room("kitchen1").rect == Rect(0, -100, 200, 0)
    assert plan.room("bedroom1").rect == Rect(200, 0, 300, 150)
    assert verify_plan(plan, g) == []


def test_fractional_door_position():
    specs = [room("hall1", 200, 150), room("kitchen1", 75, 75)]
    plan = dfs_place(graph(["hall1", "kitchen1"], ("hall1", "kitchen1", "door")), specs)
    (door,) = plan.doors
    assert door.segment == ((Fraction(35, 2), 0), (Fraction(115, 2), 0))
    assert json.loads(dump_plan(plan))["doors"][0]["segment"] == ["35/2", 0, "115/2", 0]


def test_star_that_cannot_fit():
    leaves = [room(f"bedroom{i}", 1000, 1000) for i in range(1, 6)]
    specs = [room("hall1", 40, 40)] + leaves
    g = graph([s.id for s in specs], *[("hall1", leaf.id, "door") for leaf in leaves])
    with pytest.raises(PlacementFailure) as info:
        dfs_place(g, specs)
    partial = info.value.partial_plan
    assert partial is not None
    assert len(partial.rooms) == 5
    assert verify_plan(partial) == []


def test_backtracking_recovers_from_boxed_in_child():
    for seed in range(500):
        doc = generate_document(seed, size_for_seed(seed))
        dcg = build_dcg(doc.plan.rooms, doc.plan.relations())
        plan = dfs_place(dcg, doc.plan.rooms)
        assert len(plan.rooms) == len(doc.plan.rooms)


def test_components_are_tiled_left_to_right(caplog):
    specs = [room("kitchen1", 100, 80), room("hall1", 200, 150), room("bedroom1", 120, 100)]
    g = graph(["kitchen1", "hall1", "bedroom1"], ("kitchen1", "bedroom1", "door"))
    with caplog.at_level(logging.WARNING, logger="text2plan.layout"):
        plan = dfs_place(g, specs)
    assert "2 components" in caplog.text
    assert [r.id for r in plan.rooms] == ["hall1", "bedroom1", "kitchen1"]
    assert plan.room("hall1").rect == Rect(0, 0, 200, 150)
    assert plan.room("bedroom1").rect.x0 == 200 + 60
    assert plan.room("bedroom1").rect.y0 == 0
    assert verify_plan(plan, g) == []


def test_unique_ids_required():
    with pytest.raises(ValueError):
        dfs_place(graph(["a1"]), [room("hall1", 10, 10), room("hall1", 10, 10)])


# -- exterior doors ----------------------------------------------------------


@pytest.mark.parametrize(
    "length,count,width,offsets",
    [(80, 1, 40, [20]), (200, 2, 40, [40, 120]), (40, 1, 40, [0]), (100, 2, 40, [Fraction(20, 3), Fraction(160, 3)])],
)
def test_wall_door_offsets(length, count, width, offsets):
    assert wall_door_offsets(length, count, width) == offsets


def test_wall_overflow():
    with pytest.raises(WallOverflow):
        wall_door_offsets(100, 3, 40)
    spec = room("hall1", 100, 100, doors=[(1, 3)])
    with pytest.raises(WallOverflow):
        layout_plan([spec], graph(["hall1"]))


def test_requested_door_into_neighbour_becomes_interior():
    # kitchen and bedroom both land on the hall's top wall, side by side;
    # the kitchen asks for a door on wall 2, which the bedroom covers
    specs = [room("hall1", 200, 100, doors=[]), room("kitchen1", 100, 100, doors=[(2, 1)]),
             room("bedroom1", 100, 100, doors=[])]
    g = graph([s.id for s in specs], ("hall1", "kitchen1", "door"), ("hall1", "bedroom1", "door"))
    plan = layout_plan(specs, g)
    assert plan.room("kitchen1").rect == Rect(0, -100, 100, 0)
    assert plan.room("bedroom1").rect == Rect(100, -100, 200, 0)
    extra = [d for d in plan.doors if d.room_a == "kitchen1" and d.room_b != "hall1"]
    assert len(extra) == 1
    assert (extra[0].kind, extra[0].room_b, extra[0].wall_b) == ("interior", "bedroom1", 4)
    assert extra[0].segment == ((100, -70), (100, -30))
    assert len(extra[0].clearances) == 2
    assert verify_plan(plan, g) == []


def test_requested_door_partly_facing_stays_exterior(caplog):
    specs = [room("hall1", 200, 100, doors=[]), room("kitchen1", 100, 100, doors=[(2, 1)]),
             room("bedroom1", 100, 50, doors=[])]
    g = graph([s.id for s in specs], ("hall1", "kitchen1", "door"), ("hall1", "bedroom1", "door"))
    with caplog.at_level(logging.WARNING, logger="text2plan.layout"):
        plan = layout_plan(specs, g)
    assert plan.room("bedroom1").rect == Rect(100, -50, 200, 0)
    (extra,) = [d for d in plan.doors if d.room_a == "kitchen1" and d.room_b != "hall1"]
    assert extra.kind == "exterior" and len(extra.clearances) == 2
    assert "partly faces" in caplog.text
    assert verify_plan(plan, g) == []


def test_hall_fixture_doors_and_furniture():
    spec = RoomSpec.from_json(HALL_RECORD)
    plan = layout_plan([spec], graph(["hall1"]))
    assert [(d.wall_a, d.segment, d.kind) for d in plan.doors] == [
        (2, ((250, 80), (250, 120)), "exterior"),
        (3, ((105, 200), (145, 200)), "exterior"),
    ]
    # both items draw the top-right corner; the sofa fits at once, the chair
    # slides down wall 2 past the sofa and the door clearance (y 80..120)
    assert [(f.symbol, f.rect, f.rotation) for f in plan.furniture] == [
        ("sofa", Rect(215, 0, 250, 80), 90),
        ("chair", Rect(225, 120, 250, 145), 90),
    ]
    assert verify_plan(plan) == []


def _corner_for(room_id, seed=0):
    return random.Random(f"{seed}/{room_id}").randrange(4)


@pytest.mark.parametrize("corner,rect,rotation", [
    (0, Rect(0, 0, 60, 40), 0),
    (1, Rect(260, 0, 300, 60), 90),
    (2, Rect(240, 160, 300, 200), 180),
    (3, Rect(0, 140, 40, 200), 270),
])
def test_furniture_first_candidate_per_corner(corner, rect, rotation):
    k, first = next(furniture_candidates(Rect(0, 0, 300, 200), corner, 60, 40, 5))
    assert first == rect
    assert {1: 0, 2: 90, 3: 180, 4: 270}[k] == rotation


def test_furniture_is_seeded_per_room():
    r = PlacedRoom("bedroom1", "bedroom", Rect(0, 0, 300, 300))
    a = place_furniture(r, [("bed", 1), ("chair", 3)], [], seed=4)
    b = place_furniture(r, [("bed", 1), ("chair", 3)], [], seed=4)
    assert a == b
    corner = _corner_for("bedroom1", 4)
    expected = next(furniture_candidates(r.rect, corner, 90, 50, 5))[1]
    assert a[0].rect == expected


def test_furniture_overflow():
    r = PlacedRoom("bathroom1", "bathroom", Rect(0, 0, 50, 50))
    with pytest.raises(FurnitureOverflow):
        place_furniture(r, [("tub", 1)], [], strict=True)
    assert place_furniture(r, [("tub", 1), ("toilet", 1)], []) != []


def test_furniture_avoids_clearance():
    r = PlacedRoom("hall1", "hall", Rect(0, 0, 200, 200))
    clear = Rect(0, 0, 200, 200)
    door = Door("hall1", 1, None, None, ((0, 0), (40, 0)), 40, "exterior", (clear,))
    with pytest.raises(FurnitureOverflow):
        place_furniture(r, [("chair", 1)], [door], strict=True)


# -- invariants --------------------------------------------------------------


def _generated(i):
    doc = generate_document(i, size_for_seed(i))
    return doc.plan.rooms, build_dcg(doc.plan.rooms, doc.plan.relations())


def test_generated_plans_verify():
    for i in range(120):
        specs, dcg = _generated(i)
        plan = layout_plan(specs, dcg, seed=i)
        assert verify_plan(plan, dcg) == [], i


def test_verifier_catches_injected_faults():
    specs, dcg = _generated(3)
    plan = layout_plan(specs, dcg, seed=3)
    assert verify_plan(plan, dcg) == []
    a, b = plan.rooms[0], plan.rooms[1]
    moved = replace(plan, rooms=[a, replace(b, rect=a.rect)] + plan.rooms[2:])
    assert any("overlap" in p for p in verify_plan(moved))
    tree_door = next(d for d in plan.doors if d.kind == "interior")
    no_door = replace(plan, doors=[d for d in plan.doors if d is not tree_door])
    assert any("doors instead of 1" in p for p in verify_plan(no_door, dcg))
    c = tree_door.clearances[0]
    blocker = FurniturePlacement(tree_door.room_a, "chair", Rect(c.x0, c.y0, c.x0 + 1, c.y0 + 1), 0)
    assert any("clearance" in p for p in verify_plan(replace(plan, furniture=[blocker])))
    outside = FurniturePlacement(a.id, "chair", a.rect.translate(a.rect.width * 5, 0), 0)
    assert any("outside" in p for p in verify_plan(replace(plan, furniture=[outside])))
    crooked = FurniturePlacement(tree_door.room_a, "chair", Rect(c.x0, c.y0, c.x0, c.y0), 45)
    assert any("rotation" in p for p in verify_plan(replace(plan, furniture=[crooked])))
    short = replace(tree_door, width=tree_door.width + 1)
    assert any("length" in p for p in verify_plan(replace(plan, doors=[short])))


@pytest.mark.parametrize("k", [2, 5])
def test_scale_equivariance(k):
    for i in range(20):
        specs, dcg = _generated(i)
        base = layout_plan(specs, dcg, seed=i)
        scaled = layout_plan(scale_specs(specs, k), dcg, seed=i, params=LayoutParams().scaled(k))
        assert scaled.to_json() == scale_plan_json(base.to_json(), k), i


def test_plan_json_round_trip():
    specs, dcg = _generated(11)
    plan = layout_plan(specs, dcg, seed=11)
    text = dump_plan(plan)
    assert dump_plan(load_plan(text)) == text
    assert isinstance(load_plan(text), FloorPlan)
    with pytest.raises(ValueError):
        load_plan("[]")


def test_layout_is_deterministic():
    specs, dcg = _generated(42)
    assert dump_plan(layout_plan(specs, dcg, seed=1)) == dump_plan(layout_plan(specs, dcg, seed=1))


def test_facing_requests_share_one_opening():
    # adjacent rooms that each ask for a door on the common wall get one door
    specs = [room("bedroom1", 200, 100, doors=[(1, 1)]), room("kitchen1", 200, 100, doors=[(3, 1)])]
    g = graph(["bedroom1", "kitchen1"], ("bedroom1", "kitchen1", "adjacent"))
    plan = layout_plan(specs, g)
    assert plan.room("kitchen1").rect == Rect(0, -100, 200, 0)
    (door,) = plan.doors
    assert (door.room_a, door.room_b, door.kind) == ("bedroom1", "kitchen1", "interior")


def test_verifier_catches_duplicate_door():
    specs = [room("hall1", 200, 150), room("kitchen1", 150, 150)]
    plan = dfs_place(graph(["hall1", "kitchen1"], ("hall1", "kitchen1", "door")), specs)
    twice = replace(plan, doors=plan.doors * 2)
    assert any("doors 0 and 1 overlap" in p for p in verify_plan(twice))
