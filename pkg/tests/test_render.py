import re
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from conftest import HALL_RECORD
from text2plan.errors import UnknownSymbol
from text2plan.extractor import DoorConnectivityGraph, Edge, RoomSpec, build_dcg
from text2plan.generator import generate_document, size_for_seed
from text2plan.glyphs import GLYPHS, glyph_for, primitive_extent
from text2plan.layout import FloorPlan, FurniturePlacement, PlacedRoom, Rect, layout_plan
from text2plan.render import StyleConfig, _mapper, fmt, render, wall_pieces
from text2plan.symbols import SYMBOLS

SVG = "{http://www.w3.org/2000/svg}"


def two_room_plan():
    specs = [
        RoomSpec("hall1", "hall", dimensions=[200, 150, 200, 150], door_placement=[]),
        RoomSpec("kitchen1", "kitchen", dimensions=[150, 150, 150, 150], door_placement=[]),
    ]
    dcg = DoorConnectivityGraph(["hall1", "kitchen1"], [Edge("hall1", "kitchen1", "door")])
    return layout_plan(specs, dcg)


def test_fmt():
    assert fmt(3) == "3"
    assert fmt(Fraction(6, 2)) == "3"
    assert fmt(Fraction(1, 3)) == "0.333"
    assert fmt(2.5) == "2.5"
    assert fmt(-0.0001) == "0"


def test_two_room_canvas_and_walls():
    svg = render(two_room_plan())
    # bbox (0,-150)-(200,150) plus a 20 margin on each side; shift (20, 170)
    assert '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="240" height="340" viewBox="0 0 240 340">' in svg
    # walls 1..4, each drawn along increasing coordinates; the top wall is
    # cut at the door, x in [55, 95] -> canvas [75, 115]
    assert '<path d="M 20 170 L 75 170 M 115 170 L 220 170 M 220 170 L 220 320 M 20 320 L 220 320 M 20 170 L 20 320"' in svg
    assert '<text x="120" y="245"' in svg and ">hall</text>" in svg


def test_door_swing_hand_example():
    svg = render(two_room_plan())
    # hinge at (55, 0), swings into the kitchen (upwards) by the door width,
    # arc ends at the far jamb (95, 0)
    assert '<g class="door" data-a="hall1" data-b="kitchen1"><path d="M 75 170 L 75 130 A 40 40 0 0 1 115 170"' in svg


def test_well_formed_and_inside_canvas():
    for seed in range(30):
        doc = generate_document(seed, size_for_seed(seed))
        plan = layout_plan(doc.plan.rooms, build_dcg(doc.plan.rooms, doc.plan.relations()), seed=seed)
        svg = render(plan)
        root = ET.fromstring(svg.encode("utf-8"))
        w, h = float(root.get("width")), float(root.get("height"))
        for el in root.iter():
            for attr in ("x", "x1", "x2", "cx"):
                if el.get(attr) is not None:
                    assert 0 <= float(el.get(attr)) <= w
            for attr in ("y", "y1", "y2", "cy"):
                if el.get(attr) is not None:
                    assert 0 <= float(el.get(attr)) <= h
            if el.tag == SVG + "path":
                nums = [float(n) for n in re.findall(r"-?\d+(?:\.\d+)?", el.get("d"))]
                assert all(-1e-9 <= n <= max(w, h) + 1e-9 for n in nums)
        assert len(root.findall(f"{SVG}g[@class='room']")) == len(plan.rooms)
        assert len(root.findall(f"{SVG}g[@class='door']")) == len(plan.doors)
        assert len(root.findall(f"{SVG}g[@class='furniture']")) == len(plan.furniture)


def test_each_door_cuts_one_gap_per_room():
    for seed in range(30):
        doc = generate_document(seed, size_for_seed(seed))
        plan = layout_plan(doc.plan.rooms, build_dcg(doc.plan.rooms, doc.plan.relations()), seed=seed)
        for room in plan.rooms:
            pieces = wall_pieces(room, plan.doors)
            length = sum(abs(b[0] - a[0]) + abs(b[1] - a[1]) for a, b in pieces)
            perimeter = 2 * (room.rect.width + room.rect.height)
            mine = [d for d in plan.doors if room.id in (d.room_a, d.room_b)]
            assert length == perimeter - sum(d.width for d in mine)


def test_rendering_is_byte_stable():
    plan = layout_plan([RoomSpec.from_json(HALL_RECORD)], DoorConnectivityGraph(["hall1"], []))
    assert render(plan) == render(plan)


def test_style_changes_strokes():
    svg = render(two_room_plan(), StyleConfig(wall_stroke=7, margin=0))
    assert 'stroke-width="7"' in svg
    assert 'width="200" height="300"' in svg


def test_unknown_symbol():
    plan = FloorPlan(
        [PlacedRoom("hall1", "hall", Rect(0, 0, 100, 100))],
        [],
        [FurniturePlacement("hall1", "piano", Rect(0, 0, 10, 10), 0)],
    )
    with pytest.raises(UnknownSymbol):
        render(plan)
    with pytest.raises(UnknownSymbol):
        glyph_for("piano")


def test_every_symbol_has_a_glyph_in_its_unit_box():
    assert set(GLYPHS) == set(SYMBOLS)
    for glyph in GLYPHS.values():
        assert glyph.primitives
        for prim in glyph.primitives:
            u0, v0, u1, v1 = primitive_extent(prim)
            assert -1e-9 <= u0 and u1 <= 1 + 1e-9 and -1e-9 <= v0 and v1 <= 1 + 1e-9, (glyph.symbol, prim)


@pytest.mark.parametrize(
    "rotation,wall_side",
    [(0, (0, 0)), (90, (100, 0)), (180, (100, 100)), (270, (0, 100))],
)
def test_glyph_origin_sits_on_the_wall(rotation, wall_side):
    to_xy, _ = _mapper(FurniturePlacement("r", "bed", Rect(0, 0, 100, 100), rotation))
    assert to_xy(0, 0) == wall_side


def test_style_from_mapping():
    style = StyleConfig.from_mapping({"wall_stroke": "3", "font_family": "serif"})
    assert style.wall_stroke == 3.0 and style.font_family == "serif"
