"""SVG output for a FloorPlan.

All coordinates are written already shifted into canvas space, with no
transforms, so every number in the file is a position on the canvas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Mapping
from xml.sax.saxutils import escape, quoteattr

from .glyphs import glyph_for
from .layout import HORIZONTAL_WALLS, Door, FloorPlan, FurniturePlacement, PlacedRoom


@dataclass(frozen=True)
class StyleConfig:
    margin: float = 20
    wall_stroke: float = 4
    door_stroke: float = 1.5
    furniture_stroke: float = 1.5
    label_size: float = 16
    font_family: str = "sans-serif"

    @classmethod
    def from_mapping(cls, values: Mapping[str, str]) -> "StyleConfig":
        """Build from string values such as config-file entries."""
        kwargs = {}
        for f in fields(cls):
            if f.name in values:
                raw = values[f.name]
                kwargs[f.name] = raw if f.type == "str" else float(raw)
        return cls(**kwargs)


def fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, plan: FloorPlan, style: StyleConfig):
        box = plan.bbox
        m = Fraction(str(style.margin))
        self.dx = m - box.x0
        self.dy = m - box.y0
        self.width = box.width + 2 * m
        self.height = box.height + 2 * m

    def x(self, v) -> str:
        return fmt(v + self.dx)

    def y(self, v) -> str:
        return fmt(v + self.dy)

    def pt(self, x, y) -> str:
        return f"{self.x(x)} {self.y(y)}"


def _subtract(lo, hi, gaps):
    pieces, cur = [], lo
    for a, b in sorted(gaps):
        if b <= cur or a >= hi:
            continue
        if a > cur:
            pieces.append((cur, a))
        cur = max(cur, b)
    if cur < hi:
        pieces.append((cur, hi))
    return pieces


def wall_pieces(room: PlacedRoom, doors) -> list[tuple[tuple, tuple]]:
    """Wall segments of ``room`` with the door openings cut out."""
    out = []
    for k in (1, 2, 3, 4):
        fixed, lo, hi = room.rect.wall_line(k)
        gaps = []
        for d in doors:
            if (d.room_a == room.id and d.wall_a == k) or (d.room_b == room.id and d.wall_b == k):
                (ax, ay), (bx, by) = d.segment
                gaps.append((min(ax, bx), max(ax, bx)) if k in HORIZONTAL_WALLS else (min(ay, by), max(ay, by)))
        for a, b in _subtract(lo, hi, gaps):
            out.append(((a, fixed), (b, fixed)) if k in HORIZONTAL_WALLS else ((fixed, a), (fixed, b)))
    return out


_INWARD = {1: (0, 1), 2: (-1, 0), 3: (0, -1), 4: (1, 0)}


def _door_svg(door: Door, c: _Canvas, style: StyleConfig) -> str:
    (ax, ay), (bx, by) = door.segment
    hinge, end = ((ax, ay), (bx, by)) if (ax, ay) <= (bx, by) else ((bx, by), (ax, ay))
    nx, ny = _INWARD[door.wall_a]
    if door.room_b is not None:
        # interior doors swing into the second room
        nx, ny = -nx, -ny
    w = door.width
    tip = (hinge[0] + nx * w, hinge[1] + ny * w)
    cross = (tip[0] - hinge[0]) * (end[1] - hinge[1]) - (tip[1] - hinge[1]) * (end[0] - hinge[0])
    sweep = 1 if cross > 0 else 0
    d = (
        f"M {c.pt(*hinge)} L {c.pt(*tip)} "
        f"A {fmt(w)} {fmt(w)} 0 0 {sweep} {c.pt(*end)}"
    )
    attrs = f'class="door" data-a={quoteattr(door.room_a)}'
    if door.room_b is not None:
        attrs += f" data-b={quoteattr(door.room_b)}"
    return (
        f"<g {attrs}>"
        f'<path d="{d}" fill="none" stroke="black" stroke-width="{fmt(style.door_stroke)}"/>'
        "</g>"
    )


def _mapper(item: FurniturePlacement):
    """Map unit-box ``(u, v)`` onto the footprint for the item's rotation."""
    r = item.rect
    x0, y0, x1, y1 = (float(v) for v in (r.x0, r.y0, r.x1, r.y1))
    rot = item.rotation % 360
    if rot == 0:
        w, d = x1 - x0, y1 - y0
        return (lambda u, v: (x0 + u * w, y0 + v * d)), (w, d)
    if rot == 90:
        w, d = y1 - y0, x1 - x0
        return (lambda u, v: (x1 - v * d, y0 + u * w)), (d, w)
    if rot == 180:
        w, d = x1 - x0, y1 - y0
        return (lambda u, v: (x1 - u * w, y1 - v * d)), (w, d)
    if rot == 270:
        w, d = y1 - y0, x1 - x0
        return (lambda u, v: (x0 + v * d, y1 - u * w)), (d, w)
    raise ValueError(f"rotation {item.rotation} is not a multiple of 90")


def _furniture_svg(item: FurniturePlacement, c: _Canvas, style: StyleConfig) -> str:
    glyph = glyph_for(item.symbol)
    to_xy, (sx, sy) = _mapper(item)
    swap = item.rotation % 180 == 90

    def p(u, v):
        x, y = to_xy(u, v)
        return c.x(x), c.y(y)

    parts = []
    for prim in glyph.primitives:
        kind = prim[0]
        if kind == "rect":
            (xa, ya), (xb, yb) = to_xy(prim[1], prim[2]), to_xy(prim[3], prim[4])
            x, y = min(xa, xb), min(ya, yb)
            parts.append(
                f'<rect x="{c.x(x)}" y="{c.y(y)}" width="{fmt(abs(xb - xa))}" height="{fmt(abs(yb - ya))}"/>'
            )
        elif kind == "line":
            (x1, y1), (x2, y2) = p(prim[1], prim[2]), p(prim[3], prim[4])
            parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        elif kind == "polyline":
            pts = " ".join(f"{x},{y}" for x, y in (p(u, v) for u, v in prim[1]))
            parts.append(f'<polyline points="{pts}"/>')
        elif kind == "circle":
            _, cu, cv, ru, rv = prim
            cx, cy = p(cu, cv)
            rx, ry = (rv * sy, ru * sx) if swap else (ru * sx, rv * sy)
            parts.append(f'<ellipse cx="{cx}" cy="{cy}" rx="{fmt(rx)}" ry="{fmt(ry)}"/>')
        elif kind == "arc":
            _, cu, cv, ru, rv, a0, a1 = prim
            start = p(cu + ru * math.cos(math.radians(a0)), cv + rv * math.sin(math.radians(a0)))
            end = p(cu + ru * math.cos(math.radians(a1)), cv + rv * math.sin(math.radians(a1)))
            rx, ry = (rv * sy, ru * sx) if swap else (ru * sx, rv * sy)
            large = 1 if abs(a1 - a0) > 180 else 0
            sweep = 1 if a1 > a0 else 0
            parts.append(
                f'<path d="M {start[0]} {start[1]} A {fmt(rx)} {fmt(ry)} 0 {large} {sweep} {end[0]} {end[1]}"/>'
            )
        else:
            raise ValueError(f"unknown primitive {kind!r}")
    return (
        f'<g class="furniture" data-symbol={quoteattr(item.symbol)} data-room={quoteattr(item.room_id)} '
        f'fill="none" stroke="black" stroke-width="{fmt(style.furniture_stroke)}">'
        + "".join(parts)
        + "</g>"
    )


def _room_svg(room: PlacedRoom, doors, c: _Canvas, style: StyleConfig) -> str:
    pieces = wall_pieces(room, doors)
    d = " ".join(f"M {c.pt(*a)} L {c.pt(*b)}" for a, b in pieces)
    lx, ly = room.label_anchor
    return (
        f'<g class="room" data-id={quoteattr(room.id)}>'
        f'<path d="{d}" fill="none" stroke="black" stroke-width="{fmt(style.wall_stroke)}" stroke-linecap="square"/>'
        f'<text x="{c.x(lx)}" y="{c.y(ly)}" font-family={quoteattr(style.font_family)} '
        f'font-size="{fmt(style.label_size)}" text-anchor="middle" dominant-baseline="middle">'
        f"{escape(room.type)}</text>"
        "</g>"
    )


def render(plan: FloorPlan, style: StyleConfig = StyleConfig()) -> str:
    """Standalone SVG 1.1 document; byte-identical for identical input."""
    for item in plan.furniture:
        glyph_for(item.symbol)
    c = _Canvas(plan, style)
    w, h = fmt(c.width), fmt(c.height)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
    ]
    lines += [_room_svg(r, plan.doors, c, style) for r in plan.rooms]
    lines += [_door_svg(d, c, style) for d in plan.doors]
    lines += [_furniture_svg(f, c, style) for f in plan.furniture]
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
