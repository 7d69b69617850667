"""Vector artwork for the twelve furniture symbols.

Each glyph lives in a unit box: ``u`` runs along the wall the item stands
against, ``v`` points away from it into the room (``v = 0`` is the wall
side). Primitives:

- ``("rect", u0, v0, u1, v1)``
- ``("line", u0, v0, u1, v1)``
- ``("polyline", ((u, v), ...))``
- ``("circle", cu, cv, ru, rv)`` (an ellipse once stretched to the footprint)
- ``("arc", cu, cv, ru, rv, a0, a1)`` with angles in degrees, measured
  clockwise on screen from the +u axis
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnknownSymbol
from .symbols import FOOTPRINTS


@dataclass(frozen=True)
class Glyph:
    symbol: str
    primitives: tuple
    default_size: tuple[int, int]


def _burners():
    return tuple(("circle", cu, cv, 0.16, 0.16) for cu in (0.28, 0.72) for cv in (0.3, 0.72))


_ART = {
    "bed": (
        ("rect", 0, 0, 1, 1),
        ("rect", 0.06, 0.06, 0.46, 0.3),
        ("rect", 0.54, 0.06, 0.94, 0.3),
        ("line", 0, 0.4, 1, 0.4),
        ("line", 0, 0.4, 0.25, 1),
    ),
    "sofa": (
        ("rect", 0, 0, 1, 1),
        ("rect", 0, 0, 1, 0.3),
        ("rect", 0, 0.3, 0.12, 1),
        ("rect", 0.88, 0.3, 1, 1),
        ("line", 0.5, 0.3, 0.5, 1),
    ),
    "armchair": (
        ("rect", 0, 0, 1, 1),
        ("rect", 0, 0, 1, 0.3),
        ("rect", 0, 0.3, 0.2, 1),
        ("rect", 0.8, 0.3, 1, 1),
    ),
    "chair": (
        ("rect", 0.1, 0.2, 0.9, 1),
        ("line", 0.05, 0.05, 0.95, 0.05),
        ("line", 0.1, 0.05, 0.1, 0.2),
        ("line", 0.9, 0.05, 0.9, 0.2),
    ),
    "table": (
        ("rect", 0, 0, 1, 1),
        ("rect", 0.1, 0.12, 0.9, 0.88),
    ),
    "wardrobe": (
        ("rect", 0, 0, 1, 1),
        ("line", 0.5, 0, 0.5, 1),
        ("line", 0.05, 0.5, 0.95, 0.5),
        ("circle", 0.44, 0.8, 0.03, 0.06),
        ("circle", 0.56, 0.8, 0.03, 0.06),
    ),
    "sink": (
        ("rect", 0, 0, 1, 1),
        ("rect", 0.1, 0.25, 0.9, 0.9),
        ("circle", 0.5, 0.6, 0.05, 0.08),
        ("line", 0.5, 0.05, 0.5, 0.25),
    ),
    "tub": (
        ("rect", 0, 0, 1, 1),
        ("arc", 0.25, 0.5, 0.17, 0.38, 90, 270),
        ("arc", 0.75, 0.5, 0.17, 0.38, 270, 450),
        ("line", 0.25, 0.12, 0.75, 0.12),
        ("line", 0.25, 0.88, 0.75, 0.88),
        ("circle", 0.85, 0.5, 0.03, 0.06),
    ),
    "toilet": (
        ("rect", 0.05, 0, 0.95, 0.3),
        ("circle", 0.5, 0.64, 0.4, 0.34),
        ("circle", 0.5, 0.66, 0.25, 0.2),
    ),
    "stove": (("rect", 0, 0, 1, 1),) + _burners(),
    "refrigerator": (
        ("rect", 0, 0, 1, 1),
        ("line", 0, 0.35, 1, 0.35),
        ("line", 0.8, 0.45, 0.8, 0.9),
        ("polyline", ((0.1, 0.1), (0.3, 0.25), (0.1, 0.25))),
    ),
    "washbasin": (
        ("rect", 0, 0, 1, 0.25),
        ("arc", 0.5, 0.25, 0.45, 0.7, 0, 180),
        ("line", 0.05, 0.25, 0.95, 0.25),
        ("circle", 0.5, 0.5, 0.06, 0.08),
    ),
}

GLYPHS = {s: Glyph(s, _ART[s], FOOTPRINTS[s]) for s in FOOTPRINTS}


def glyph_for(symbol: str) -> Glyph:
    try:
        return GLYPHS[symbol]
    except KeyError:
        raise UnknownSymbol(f"no glyph for {symbol!r}") from None


def primitive_extent(prim) -> tuple[float, float, float, float]:
    """Bounding box ``(u0, v0, u1, v1)`` of a primitive in the unit box."""
    kind = prim[0]
    if kind in ("rect", "line"):
        _, a, b, c, d = prim
        return min(a, c), min(b, d), max(a, c), max(b, d)
    if kind == "polyline":
        us = [p[0] for p in prim[1]]
        vs = [p[1] for p in prim[1]]
        return min(us), min(vs), max(us), max(vs)
    if kind == "circle":
        _, cu, cv, ru, rv = prim
        return cu - ru, cv - rv, cu + ru, cv + rv
    if kind == "arc":
        _, cu, cv, ru, rv, a0, a1 = prim
        # sample densely; exact enough for a containment check
        pts = [
            (cu + ru * math.cos(math.radians(a)), cv + rv * math.sin(math.radians(a)))
            for a in [a0 + (a1 - a0) * i / 64 for i in range(65)]
        ]
        return min(p[0] for p in pts), min(p[1] for p in pts), max(p[0] for p in pts), max(p[1] for p in pts)
    raise ValueError(f"unknown primitive {kind!r}")
