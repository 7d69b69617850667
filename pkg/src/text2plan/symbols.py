"""The closed set of room classes and furniture symbols.

Footprints are ``(width, depth)`` in layout units; depth is measured away
from the wall the item stands against.
"""

ROOM_TYPES = ("bedroom", "kitchen", "bathroom", "hall", "dining")
RELATION = "relation"
LABELS = ROOM_TYPES + (RELATION,)

FOOTPRINTS = {
    "bed": (90, 50),
    "sofa": (80, 35),
    "armchair": (35, 35),
    "chair": (25, 25),
    "table": (60, 40),
    "wardrobe": (60, 30),
    "sink": (40, 25),
    "tub": (70, 35),
    "toilet": (20, 30),
    "stove": (30, 30),
    "refrigerator": (30, 30),
    "washbasin": (25, 20),
}

SYMBOLS = tuple(FOOTPRINTS)
