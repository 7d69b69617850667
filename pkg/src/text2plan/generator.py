"""Template-based synthetic house descriptions with known ground truth.

Used as training data for the classifier and as the oracle for round-trip
tests. Output is a pure function of ``(seed, size)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import UnsupportedSize
from .extractor import DEFAULT_DIMENSIONS, DEFAULT_DOORS, RoomSpec
from .symbols import FOOTPRINTS, RELATION
from .text_corpus import format_labels_tsv

MIN_ROOMS, MAX_ROOMS = 2, 5

# multiset of room types a plan draws from
ROOM_POOL = ("bedroom", "bedroom", "kitchen", "bathroom", "bathroom", "hall", "dining")

SURFACES = {
    "bedroom": ("bedroom",),
    "kitchen": ("kitchen",),
    "bathroom": ("bathroom", "washroom"),
    "hall": ("hall", "living room", "lounge"),
    "dining": ("dining area", "dining room"),
}

SIZE_RANGES = {
    "bedroom": ((180, 300), (150, 250)),
    "kitchen": ((140, 220), (120, 200)),
    "bathroom": ((110, 160), (100, 150)),
    "hall": ((220, 350), (180, 280)),
    "dining": ((160, 260), (140, 220)),
}

FURNITURE_POOL = {
    "bedroom": ("bed", "wardrobe", "table", "chair"),
    "kitchen": ("stove", "refrigerator", "sink", "table"),
    "bathroom": ("tub", "toilet", "washbasin"),
    "hall": ("sofa", "armchair", "chair", "table"),
    "dining": ("table", "chair"),
}

FURNITURE_SURFACES = {
    "bed": ("bed", "beds"),
    "sofa": ("sofa", "sofas"),
    "couch": ("couch", "couches"),
    "armchair": ("armchair", "armchairs"),
    "chair": ("chair", "chairs"),
    "table": ("table", "tables"),
    "wardrobe": ("wardrobe", "wardrobes"),
    "cupboard": ("cupboard", "cupboards"),
    "sink": ("sink", "sinks"),
    "tub": ("bathtub", "bathtubs"),
    "toilet": ("toilet", "toilets"),
    "stove": ("stove", "stoves"),
    "cooker": ("cooker", "cookers"),
    "refrigerator": ("refrigerator", "refrigerators"),
    "fridge": ("fridge", "fridges"),
    "washbasin": ("washbasin", "washbasins"),
}
SYNONYMS = {"sofa": ("sofa", "couch"), "wardrobe": ("wardrobe", "cupboard"),
            "stove": ("stove", "cooker"), "refrigerator": ("refrigerator", "fridge")}

COUNT_WORDS = {2: ("two", "2"), 3: ("three", "3"), 4: ("four", "4")}
ORDINALS = ("first", "second", "third", "fourth")
DIRECTIONS = {1: "north", 2: "east", 3: "south", 4: "west"}

DIMENSION_TEMPLATES = (
    "The {room} is {w} by {h}.",
    "The {room} measures {w} x {h}.",
    "The {room} is rectangular and measures {w} by {h}.",
    "The size of the {room} is {w} × {h}.",
    "The {room} is about {w} by {h} in size.",
    "The {room} has dimensions of {w} by {h}.",
)
FURNITURE_TEMPLATES = (
    "The {room} has {items}.",
    "There {be} {items} in the {room}.",
    "The {room} contains {items}.",
    "The {room} is furnished with {items}.",
    "Inside the {room} there {be} {items}.",
    "We would like {items} in the {room}.",
)
DOOR_TEMPLATES = (
    "The {room} has {doors} on the {wall} wall.",
    "There {be} {doors} on the {wall} wall of the {room}.",
    "The {wall} wall of the {room} has {doors}.",
)
FLAVOR_TEMPLATES = {
    "bedroom": ("The {room} should be quiet.", "The {room} gets the morning sun."),
    "kitchen": ("The {room} is modern.", "The {room} is well ventilated."),
    "bathroom": ("The {room} has tiled floors.", "The {room} is clean and bright."),
    "hall": ("The {room} is spacious.", "The {room} is the heart of the house."),
    "dining": ("The {room} is cosy.", "The {room} is well lit."),
}
DOOR_RELATIONS = (
    "The {a} leads to the {b}.",
    "The {a} opens into the {b}.",
    "There is a door between the {a} and the {b}.",
    "The {a} is connected to the {b} through a door.",
    "A door connects the {a} with the {b}.",
)
ADJACENT_RELATIONS = (
    "The {a} is adjacent to the {b}.",
    "The {a} is next to the {b}.",
    "The {a} is beside the {b}.",
)
COMPOUND_RELATION = "The {a} is adjacent to the {b} and there is {item} in the centre."
ENTRANCE_TEMPLATES = (
    "The main entrance opens into the {room}.",
    "The entrance of the house is through the {room}.",
    "One enters the house through the {room}.",
)
FILLERS = (
    "The house gets plenty of natural light.",
    "It is located in a quiet neighbourhood.",
    "The flooring is wooden throughout.",
    "The ceilings are high.",
    "Overall it should feel like a comfortable home.",
    "The owners want an open and airy feel.",
)


@dataclass
class GroundTruthPlan:
    rooms: list[RoomSpec]
    door_edges: list[tuple[str, str]] = field(default_factory=list)
    adjacency_edges: list[tuple[str, str]] = field(default_factory=list)

    def validate(self) -> None:
        ids = [r.id for r in self.rooms]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate room ids")
        for a, b in self.door_edges + self.adjacency_edges:
            if a == b or a not in ids or b not in ids:
                raise ValueError(f"bad edge ({a}, {b})")

    def relations(self) -> list[tuple[str, str, str]]:
        return [(a, b, "door") for a, b in self.door_edges] + [(a, b, "adjacent") for a, b in self.adjacency_edges]

    def to_json(self) -> dict:
        return {
            "rooms": [r.to_json() for r in self.rooms],
            "door_edges": [list(e) for e in self.door_edges],
            "adjacency_edges": [list(e) for e in self.adjacency_edges],
        }

    @classmethod
    def from_json(cls, data) -> "GroundTruthPlan":
        return cls(
            [RoomSpec.from_json(r) for r in data["rooms"]],
            [tuple(e) for e in data["door_edges"]],
            [tuple(e) for e in data["adjacency_edges"]],
        )


@dataclass
class GeneratedDescription:
    text: str
    plan: GroundTruthPlan
    sentences: list[str]
    labels: list[tuple[str, ...]]

    def labels_tsv(self) -> str:
        return format_labels_tsv(dict(enumerate(self.labels)))


class _Writer:
    def __init__(self, rng: random.Random, rooms: list[RoomSpec], ordinals: dict[str, bool]):
        self.rng = rng
        self.ordinal = ordinals
        # one surface form per room keeps mentions consistent
        self.surface = {r.id: rng.choice(SURFACES[r.type]) for r in rooms}

    def name(self, room: RoomSpec) -> str:
        if self.ordinal[room.type]:
            n = int(room.id[len(room.type):])
            return f"{ORDINALS[n - 1]} {self.surface[room.id]}"
        return self.surface[room.id]

    def count_phrase(self, symbol: str, count: int) -> str:
        word = self.rng.choice(SYNONYMS.get(symbol, (symbol,)))
        singular, plural = FURNITURE_SURFACES[word]
        if count == 1:
            article = "an" if singular[0] in "aeiou" else "a"
            return f"{article} {singular}"
        return f"{self.rng.choice(COUNT_WORDS[count])} {plural}"


def _join(parts: list[str]) -> str:
    if len(parts) == 1:
        return parts[0]
    return ", ".join(parts[:-1]) + " and " + parts[-1]


def _fits(room_dims, items) -> bool:
    area = sum(FOOTPRINTS[s][0] * FOOTPRINTS[s][1] * c for s, c in items)
    return area <= 0.3 * room_dims[0] * room_dims[1]


def _make_rooms(rng: random.Random, size: int) -> list[RoomSpec]:
    types = rng.sample(ROOM_POOL, size)
    seen: dict[str, int] = {}
    rooms = []
    for t in types:
        seen[t] = seen.get(t, 0) + 1
        (w0, w1), (h0, h1) = SIZE_RANGES[t]
        w = rng.randrange(w0, w1 + 1, 10)
        h = rng.randrange(h0, h1 + 1, 10)
        rooms.append(RoomSpec(id=f"{t}{seen[t]}", type=t, dimensions=[w, h, w, h]))
    return rooms


def generate_document(seed: int, size: int) -> GeneratedDescription:
    """Generate a description, its ground truth and per-sentence labels."""
    if not isinstance(size, int) or not MIN_ROOMS <= size <= MAX_ROOMS:
        raise UnsupportedSize(f"size must be in {MIN_ROOMS}..{MAX_ROOMS}, got {size!r}")
    rng = random.Random(f"t2p-gen:{seed}:{size}")
    rooms = _make_rooms(rng, size)
    counts = {t: sum(r.type == t for r in rooms) for t in SURFACES}
    writer = _Writer(rng, rooms, {t: counts[t] > 1 for t in counts})

    # spanning tree, mostly doors
    order = rooms[:]
    rng.shuffle(order)
    door_edges, adjacency_edges = [], []
    for i in range(1, len(order)):
        parent = order[rng.randrange(i)]
        edge = (parent.id, order[i].id)
        (door_edges if rng.random() < 0.8 else adjacency_edges).append(edge)

    clusters: list[list[tuple[str, tuple[str, ...]]]] = []
    compound_items: dict[str, tuple[str, int]] = {}
    for room in rooms:
        sents = []
        tag = (room.type,)
        name = writer.name(room)
        w, h = room.dimensions[:2]
        if rng.random() < 0.85:
            sents.append((rng.choice(DIMENSION_TEMPLATES).format(room=name, w=w, h=h), tag))
        else:
            room.dimensions = list(DEFAULT_DIMENSIONS)
        pool = list(FURNITURE_POOL[room.type])
        k = rng.randint(1, min(3, len(pool)))
        items = []
        for symbol in rng.sample(pool, k):
            limit = 4 if symbol == "chair" else (2 if symbol in ("table", "armchair", "wardrobe") else 1)
            items.append((symbol, rng.randint(1, limit)))
        while items and not _fits(room.dimensions, items):
            items.pop()
        if items:
            if len(items) > 1 and items[-1][1] == 1 and rng.random() < 0.3:
                compound_items[room.id] = items.pop()
            phrases = [writer.count_phrase(s, c) for s, c in items]
            be = "are" if items[0][1] > 1 else "is"
            sents.append((rng.choice(FURNITURE_TEMPLATES).format(room=name, items=_join(phrases), be=be), tag))
        room.furnitures = list(items)
        if rng.random() < 0.5:
            wall = rng.randint(1, 4)
            wall_len = room.dimensions[0] if wall in (1, 3) else room.dimensions[1]
            count = 2 if wall_len >= 140 and rng.random() < 0.3 else 1
            doors = "a door" if count == 1 else f"{rng.choice(COUNT_WORDS[2])} doors"
            wall_word = DIRECTIONS[wall] if rng.random() < 0.3 else ORDINALS[wall - 1]
            sents.append((rng.choice(DOOR_TEMPLATES).format(room=name, doors=doors, wall=wall_word,
                                                           be="is" if count == 1 else "are"), tag))
            room.door_placement = [(wall, count)]
        else:
            room.door_placement = list(DEFAULT_DOORS)
        if rng.random() < 0.4:
            sents.append((rng.choice(FLAVOR_TEMPLATES[room.type]).format(room=name), tag))
        rng.shuffle(sents)
        clusters.append(sents)

    by_id = {r.id: r for r in rooms}
    relations = []
    for a, b in door_edges:
        text = rng.choice(DOOR_RELATIONS).format(a=writer.name(by_id[a]), b=writer.name(by_id[b]))
        relations.append((text, _tags(by_id[a], by_id[b])))
    for a, b in adjacency_edges:
        if a in compound_items:
            symbol, count = compound_items.pop(a)
            by_id[a].furnitures.append((symbol, count))
            text = COMPOUND_RELATION.format(a=writer.name(by_id[a]), b=writer.name(by_id[b]),
                                            item=writer.count_phrase(symbol, count))
        else:
            text = rng.choice(ADJACENT_RELATIONS).format(a=writer.name(by_id[a]), b=writer.name(by_id[b]))
        relations.append((text, _tags(by_id[a], by_id[b])))
    rng.shuffle(relations)
    # leftover held-back items go back into their own cluster sentence
    for rid, (symbol, count) in compound_items.items():
        room = by_id[rid]
        text = f"The {writer.name(room)} also has {writer.count_phrase(symbol, count)}."
        clusters[rooms.index(room)].append((text, (room.type,)))
        room.furnitures.append((symbol, count))

    body = [s for cluster in clusters for s in cluster] + relations
    if rng.random() < 0.7:
        halls = [r for r in rooms if r.type == "hall"]
        entry = halls[0] if halls and rng.random() < 0.7 else rng.choice(rooms)
        entry.entrance = True
        sentence = (rng.choice(ENTRANCE_TEMPLATES).format(room=writer.name(entry)), (entry.type,))
        body.insert(0 if rng.random() < 0.5 else len(body), sentence)
    for _ in range(rng.randint(0, 2)):
        body.insert(rng.randrange(len(body) + 1), (rng.choice(FILLERS), ()))

    sentences = [s[0].upper() + s[1:] for s, _ in body]
    plan = GroundTruthPlan(rooms, door_edges, adjacency_edges)
    plan.validate()
    return GeneratedDescription(" ".join(sentences), plan, sentences, [t for _, t in body])


def _tags(a: RoomSpec, b: RoomSpec) -> tuple[str, ...]:
    return tuple(dict.fromkeys((a.type, b.type))) + (RELATION,)


def generate_description(seed: int, size: int) -> tuple[str, GroundTruthPlan]:
    doc = generate_document(seed, size)
    return doc.text, doc.plan


def size_for_seed(seed: int) -> int:
    """Room count used when a corpus mixes sizes."""
    return MIN_ROOMS + seed % (MAX_ROOMS - MIN_ROOMS + 1)


def write_corpus(out_dir: str | Path, n: int, seed: int) -> list[Path]:
    """Write ``n`` (description, labels, ground truth) triplets."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(n):
        doc_seed = seed * 1_000_003 + i
        doc = generate_document(doc_seed, size_for_seed(i))
        stem = out / f"desc_{i:05d}"
        stem.with_suffix(".txt").write_text(doc.text + "\n", encoding="utf-8")
        Path(f"{stem}.labels.tsv").write_text(doc.labels_tsv(), encoding="utf-8")
        Path(f"{stem}.truth.json").write_text(json.dumps(doc.plan.to_json(), indent=2) + "\n", encoding="utf-8")
        paths.append(stem.with_suffix(".txt"))
    return paths
