"""Dictionary and pattern based extraction of room records and the door graph."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ConflictingDimensions, UnknownRoomReference
from .symbols import ROOM_TYPES, SYMBOLS
from .text_corpus import Lexicon, Sentence, default_lexicon

log = logging.getLogger("text2plan.extract")

DEFAULT_DIMENSIONS = (200, 150, 200, 150)
DEFAULT_DOORS = ((1, 1),)

SHAPE_WORDS = {
    "rectangular": ("rectangle", 4),
    "rectangle": ("rectangle", 4),
    "square": ("rectangle", 4),
    "triangular": ("triangle", 3),
    "triangle": ("triangle", 3),
    "pentagonal": ("pentagon", 5),
    "pentagon": ("pentagon", 5),
    "hexagonal": ("hexagon", 6),
}
ENTRANCE_WORDS = frozenset({"entrance", "entry", "enters", "enter"})
DIMENSION_JOINERS = frozenset({"by", "x"})
ARTICLES = frozenset({"a", "an"})
EDGE_KINDS = ("door", "adjacent")


@dataclass
class RoomSpec:
    id: str
    type: str
    shape: str = "rectangle"
    sides: int = 4
    dimensions: list[int | float] = field(default_factory=lambda: list(DEFAULT_DIMENSIONS))
    door_placement: list[tuple[int, int]] = field(default_factory=lambda: list(DEFAULT_DOORS))
    furnitures: list[tuple[str, int]] = field(default_factory=list)
    entrance: bool = False

    def validate(self) -> None:
        """Raise ValueError if the record breaks a structural invariant."""
        if self.type not in ROOM_TYPES:
            raise ValueError(f"{self.id}: unknown room type {self.type!r}")
        if self.sides < 1 or len(self.dimensions) != self.sides:
            raise ValueError(f"{self.id}: {len(self.dimensions)} dimensions for {self.sides} sides")
        if any(d <= 0 for d in self.dimensions):
            raise ValueError(f"{self.id}: non-positive dimension")
        if self.shape == "rectangle":
            d = self.dimensions
            if self.sides != 4 or d[0] != d[2] or d[1] != d[3]:
                raise ValueError(f"{self.id}: rectangle needs opposite sides equal")
        for wall, count in self.door_placement:
            if not 1 <= wall <= self.sides or count < 1:
                raise ValueError(f"{self.id}: bad door placement ({wall}:{count})")
        for symbol, count in self.furnitures:
            if symbol not in SYMBOLS or count < 1:
                raise ValueError(f"{self.id}: bad furniture ({symbol}:{count})")

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "type": self.type,
            "shape": self.shape,
            "sides": self.sides,
            "dimensions": list(self.dimensions),
            "door_placement": [[w, c] for w, c in self.door_placement],
            "furnitures": [[s, c] for s, c in self.furnitures],
        }
        if self.entrance:
            out["entrance"] = True
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "RoomSpec":
        return cls(
            id=data["id"],
            type=data["type"],
            shape=data.get("shape", "rectangle"),
            sides=int(data.get("sides", 4)),
            dimensions=list(data["dimensions"]),
            door_placement=[(int(w), int(c)) for w, c in data.get("door_placement", [])],
            furnitures=[(s, int(c)) for s, c in data.get("furnitures", [])],
            entrance=bool(data.get("entrance", False)),
        )


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    kind: str


@dataclass
class DoorConnectivityGraph:
    nodes: list[str]
    edges: list[Edge]

    def neighbors(self, node: str) -> list[str]:
        """Neighbours in node-list order."""
        adj = set()
        for e in self.edges:
            if e.a == node:
                adj.add(e.b)
            elif e.b == node:
                adj.add(e.a)
        return [n for n in self.nodes if n in adj]

    def edge(self, u: str, v: str) -> Edge | None:
        for e in self.edges:
            if {e.a, e.b} == {u, v}:
                return e
        return None

    def components(self) -> list[list[str]]:
        seen: set[str] = set()
        comps = []
        for start in self.nodes:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                n = stack.pop()
                comp.append(n)
                for m in self.neighbors(n):
                    if m not in seen:
                        seen.add(m)
                        stack.append(m)
            comps.append([n for n in self.nodes if n in set(comp)])
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "edges": [{"a": e.a, "b": e.b, "kind": e.kind} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DoorConnectivityGraph":
        return cls(list(data["nodes"]), [Edge(e["a"], e["b"], e["kind"]) for e in data["edges"]])


def dump_rooms(rooms: Sequence[RoomSpec]) -> str:
    return json.dumps([r.to_json() for r in rooms], indent=2) + "\n"


def load_rooms(text: str) -> list[RoomSpec]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("rooms.json must hold a JSON array")
    return [RoomSpec.from_json(d) for d in data]


def dump_dcg(dcg: DoorConnectivityGraph) -> str:
    return json.dumps(dcg.to_json(), indent=2) + "\n"


def load_dcg(text: str) -> DoorConnectivityGraph:
    data = json.loads(text)
    if not isinstance(data, dict) or "nodes" not in data or "edges" not in data:
        raise ValueError("dcg.json must hold an object with nodes and edges")
    return DoorConnectivityGraph.from_json(data)


# -- token level patterns ----------------------------------------------------


@dataclass(frozen=True)
class Mention:
    position: int
    type: str
    ordinal: int

    @property
    def room_id(self) -> str:
        return f"{self.type}{self.ordinal}"


def room_mentions(tokens: Sequence[str], lexicon: Lexicon) -> list[Mention]:
    """Room words in order, with an optional ordinal right before them."""
    out = []
    for i, tok in enumerate(tokens):
        rtype = lexicon.room_type(tok)
        if rtype is None:
            continue
        ordinal = lexicon.ordinals.get(tokens[i - 1], 1) if i > 0 else 1
        out.append(Mention(i, rtype, ordinal))
    return out


def _cardinal(tok: str, lexicon: Lexicon, allow_article: bool = True):
    if not allow_article and tok in ARTICLES:
        return None
    value = lexicon.number(tok)
    return value


def _as_number(value):
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def find_dimensions(tokens: Sequence[str], lexicon: Lexicon) -> tuple | None:
    """First ``<num> by|x|× <num>`` pair, or None."""
    for i in range(1, len(tokens) - 1):
        if tokens[i] not in DIMENSION_JOINERS:
            continue
        a = _cardinal(tokens[i - 1], lexicon, allow_article=False)
        b = _cardinal(tokens[i + 1], lexicon, allow_article=False)
        if a is not None and b is not None and a > 0 and b > 0:
            return _as_number(a), _as_number(b)
    return None


def find_shape(tokens: Sequence[str]) -> tuple[str, int] | None:
    for i, tok in enumerate(tokens):
        if tok == "l" and i + 1 < len(tokens) and tokens[i + 1] in ("shaped", "shape"):
            return ("l-shape", 6)
        if tok in SHAPE_WORDS:
            return SHAPE_WORDS[tok]
    return None


def _wall_number(tok: str, lexicon: Lexicon) -> int | None:
    if tok in lexicon.ordinals:
        return lexicon.ordinals[tok]
    if tok in lexicon.directions:
        return lexicon.directions[tok]
    if tok.isdigit():
        return int(tok)
    return None


def find_doors(tokens: Sequence[str], lexicon: Lexicon) -> list[tuple[int, int]]:
    """Door placements such as "two doors on the north wall" or
    "doors on the second and third walls"."""
    out = []
    for i, tok in enumerate(tokens):
        if tok not in ("wall", "walls"):
            continue
        walls = []
        j = i - 1
        while j >= 0:
            w = _wall_number(tokens[j], lexicon)
            if w is not None:
                walls.append(w)
            elif tokens[j] not in ("and", "the", "or"):
                break
            j -= 1
        walls.reverse()
        door_at = next((k for k in range(j, -1, -1) if tokens[k] in ("door", "doors")), None)
        if door_at is None:
            # "the second wall of the kitchen has a door"
            door_at = next((k for k in range(i + 1, len(tokens)) if tokens[k] in ("door", "doors")), None)
        if not walls or door_at is None:
            continue
        count = 1
        if door_at > 0:
            value = lexicon.number(tokens[door_at - 1])
            if isinstance(value, int) and value > 0:
                count = value
        if len(walls) > 1 and count == len(walls):
            count = 1
        out.extend((w, count) for w in walls)
    return out


def find_furniture(tokens: Sequence[str], lexicon: Lexicon) -> list[tuple[str, int]]:
    out = []
    for i, tok in enumerate(tokens):
        symbol = lexicon.furniture_symbol(tok)
        if symbol is None:
            continue
        count = 1
        if i >= 2 and tokens[i - 1] == "of" and tokens[i - 2] == "pair":
            count = 2
        elif i >= 1:
            value = lexicon.number(tokens[i - 1])
            if isinstance(value, int) and value > 0:
                count = value
        out.append((symbol, count))
    return out


def _merge_counts(items: Iterable[tuple[str, int]]) -> list[tuple[str, int]]:
    merged: dict[str, int] = {}
    for symbol, count in items:
        merged[symbol] = merged.get(symbol, 0) + count
    return list(merged.items())


# -- operations --------------------------------------------------------------


def extract_room_spec(
    room_type: str,
    sentences: Sequence[Sentence],
    lexicon: Lexicon | None = None,
    *,
    room_id: str | None = None,
    ordinal: int = 1,
    strict: bool = False,
) -> RoomSpec:
    """Build one room record from the sentences describing it.

    Only sentences whose first room mention is this room contribute
    attributes; others just witness that the room exists. Missing attributes
    fall back to defaults and conflicting dimensions keep the first mention.
    """
    lexicon = lexicon or default_lexicon()
    room_id = room_id or f"{room_type}{ordinal}"
    dims = shape = dims_src = None
    doors: dict[int, int] = {}
    furniture: list[tuple[str, int]] = []
    entrance = False
    for sent in sentences:
        mentions = room_mentions(sent.tokens, lexicon)
        if mentions:
            if (mentions[0].type, mentions[0].ordinal) != (room_type, ordinal):
                continue
        toks = sent.tokens
        found = find_dimensions(toks, lexicon)
        if found is not None:
            if dims is None:
                dims, dims_src = found, sent
            elif found != dims:
                msg = (
                    f"{room_id}: dimensions {found[0]}x{found[1]} in sentence {sent.index} "
                    f"({sent.raw!r}) conflict with {dims[0]}x{dims[1]} in sentence "
                    f"{dims_src.index} ({dims_src.raw!r}); keeping the first"
                )
                if strict:
                    raise ConflictingDimensions(msg)
                log.warning(msg)
        if shape is None:
            shape = find_shape(toks)
        for wall, count in find_doors(toks, lexicon):
            doors.setdefault(wall, count)
        furniture.extend(find_furniture(toks, lexicon))
        if ENTRANCE_WORDS.intersection(toks):
            entrance = True

    shape_name, sides = shape or ("rectangle", 4)
    if shape_name == "rectangle":
        if dims is None:
            log.info("%s: no dimensions found, using default %s", room_id, DEFAULT_DIMENSIONS)
            dimensions = list(DEFAULT_DIMENSIONS)
        else:
            dimensions = [dims[0], dims[1], dims[0], dims[1]]
    else:
        dimensions = [100] * sides
    door_placement = sorted((w, c) for w, c in doors.items() if 1 <= w <= sides)
    if not door_placement:
        door_placement = list(DEFAULT_DOORS)
    spec = RoomSpec(
        id=room_id,
        type=room_type,
        shape=shape_name,
        sides=sides,
        dimensions=dimensions,
        door_placement=door_placement,
        furnitures=_merge_counts(furniture),
        entrance=entrance,
    )
    spec.validate()
    return spec


def extract_rooms(
    clusters: Mapping[str, Sequence[Sentence]],
    lexicon: Lexicon | None = None,
    *,
    strict: bool = False,
) -> list[RoomSpec]:
    """Split each room-type cluster into instances and extract each one.

    Rooms are ordered by their first mention in the document.
    """
    lexicon = lexicon or default_lexicon()
    first_seen: dict[tuple[str, int], tuple[int, int]] = {}
    members: dict[tuple[str, int], list[Sentence]] = {}
    for rtype, sents in clusters.items():
        for sent in sents:
            for m in room_mentions(sent.tokens, lexicon):
                if m.type != rtype:
                    continue
                key = (m.type, m.ordinal)
                first_seen.setdefault(key, (sent.index, m.position))
                first_seen[key] = min(first_seen[key], (sent.index, m.position))
                bucket = members.setdefault(key, [])
                if not bucket or bucket[-1] is not sent:
                    bucket.append(sent)
        if sents and not any(m.type == rtype for s in sents for m in room_mentions(s.tokens, lexicon)):
            # classifier tagged the type without an explicit mention
            key = (rtype, 1)
            first_seen.setdefault(key, (sents[0].index, 0))
            members.setdefault(key, list(sents))
    rooms = []
    for key in sorted(first_seen, key=first_seen.get):
        rtype, ordinal = key
        rooms.append(extract_room_spec(rtype, members[key], lexicon, ordinal=ordinal, strict=strict))
    return rooms


def extract_relations(
    sentences: Sequence[Sentence], lexicon: Lexicon | None = None
) -> list[tuple[str, str, str]]:
    """Pairs (first mention, each later mention) with their connection kind."""
    lexicon = lexicon or default_lexicon()
    out = []
    for sent in sentences:
        mentions = room_mentions(sent.tokens, lexicon)
        ids = list(dict.fromkeys(m.room_id for m in mentions))
        if len(ids) < 2:
            log.warning("sentence %d (%r): fewer than two rooms, skipped", sent.index, sent.raw)
            continue
        kinds = {lexicon.connectives[t] for t in sent.tokens if t in lexicon.connectives}
        if "door" in kinds:
            kind = "door"
        elif "adjacent" in kinds:
            kind = "adjacent"
        else:
            log.warning("sentence %d (%r): no connective, assuming a door", sent.index, sent.raw)
            kind = "door"
        out.extend((ids[0], other, kind) for other in ids[1:])
    return out


def build_dcg(rooms: Sequence[RoomSpec], relations: Iterable[tuple[str, str, str]]) -> DoorConnectivityGraph:
    nodes = [r.id for r in rooms]
    if len(set(nodes)) != len(nodes):
        raise ValueError("room ids must be unique")
    order = {n: i for i, n in enumerate(nodes)}
    kinds: dict[tuple[str, str], str] = {}
    for a, b, kind in relations:
        for ref in (a, b):
            if ref not in order:
                raise UnknownRoomReference(f"relation names room {ref!r} which has no record")
        if kind not in EDGE_KINDS:
            raise ValueError(f"unknown edge kind {kind!r}")
        if a == b:
            continue
        pair = (a, b) if order[a] < order[b] else (b, a)
        if kinds.get(pair) != "door":
            kinds[pair] = kind
    edges = [Edge(a, b, k) for (a, b), k in sorted(kinds.items(), key=lambda item: (order[item[0][0]], order[item[0][1]]))]
    dcg = DoorConnectivityGraph(nodes, edges)
    if len(nodes) > 1 and not dcg.is_connected():
        log.warning("door connectivity graph has %d components", len(dcg.components()))
    return dcg


def complete_rooms(rooms: list[RoomSpec], relations: Iterable[tuple[str, str, str]]) -> list[RoomSpec]:
    """Add default records for rooms that only appear in relation sentences."""
    known = {r.id for r in rooms}
    out = list(rooms)
    for a, b, _ in relations:
        for ref in (a, b):
            if ref in known:
                continue
            log.warning("room %s only appears in relations; using defaults", ref)
            out.append(RoomSpec(id=ref, type=ref.rstrip("0123456789")))
            known.add(ref)
    return out
