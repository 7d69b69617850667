"""Sentence splitting, tokenization, lexicons and corpus statistics."""

from __future__ import annotations

import configparser
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import EmptyCorpus, EmptyDocument
from .symbols import LABELS, ROOM_TYPES, SYMBOLS

# Words after which a '.' does not end a sentence.
ABBREVIATIONS = frozenset(
    {"sq", "ft", "approx", "e.g", "i.e", "eg", "ie", "no", "nos", "mr", "mrs", "dr", "st", "vs", "appx"}
)

_BOUNDARY = re.compile(r"[.!?]+(?=\s|$)")
_TOKEN = re.compile(r"\d+(?:\.\d+)?|[a-z]+")
_PRECEDING_WORD = re.compile(r"([A-Za-z][A-Za-z.]*)$")

WORD_CLASSES = ("room", "furniture", "number", "direction", "connective", "other")


@dataclass(frozen=True)
class Sentence:
    index: int
    raw: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class CorpusStats:
    doc_count: int
    doc_freq: Mapping[str, int]
    avg_sentence_len: float

    def df(self, token: str) -> int:
        return self.doc_freq.get(token, 0)

    def to_dict(self) -> dict:
        return {
            "doc_count": self.doc_count,
            "doc_freq": dict(sorted(self.doc_freq.items())),
            "avg_sentence_len": self.avg_sentence_len,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CorpusStats":
        return cls(int(data["doc_count"]), dict(data["doc_freq"]), float(data["avg_sentence_len"]))


@dataclass(frozen=True)
class Lexicon:
    """Custom dictionaries keyed by (fused) token surface form."""

    rooms: Mapping[str, str]
    furniture: Mapping[str, str]
    numbers: Mapping[str, int]
    ordinals: Mapping[str, int] = field(default_factory=dict)
    directions: Mapping[str, int] = field(default_factory=dict)
    connectives: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        bad_rooms = set(self.rooms.values()) - set(ROOM_TYPES)
        if bad_rooms:
            raise ValueError(f"unknown canonical room types: {sorted(bad_rooms)}")
        bad_symbols = set(self.furniture.values()) - set(SYMBOLS)
        if bad_symbols:
            raise ValueError(f"unknown furniture symbols: {sorted(bad_symbols)}")
        bad_kinds = set(self.connectives.values()) - {"door", "adjacent"}
        if bad_kinds:
            raise ValueError(f"connective kinds must be door/adjacent, got {sorted(bad_kinds)}")
        phrases = {}
        for table in (self.rooms, self.furniture, self.connectives):
            for key in table:
                parts = tuple(key.split("_"))
                if len(parts) > 1:
                    phrases[parts] = key
        object.__setattr__(self, "_phrases", phrases)
        object.__setattr__(self, "_max_phrase", max((len(p) for p in phrases), default=1))

    @property
    def room_words(self):
        return frozenset(self.rooms)

    @property
    def furniture_words(self):
        return frozenset(self.furniture)

    @property
    def number_words(self):
        return dict(self.numbers)

    @property
    def direction_words(self):
        return frozenset(self.directions)

    @property
    def connective_words(self):
        return frozenset(self.connectives)

    def room_type(self, token: str) -> str | None:
        return self.rooms.get(token)

    def furniture_symbol(self, token: str) -> str | None:
        return self.furniture.get(token)

    def number(self, token: str) -> int | float | None:
        """Numeric value of a digit string or spelled cardinal, else None."""
        if token[:1].isdigit():
            return float(token) if "." in token else int(token)
        return self.numbers.get(token)

    def word_class(self, token: str) -> str:
        if token in self.rooms:
            return "room"
        if token in self.furniture:
            return "furniture"
        if token[:1].isdigit() or token in self.numbers or token in self.ordinals:
            return "number"
        if token in self.directions:
            return "direction"
        if token in self.connectives:
            return "connective"
        return "other"

    def fuse(self, words: Sequence[str]) -> list[str]:
        """Greedy longest-match fusion of multiword lexicon entries."""
        out = []
        i = 0
        n = len(words)
        while i < n:
            for span in range(min(self._max_phrase, n - i), 1, -1):
                key = self._phrases.get(tuple(words[i : i + span]))
                if key is not None:
                    out.append(key)
                    i += span
                    break
            else:
                out.append(words[i])
                i += 1
        return out


def _norm_key(key: str) -> str:
    return "_".join(_words(key))


def parse_lexicon(text: str) -> Lexicon:
    parser = configparser.ConfigParser(delimiters=("=",), interpolation=None, comment_prefixes=("#", ";"))
    parser.read_string(text)
    sections = {}
    for name in ("rooms", "furniture", "numbers", "ordinals", "directions", "connectives"):
        if parser.has_section(name):
            sections[name] = {_norm_key(k): v.strip() for k, v in parser.items(name)}
        else:
            sections[name] = {}
    for name in ("numbers", "ordinals", "directions"):
        sections[name] = {k: int(v) for k, v in sections[name].items()}
    return Lexicon(**sections)


def load_lexicon(path: str | Path) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    text = resources.files("text2plan").joinpath("data/lexicon.txt").read_text(encoding="utf-8")
    return parse_lexicon(text)


def _normalize(text: str) -> str:
    text = text.replace("×", " x ")
    text = unicodedata.normalize("NFKD", text).encode("ascii", "ignore").decode("ascii")
    text = text.lower()
    return re.sub(r"'s\b", "", text)


def _words(text: str) -> list[str]:
    return _TOKEN.findall(_normalize(text))


def tokenize(sentence: str, lexicon: Lexicon | None = None) -> list[str]:
    """Lowercase ASCII tokens with multiword lexicon entries fused.

    >>> tokenize("dining area is 200 by 300")
    ['dining_area', 'is', '200', 'by', '300']
    """
    lexicon = lexicon or default_lexicon()
    return lexicon.fuse(_words(sentence))


def _is_abbreviation(text: str, end: int) -> bool:
    m = _PRECEDING_WORD.search(text, 0, end)
    return bool(m) and text[end] == "." and m.group(1).lower().rstrip(".") in ABBREVIATIONS


def split_sentences(text: str, lexicon: Lexicon | None = None) -> list[Sentence]:
    """Split on terminal punctuation followed by whitespace or end of text.

    Punctuation-only fragments are folded into the preceding sentence so the
    output always partitions the input's non-whitespace content.
    """
    lexicon = lexicon or default_lexicon()
    if not text or not text.strip():
        raise EmptyDocument("document is empty")
    pieces = []
    start = 0
    for m in _BOUNDARY.finditer(text):
        if _is_abbreviation(text, m.start()):
            continue
        pieces.append(text[start : m.end()])
        start = m.end()
    pieces.append(text[start:])

    raws: list[str] = []
    toks: list[list[str]] = []
    for piece in pieces:
        raw = piece.strip()
        if not raw:
            continue
        tokens = tokenize(raw, lexicon)
        if not tokens and raws:
            raws[-1] = raws[-1] + " " + raw
            continue
        if toks and not toks[-1]:
            # previous piece was a leading punctuation-only fragment
            raw = raws.pop() + " " + raw
            toks.pop()
        raws.append(raw)
        toks.append(tokens)
    if not any(toks):
        raise EmptyDocument("document has no word content")
    return [Sentence(i, raw, tuple(t)) for i, (raw, t) in enumerate(zip(raws, toks))]


def _sentence_tokens(sentence) -> Sequence[str]:
    return sentence.tokens if isinstance(sentence, Sentence) else sentence


def build_corpus_stats(documents: Iterable[Sequence]) -> CorpusStats:
    """Document frequencies and mean sentence length.

    Each document is a sequence of sentences; a sentence is either a
    :class:`Sentence` or a plain token list.
    """
    doc_count = 0
    df: Counter = Counter()
    n_tokens = 0
    n_sentences = 0
    for doc in documents:
        doc_count += 1
        seen = set()
        for sent in doc:
            tokens = _sentence_tokens(sent)
            seen.update(tokens)
            n_tokens += len(tokens)
            n_sentences += 1
        df.update(seen)
    if doc_count == 0:
        raise EmptyCorpus("no documents")
    if n_tokens == 0:
        raise EmptyCorpus("corpus contains no tokens")
    return CorpusStats(doc_count, dict(df), n_tokens / n_sentences)


# -- corpus directory format -------------------------------------------------


@dataclass
class CorpusDocument:
    name: str
    text: str
    labels: dict[int, tuple[str, ...]] | None


def parse_labels_tsv(text: str) -> dict[int, tuple[str, ...]]:
    labels = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        index, _, rest = line.partition("\t")
        names = tuple(x for x in rest.strip().split(",") if x)
        unknown = set(names) - set(LABELS)
        if unknown:
            raise ValueError(f"line {lineno}: unknown labels {sorted(unknown)}")
        labels[int(index)] = names
    return labels


def format_labels_tsv(labels: Mapping[int, Sequence[str]]) -> str:
    return "".join(f"{i}\t{','.join(names)}\n" for i, names in sorted(labels.items()))


def read_corpus_dir(path: str | Path) -> list[CorpusDocument]:
    """Read ``*.txt`` descriptions plus optional ``<name>.labels.tsv`` siblings."""
    root = Path(path)
    docs = []
    for txt in sorted(root.glob("*.txt")):
        labels_path = txt.with_name(txt.stem + ".labels.tsv")
        labels = parse_labels_tsv(labels_path.read_text(encoding="utf-8")) if labels_path.exists() else None
        docs.append(CorpusDocument(txt.stem, txt.read_text(encoding="utf-8"), labels))
    return docs
