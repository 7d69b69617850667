import logging
import time
from pathlib import Path

import pytest

from text2plan.classifier import train_classifier
from text2plan.generator import generate_document, size_for_seed
from text2plan.text_corpus import split_sentences

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

HALL_TEXT = (
    "The hall is rectangular and measures 250 by 200. "
    "There is a door on the second wall of the hall. "
    "The third wall of the hall has a door. "
    "The hall has a sofa and a chair."
)
HALL_RECORD = {
    "id": "hall1",
    "type": "hall",
    "shape": "rectangle",
    "sides": 4,
    "dimensions": [250, 200, 250, 200],
    "door_placement": [[2, 1], [3, 1]],
    "furnitures": [["sofa", 1], ["chair", 1]],
}
EXAMPLE_SENTENCES = (
    "The bedroom leads to bathroom.",
    "The bedroom is adjacent to hall and there is a bed in the centre.",
)

TRAIN_SEED_BASE = 10_000
TRAIN_SENTENCES = 3000


def training_documents(n_sentences=TRAIN_SENTENCES, base=TRAIN_SEED_BASE):
    """Generator documents, in seed order, until ``n_sentences`` are collected."""
    docs, total, i = [], 0, 0
    while total < n_sentences:
        d = generate_document(base + i, size_for_seed(i))
        sents = split_sentences(d.text)
        docs.append((sents, dict(enumerate(d.labels))))
        total += len(sents)
        i += 1
    return docs


@pytest.fixture(scope="session")
def trained():
    """The classifier trained on the 3,000-sentence corpus, with timing."""
    docs = training_documents()
    logging.getLogger("text2plan").setLevel(logging.WARNING)
    t0 = time.perf_counter()
    model, report = train_classifier(docs, seed=0)
    elapsed = time.perf_counter() - t0
    return model, report, elapsed, docs


@pytest.fixture
def hall_text():
    return HALL_TEXT


def scale_plan_json(obj, k):
    """Every length in a plan.json structure multiplied by ``k``."""
    from fractions import Fraction

    if isinstance(obj, list):
        return [scale_plan_json(v, k) for v in obj]
    if isinstance(obj, dict):
        keep = ("wall_a", "wall_b", "rotation")
        return {key: (v if key in keep else scale_plan_json(v, k)) for key, v in obj.items()}
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj * k
    if isinstance(obj, str) and "/" in obj:
        q = Fraction(obj) * k
        return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return obj
