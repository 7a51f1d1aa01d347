"""Crowd-annotation pipeline: survey generation, annotator filtering,
rating aggregation onto the 0-10 plausibility scale, and leave-one-out
inter-annotator agreement."""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO

from .core import SelPrefError, SPPair, SPRelation, parse_relation
from .evaluation import ConstantInputError, spearman


class AnnotationError(SelPrefError, ValueError):
    pass


class MixedRelationError(AnnotationError):
    pass


class InsufficientOverlapError(AnnotationError):
    pass


RATING_MIN = 1
RATING_MAX = 5

RATING_OPTIONS = [
    (5, "Perfectly match"),
    (4, "Make sense"),
    (3, "Normal"),
    (2, "Seems weird"),
    (1, "It's not applicable at all"),
]

QUESTION_TEMPLATES = {
    SPRelation.DOBJ: (
        "How suitable do you think it is if we use {dependent} as the "
        "object of the verb {head}?"
    ),
    SPRelation.NSUBJ: (
        "How suitable do you think it is if we use {dependent} as the "
        "subject of the verb {head}?"
    ),
    SPRelation.AMOD: (
        "How suitable do you think it is if we use {dependent} to "
        "describe the noun {head}?"
    ),
    SPRelation.DOBJ_AMOD: (
        "How suitable do you think it is if we use {dependent} to "
        "describe the object of the verb {head}?"
    ),
    SPRelation.NSUBJ_AMOD: (
        "How suitable do you think it is if we use {dependent} to "
        "describe the subject of the verb {head}?"
    ),
}

QUESTIONS_PER_SURVEY = 103
PAIRS_PER_SURVEY = 100
CHECKPOINTS_PER_SURVEY = 3


def render_question(pair: SPPair) -> str:
    return QUESTION_TEMPLATES[pair.relation].format(
        head=pair.head, dependent=pair.dependent
    )


@dataclass(frozen=True)
class SurveyQuestion:
    pair: SPPair
    text: str
    is_checkpoint: bool
    expected: Optional[frozenset[int]] = None  # accepted checkpoint answers


@dataclass
class Survey:
    relation: SPRelation
    questions: list[SurveyQuestion]

    def __post_init__(self):
        if len(self.questions) != QUESTIONS_PER_SURVEY:
            raise AnnotationError(
                f"survey must hold {QUESTIONS_PER_SURVEY} questions, "
                f"got {len(self.questions)}"
            )
        n_cp = sum(q.is_checkpoint for q in self.questions)
        if n_cp != CHECKPOINTS_PER_SURVEY:
            raise AnnotationError(f"survey must hold 3 checkpoints, got {n_cp}")
        if any(q.pair.relation is not self.relation for q in self.questions):
            raise MixedRelationError("survey mixes relations")

    def to_json(self, **meta) -> str:
        doc = {
            "relation": self.relation.value,
            "instructions": (
                "Rate how suitable each word combination is. Select one "
                "option per question."
            ),
            "options": [{"rating": r, "label": l} for r, l in RATING_OPTIONS],
            "example": {
                "question": render_question(
                    SPPair(SPRelation.DOBJ, "eat", "meal")
                ),
                "answer": "Perfectly match (5)",
            },
            "questions": [
                {
                    "index": i + 1,
                    "relation": q.pair.relation.value,
                    "head": q.pair.head,
                    "dependent": q.pair.dependent,
                    "text": q.text,
                }
                for i, q in enumerate(self.questions)
            ],
        }
        if meta:
            doc["meta"] = meta
        return json.dumps(doc, indent=2, sort_keys=True)


def generate_survey(
    pairs: list[SPPair],
    checkpoints: list[tuple[SPPair, frozenset[int]]],
    seed: int = 0,
) -> Survey:
    """Build one 103-question survey: 100 pairs plus 3 checkpoints with
    known acceptable answers, in seeded shuffled order."""
    if len(pairs) != PAIRS_PER_SURVEY:
        raise AnnotationError(f"need exactly {PAIRS_PER_SURVEY} pairs, got {len(pairs)}")
    if len(checkpoints) != CHECKPOINTS_PER_SURVEY:
        raise AnnotationError(
            f"need exactly {CHECKPOINTS_PER_SURVEY} checkpoints, got {len(checkpoints)}"
        )
    relations = {p.relation for p in pairs} | {p.relation for p, _ in checkpoints}
    if len(relations) != 1:
        raise MixedRelationError(f"survey mixes relations: {sorted(r.value for r in relations)}")
    (relation,) = relations
    for _, expected in checkpoints:
        if not expected or not all(RATING_MIN <= e <= RATING_MAX for e in expected):
            raise AnnotationError(f"bad checkpoint expected set: {sorted(expected)}")

    questions = [
        SurveyQuestion(p, render_question(p), False) for p in pairs
    ] + [
        SurveyQuestion(p, render_question(p), True, frozenset(expected))
        for p, expected in checkpoints
    ]
    random.Random(seed).shuffle(questions)
    return Survey(relation=relation, questions=questions)


@dataclass(frozen=True)
class RawRating:
    annotator_id: str
    pair: SPPair
    rating: int
    is_checkpoint: bool = False
    expected: Optional[frozenset[int]] = None

    def __post_init__(self):
        if not (RATING_MIN <= self.rating <= RATING_MAX):
            raise AnnotationError(f"rating {self.rating} outside [1,5]")
        if self.is_checkpoint and not self.expected:
            raise AnnotationError("checkpoint rating without expected answers")
        if not self.is_checkpoint and self.expected:
            raise AnnotationError("expected answers on a non-checkpoint rating")


@dataclass
class Rejection:
    annotator_id: str
    reason: str


def filter_annotations(
    ratings: list[RawRating],
) -> tuple[list[RawRating], list[Rejection]]:
    """Drop every rating from annotators who failed a checkpoint or rated
    every question identically (zero variance)."""
    by_annotator: dict[str, list[RawRating]] = {}
    for r in ratings:
        by_annotator.setdefault(r.annotator_id, []).append(r)

    kept: list[RawRating] = []
    rejected: list[Rejection] = []
    for ann_id in sorted(by_annotator):
        rows = by_annotator[ann_id]
        reason = None
        for r in rows:
            if r.is_checkpoint and r.rating not in r.expected:
                reason = (
                    f"checkpoint failed: rated ({r.pair.head}, "
                    f"{r.pair.dependent}) as {r.rating}, expected one of "
                    f"{sorted(r.expected)}"
                )
                break
        if reason is None and len({r.rating for r in rows}) == 1 and len(rows) > 1:
            reason = f"zero rating variance across {len(rows)} questions"
        if reason is None:
            kept.extend(rows)
        else:
            rejected.append(Rejection(ann_id, reason))
    return kept, rejected


def aggregate(
    kept: list[RawRating], min_ratings: int = 10
) -> tuple[dict[SPPair, float], dict[SPPair, int]]:
    """Mean rating per pair mapped onto [0,10] via (mean - 1) * 2.5.

    Checkpoint answers never enter the aggregate. Pairs with fewer than
    min_ratings ratings come back in the second map (pair -> how many it
    got) instead of being scored.
    """
    sums: dict[SPPair, float] = {}
    counts: dict[SPPair, int] = {}
    for r in kept:
        if r.is_checkpoint:
            continue
        sums[r.pair] = sums.get(r.pair, 0.0) + r.rating
        counts[r.pair] = counts.get(r.pair, 0) + 1
    scores = {}
    underrated = {}
    for pair, n in counts.items():
        if n >= min_ratings:
            scores[pair] = (sums[pair] / n - 1.0) * 2.5
        else:
            underrated[pair] = n
    return scores, underrated


def scale_rating_mean(mean: float) -> float:
    """The 1-5 to 0-10 affine map used by aggregate."""
    return (mean - 1.0) * 2.5


def _leave_one_out(by_annotator: dict[str, dict[SPPair, float]]) -> list[float]:
    rhos = []
    for ann_id in sorted(by_annotator):
        mine = by_annotator[ann_id]
        shared = []
        for pair, rating in sorted(mine.items(), key=lambda kv: (
            kv[0].relation.value, kv[0].head, kv[0].dependent)):
            others = [
                table[pair]
                for other, table in by_annotator.items()
                if other != ann_id and pair in table
            ]
            if others:
                shared.append((rating, sum(others) / len(others)))
        if len(shared) < 2:
            raise InsufficientOverlapError(
                f"annotator {ann_id!r} shares fewer than 2 pairs with the rest"
            )
        try:
            rhos.append(spearman([a for a, _ in shared], [b for _, b in shared]))
        except ConstantInputError as err:
            raise InsufficientOverlapError(
                f"annotator {ann_id!r}: {err}"
            ) from None
    return rhos


def iaa(kept: list[RawRating]) -> tuple[dict[SPRelation, float], float]:
    """Leave-one-out agreement: each annotator's Spearman against the mean
    of everyone else, averaged per relation; overall = mean of the
    per-relation values."""
    by_rel: dict[SPRelation, dict[str, dict[SPPair, float]]] = {}
    for r in kept:
        if r.is_checkpoint:
            continue
        by_rel.setdefault(r.pair.relation, {}).setdefault(
            r.annotator_id, {}
        )[r.pair] = float(r.rating)
    if not by_rel:
        raise InsufficientOverlapError("no non-checkpoint ratings")
    per_relation = {}
    for rel in sorted(by_rel, key=lambda r: r.value):
        annotators = by_rel[rel]
        if len(annotators) < 2:
            raise InsufficientOverlapError(
                f"{rel.value}: need at least 2 annotators, got {len(annotators)}"
            )
        rhos = _leave_one_out(annotators)
        per_relation[rel] = sum(rhos) / len(rhos)
    overall = sum(per_relation.values()) / len(per_relation)
    return per_relation, overall


RATINGS_COLUMNS = [
    "annotator_id", "relation", "head", "dependent",
    "rating", "is_checkpoint", "expected",
]


def write_ratings(ratings: Iterable[RawRating], fh: TextIO) -> None:
    writer = csv.writer(fh)
    writer.writerow(RATINGS_COLUMNS)
    for r in ratings:
        writer.writerow([
            r.annotator_id,
            r.pair.relation.value,
            r.pair.head,
            r.pair.dependent,
            r.rating,
            "1" if r.is_checkpoint else "0",
            "|".join(str(e) for e in sorted(r.expected)) if r.expected else "",
        ])


def read_ratings(fh: TextIO, source: str = "<stream>") -> list[RawRating]:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header != RATINGS_COLUMNS:
        raise AnnotationError(f"{source}: bad header {header!r}")
    out = []
    for lineno, row in enumerate(reader, 2):
        if not row:
            continue
        if len(row) != len(RATINGS_COLUMNS):
            raise AnnotationError(
                f"{source}:{lineno}: expected {len(RATINGS_COLUMNS)} fields, "
                f"got {len(row)}"
            )
        ann_id, rel_name, head, dep, rating, is_cp, expected = row
        try:
            out.append(RawRating(
                annotator_id=ann_id,
                pair=SPPair(parse_relation(rel_name), head, dep),
                rating=int(rating),
                is_checkpoint=is_cp == "1",
                expected=frozenset(int(e) for e in expected.split("|"))
                if expected else None,
            ))
        except (SelPrefError, ValueError) as err:
            raise AnnotationError(f"{source}:{lineno}: {err}") from None
    return out
