"""Pronoun resolution for adjective-predicate schema questions.

Each question has a verb, two candidates filling its subject and object
roles, and an adjective describing the ambiguous pronoun. The resolver
compares the plausibility of the adjective describing the verb's subject
(nsubj_amod) against its object (dobj_amod) and picks the strictly
higher side; missing knowledge or a tie means no prediction.
"""

from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

from .core import SelPrefError, SPPair, SPRelation
from .scorers import ScoreModel


class WinogradError(SelPrefError, ValueError):
    pass


SCHEMA_VERSION = 1

SUBJECT, OBJECT = "subject", "object"


@dataclass(frozen=True)
class Mention:
    surface: str
    lemma: str

    def __post_init__(self):
        if not self.surface or not self.lemma:
            raise WinogradError("candidate surface and lemma must be non-empty")


@dataclass(frozen=True)
class WinogradQuestion:
    id: str
    sentence: str
    verb: str
    adjective: str
    candidate_subject: Mention
    candidate_object: Mention
    gold: str
    note: str = ""

    def __post_init__(self):
        if self.gold not in (SUBJECT, OBJECT):
            raise WinogradError(f"question {self.id}: gold must be subject/object")
        if self.candidate_subject.lemma == self.candidate_object.lemma:
            raise WinogradError(f"question {self.id}: candidates must differ")
        if not self.verb or not self.adjective:
            raise WinogradError(f"question {self.id}: verb and adjective required")

    @property
    def gold_candidate(self) -> Mention:
        return (
            self.candidate_subject if self.gold == SUBJECT else self.candidate_object
        )


class Outcome(enum.Enum):
    CORRECT = "correct"
    WRONG = "wrong"
    NA = "na"


@dataclass(frozen=True)
class Prediction:
    question_id: str
    gold: str
    subject_score: Optional[float]
    object_score: Optional[float]
    predicted: Optional[str]
    outcome: Outcome

    def __post_init__(self):
        should_abstain = (
            self.subject_score is None
            or self.object_score is None
            or self.subject_score == self.object_score
        )
        if should_abstain != (self.outcome is Outcome.NA):
            raise WinogradError("outcome is NA iff a score is missing or tied")
        if (self.predicted is None) != (self.outcome is Outcome.NA):
            raise WinogradError("prediction present iff an answer was made")


def resolve(q: WinogradQuestion, model: ScoreModel) -> Prediction:
    """Score the adjective against both roles of the verb and answer with
    the strictly higher one; abstain on any missing score or a tie."""
    subject_score = model.score(SPPair(SPRelation.NSUBJ_AMOD, q.verb, q.adjective))
    object_score = model.score(SPPair(SPRelation.DOBJ_AMOD, q.verb, q.adjective))
    if subject_score is None or object_score is None or subject_score == object_score:
        predicted = None
        outcome = Outcome.NA
    else:
        predicted = SUBJECT if subject_score > object_score else OBJECT
        outcome = Outcome.CORRECT if predicted == q.gold else Outcome.WRONG
    return Prediction(
        question_id=q.id,
        gold=q.gold,
        subject_score=subject_score,
        object_score=object_score,
        predicted=predicted,
        outcome=outcome,
    )


@dataclass(frozen=True)
class AccuracySummary:
    correct: int
    wrong: int
    na: int

    @property
    def total(self) -> int:
        return self.correct + self.wrong + self.na

    @property
    def ap(self) -> Optional[float]:
        """Precision over answered questions; None when nothing was answered."""
        answered = self.correct + self.wrong
        if answered == 0:
            return None
        return self.correct / answered

    @property
    def ao(self) -> float:
        """Overall accuracy with unanswered questions credited at chance."""
        return (self.correct + self.na / 2.0) / self.total

    def to_dict(self) -> dict:
        return {
            "correct": self.correct,
            "wrong": self.wrong,
            "na": self.na,
            "total": self.total,
            "ap": self.ap,
            "ao": self.ao,
        }


def score_accuracy(predictions: Iterable[Prediction]) -> AccuracySummary:
    counts = {Outcome.CORRECT: 0, Outcome.WRONG: 0, Outcome.NA: 0}
    n = 0
    for p in predictions:
        counts[p.outcome] += 1
        n += 1
    if n == 0:
        raise WinogradError("no predictions to score")
    return AccuracySummary(
        correct=counts[Outcome.CORRECT],
        wrong=counts[Outcome.WRONG],
        na=counts[Outcome.NA],
    )


def load_questions(fh: TextIO, source: str = "<stream>") -> list[WinogradQuestion]:
    try:
        doc = json.load(fh)
    except json.JSONDecodeError as err:
        raise WinogradError(f"{source}: invalid JSON: {err}") from None
    if not isinstance(doc, dict) or "questions" not in doc:
        raise WinogradError(f"{source}: expected an object with a questions array")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise WinogradError(
            f"{source}: unsupported schema_version {doc.get('schema_version')!r}"
        )
    out = []
    seen = set()
    for i, rec in enumerate(doc["questions"]):
        try:
            q = WinogradQuestion(
                id=str(rec["id"]),
                sentence=rec["sentence"],
                verb=rec["verb"],
                adjective=rec["adjective"],
                candidate_subject=Mention(**rec["candidate_subject"]),
                candidate_object=Mention(**rec["candidate_object"]),
                gold=rec["gold"],
                note=rec.get("note", ""),
            )
        except (KeyError, TypeError) as err:
            raise WinogradError(f"{source}: question #{i}: {err}") from None
        if q.id in seen:
            raise WinogradError(f"{source}: duplicate question id {q.id}")
        seen.add(q.id)
        out.append(q)
    return out


def load_questions_file(path) -> list[WinogradQuestion]:
    with open(path, encoding="utf-8") as fh:
        return load_questions(fh, source=str(path))


def bundled_questions() -> list[WinogradQuestion]:
    """The 72 adjective-pattern schema questions shipped with the package."""
    from importlib import resources

    ref = resources.files("selpref").joinpath("data/wsc72.json")
    with ref.open(encoding="utf-8") as fh:
        return load_questions(fh, source="wsc72.json")


PREDICTION_COLUMNS = [
    "question_id", "gold", "subject_score", "object_score",
    "predicted", "outcome",
]


def write_predictions(predictions: Iterable[Prediction], fh: TextIO) -> None:
    writer = csv.writer(fh)
    writer.writerow(PREDICTION_COLUMNS)
    for p in predictions:
        writer.writerow([
            p.question_id,
            p.gold,
            "" if p.subject_score is None else repr(p.subject_score),
            "" if p.object_score is None else repr(p.object_score),
            p.predicted or "",
            p.outcome.value,
        ])


def summary_json(summary: AccuracySummary, **meta) -> str:
    doc = summary.to_dict()
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=2, sort_keys=True)
