"""Shared domain types: relations, pairs, plausibility range, vocabulary."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class SelPrefError(Exception):
    """Base class for all toolkit errors."""


class UnknownRelationError(SelPrefError, ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown selectional relation: {name!r}")
        self.name = name


class BadLemmaError(SelPrefError, ValueError):
    pass


class PlausibilityRangeError(SelPrefError, ValueError):
    pass


class SPRelation(enum.Enum):
    """The five selectional relations.

    One-hop: verb-object (dobj), verb-subject (nsubj), noun-adjective (amod).
    Two-hop: verb-object-adjective (dobj_amod) and verb-subject-adjective
    (nsubj_amod), composing an object/subject edge with an adjectival
    modifier edge.
    """

    DOBJ = "dobj"
    NSUBJ = "nsubj"
    AMOD = "amod"
    DOBJ_AMOD = "dobj_amod"
    NSUBJ_AMOD = "nsubj_amod"

    def __str__(self) -> str:
        return self.value

    @property
    def head_pos(self) -> str:
        """POS class of the head lemma: 'verb' except for amod ('noun')."""
        return "noun" if self is SPRelation.AMOD else "verb"

    @property
    def dependent_pos(self) -> str:
        """POS class of the dependent lemma: noun for dobj/nsubj, else adj."""
        return "noun" if self in (SPRelation.DOBJ, SPRelation.NSUBJ) else "adj"


def parse_relation(name: str) -> SPRelation:
    """Parse a relation name, case-insensitively."""
    try:
        return SPRelation(name.strip().lower())
    except ValueError:
        raise UnknownRelationError(name) from None


def _check_lemma(role: str, lemma: str) -> str:
    if not lemma or not lemma.strip():
        raise BadLemmaError(f"{role} lemma is empty")
    if "\t" in lemma or "\n" in lemma or "\r" in lemma:
        raise BadLemmaError(f"{role} lemma contains tab/newline: {lemma!r}")
    return lemma.lower()


@dataclass(frozen=True)
class SPPair:
    """A (relation, head, dependent) triple, the unit of SP knowledge.

    Heads are verbs (nouns for amod); dependents are nouns for dobj/nsubj
    and adjectives otherwise.  Lemmas are lowercased at construction and
    may not contain tabs or newlines.
    """

    relation: SPRelation
    head: str
    dependent: str

    def __post_init__(self):
        object.__setattr__(self, "head", _check_lemma("head", self.head))
        object.__setattr__(self, "dependent", _check_lemma("dependent", self.dependent))


# Human plausibility judgments live on a 0-10 scale.
PLAUSIBILITY_MIN = 0.0
PLAUSIBILITY_MAX = 10.0


def check_plausibility(value: float) -> float:
    """Validate a plausibility score, returning it unchanged."""
    if not PLAUSIBILITY_MIN <= value <= PLAUSIBILITY_MAX:
        raise PlausibilityRangeError(
            f"plausibility {value} outside [{PLAUSIBILITY_MIN}, {PLAUSIBILITY_MAX}]"
        )
    return float(value)


class LexiconError(SelPrefError, ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    """Vocabulary partitioned into verbs, nouns, and adjectives.

    The release vocabulary is 2,500 words: 500 verbs, 1,343 nouns, and 657
    adjectives; arbitrary partitions are accepted as long as the three sets
    are pairwise disjoint.
    """

    verbs: frozenset[str]
    nouns: frozenset[str]
    adjectives: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "verbs", frozenset(w.lower() for w in self.verbs))
        object.__setattr__(self, "nouns", frozenset(w.lower() for w in self.nouns))
        object.__setattr__(self, "adjectives", frozenset(w.lower() for w in self.adjectives))
        overlap = (self.verbs & self.nouns) | (self.verbs & self.adjectives) | (
            self.nouns & self.adjectives
        )
        if overlap:
            sample = ", ".join(sorted(overlap)[:5])
            raise LexiconError(f"lexicon POS sets overlap on: {sample}")

    def pool(self, pos: str) -> frozenset[str]:
        """The word set for a POS class name ('verb' | 'noun' | 'adj')."""
        try:
            return {"verb": self.verbs, "noun": self.nouns, "adj": self.adjectives}[pos]
        except KeyError:
            raise LexiconError(f"unknown POS class {pos!r}") from None

    def dependents_for(self, relation: SPRelation) -> frozenset[str]:
        return self.pool(relation.dependent_pos)

    @classmethod
    def from_tsv(cls, path) -> "Lexicon":
        """Load a `lemma<TAB>pos` file with pos in {verb, noun, adj}."""
        sets: dict[str, set[str]] = {"verb": set(), "noun": set(), "adj": set()}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                fields = line.split("\t")
                if len(fields) != 2:
                    raise LexiconError(f"{path}:{lineno}: expected 2 columns, got {len(fields)}")
                lemma, pos = fields
                if pos not in sets:
                    raise LexiconError(f"{path}:{lineno}: unknown POS {pos!r}")
                sets[pos].add(lemma.lower())
        return cls(
            verbs=frozenset(sets["verb"]),
            nouns=frozenset(sets["noun"]),
            adjectives=frozenset(sets["adj"]),
        )
