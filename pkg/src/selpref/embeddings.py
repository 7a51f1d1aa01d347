"""Word embedding table: GloVe-style text files plus cosine similarity."""

from __future__ import annotations

import logging
from typing import Iterable

import numpy as np

from .core import SelPrefError

log = logging.getLogger(__name__)


class EmbeddingError(SelPrefError, ValueError):
    pass


class EmptyEmbeddingFile(EmbeddingError):
    pass


class ZeroVectorError(EmbeddingError, ArithmeticError):
    pass


class EmbeddingTable:
    """lemma -> fixed-dimension vector, loaded once and then read-only."""

    def __init__(self, vectors: dict[str, np.ndarray]):
        if not vectors:
            raise EmptyEmbeddingFile("no embedding vectors")
        dims = {v.shape for v in vectors.values()}
        if len(dims) != 1:
            raise EmbeddingError(f"mixed embedding dimensions: {sorted(dims)}")
        self._vectors = {w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()}
        self.dim = next(iter(dims))[0]
        for w, v in self._vectors.items():
            if not np.all(np.isfinite(v)):
                raise EmbeddingError(f"non-finite components in vector for {w!r}")

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def get(self, word: str) -> np.ndarray | None:
        return self._vectors.get(word)

    def words(self) -> Iterable[str]:
        return self._vectors.keys()


def load_embeddings(path) -> EmbeddingTable:
    """Read GloVe text format: `word v1 v2 ... vd`, one entry per line.

    Duplicate words keep their first occurrence; a dimension change
    mid-file is an error naming the offending line.
    """
    vectors: dict[str, np.ndarray] = {}
    dim = None
    dupes = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.rstrip("\n").split(" ")
            if len(parts) < 2:
                raise EmbeddingError(f"{path}:{lineno}: no vector components")
            word = parts[0]
            try:
                vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
            except ValueError:
                raise EmbeddingError(f"{path}:{lineno}: non-numeric component") from None
            if dim is None:
                dim = vec.shape[0]
            elif vec.shape[0] != dim:
                raise EmbeddingError(
                    f"{path}:{lineno}: dimension {vec.shape[0]} != {dim}"
                )
            if word in vectors:
                dupes += 1
                continue
            vectors[word] = vec
    if not vectors:
        raise EmptyEmbeddingFile(f"{path}: empty embedding file")
    if dupes:
        log.warning("%s: %d duplicate words ignored (first kept)", path, dupes)
    return EmbeddingTable(vectors)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ZeroVectorError("cosine of a zero-norm vector is undefined")
    # rounding can push dot/(na*nb) an ulp past +-1 for (anti)parallel
    # vectors; clamp so downstream averages stay inside [-1, 1]
    return max(-1.0, min(1.0, float(np.dot(a, b) / (na * nb))))
