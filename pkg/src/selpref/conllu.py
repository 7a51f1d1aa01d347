"""Minimal streaming CoNLL-U reader.

Only the columns the extraction rules need are kept: ID, LEMMA, UPOS, HEAD,
DEPREL.  Multiword-token ranges (IDs like ``3-4``) and empty nodes (``3.1``)
are skipped; comment lines start with ``#``; a blank line ends a sentence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .core import SelPrefError

log = logging.getLogger(__name__)

N_COLUMNS = 10


class CorpusFormatError(SelPrefError, ValueError):
    """Malformed CoNLL-U input, carrying file/line coordinates."""

    def __init__(self, source: str, lineno: int, message: str):
        super().__init__(f"{source}:{lineno}: {message}")
        self.source = source
        self.lineno = lineno


@dataclass(frozen=True)
class Token:
    index: int          # 1-based position within the sentence
    lemma: str
    upos: str
    head_index: int     # 0 = root
    deprel: str

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head_index < 0:
            raise ValueError(f"head index must be >= 0, got {self.head_index}")
        if self.head_index == self.index:
            raise ValueError(f"token {self.index} is its own head")


class Sentence:
    """An ordered, contiguously indexed token list."""

    def __init__(self, tokens: Iterable[Token]):
        self.tokens = list(tokens)
        for pos, tok in enumerate(self.tokens, 1):
            if tok.index != pos:
                raise ValueError(f"token indices not contiguous at position {pos}")
            if tok.head_index > len(self.tokens):
                raise ValueError(
                    f"token {tok.index} points at head {tok.head_index} beyond sentence end"
                )

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def token_at(self, index: int) -> Token:
        return self.tokens[index - 1]


def _parse_token_line(line: str, source: str, lineno: int) -> Token | None:
    fields = line.split("\t")
    if len(fields) != N_COLUMNS:
        raise CorpusFormatError(
            source, lineno, f"expected {N_COLUMNS} tab-separated columns, got {len(fields)}"
        )
    tok_id = fields[0]
    if "-" in tok_id or "." in tok_id:
        return None  # multiword-token range or empty node
    try:
        index = int(tok_id)
    except ValueError:
        raise CorpusFormatError(source, lineno, f"bad token id {tok_id!r}") from None
    try:
        head = int(fields[6])
    except ValueError:
        raise CorpusFormatError(source, lineno, f"bad head index {fields[6]!r}") from None
    try:
        return Token(index=index, lemma=fields[2], upos=fields[3], head_index=head, deprel=fields[7])
    except ValueError as exc:
        raise CorpusFormatError(source, lineno, str(exc)) from None


def read_conllu(
    fh: TextIO,
    source: str = "<stream>",
    skip_malformed: bool = False,
) -> Iterator[Sentence]:
    """Stream sentences from a CoNLL-U file object.

    With ``skip_malformed`` the offending sentence is dropped and logged
    instead of raising (the CLI default); library callers get fail-fast
    behaviour.
    """
    tokens: list[Token] = []
    start_line = 1
    bad = False

    def flush() -> Sentence | None:
        nonlocal tokens, bad
        out = None
        if tokens and not bad:
            try:
                out = Sentence(tokens)
            except ValueError as exc:
                if not skip_malformed:
                    raise CorpusFormatError(source, start_line, str(exc)) from None
                log.warning("%s:%d: skipping sentence: %s", source, start_line, exc)
        tokens = []
        bad = False
        return out

    lineno = 0
    for lineno, line in enumerate(fh, 1):
        line = line.rstrip("\n").rstrip("\r")
        if not line:
            sent = flush()
            start_line = lineno + 1
            if sent is not None:
                yield sent
            continue
        if line.startswith("#"):
            continue
        try:
            tok = _parse_token_line(line, source, lineno)
        except CorpusFormatError as exc:
            if not skip_malformed:
                raise
            log.warning("skipping sentence with malformed line: %s", exc)
            bad = True
            continue
        if tok is not None:
            tokens.append(tok)
    sent = flush()
    if sent is not None:
        yield sent


def read_conllu_file(path, skip_malformed: bool = False) -> Iterator[Sentence]:
    with open(path, encoding="utf-8") as fh:
        yield from read_conllu(fh, source=str(path), skip_malformed=skip_malformed)
