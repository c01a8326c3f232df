"""Source registry and rule-based characterization of text content.

Extraction is deliberately corpus-statistics-free: maximal runs of the
shape ``term (connector term)*`` become flat-parsed index expressions.
Everything here is deterministic, so re-ingesting a corpus reproduces the
registry byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import (
    DuplicateSource,
    LithoidError,
    NoCharacterization,
    PhraseTooLong,
    UnknownSource,
)
from .expressions import DEFAULT_GRAMMAR, Grammar, IndexExpression, linearize, parse, size

__all__ = [
    "MEDIA_TYPES",
    "SourceDescriptor",
    "SourceCharacterization",
    "ExtractionConfig",
    "extract",
    "Registry",
    "IngestReport",
    "read_corpus",
]

MEDIA_TYPES = ("text", "other")


@dataclass(frozen=True)
class SourceDescriptor:
    source_id: str
    uri: str
    title: str = ""
    media_type: str = "text"

    def __post_init__(self) -> None:
        if not self.source_id or any(c in self.source_id for c in "\t\n\r"):
            raise ValueError(f"bad source_id: {self.source_id!r}")
        if not self.uri:
            raise ValueError("uri must be non-empty")
        if self.media_type not in MEDIA_TYPES:
            raise ValueError(f"media_type must be one of {MEDIA_TYPES}")


@dataclass(frozen=True)
class SourceCharacterization:
    source_id: str
    phrases: frozenset[IndexExpression]
    provenance: str  # "extracted" | "provided"


@dataclass(frozen=True)
class ExtractionConfig:
    grammar: Grammar = DEFAULT_GRAMMAR
    max_phrase_terms: int = 6
    min_term_length: int = 2

    def __post_init__(self) -> None:
        if self.max_phrase_terms < 1 or self.min_term_length < 1:
            raise ValueError("max_phrase_terms and min_term_length must be >= 1")


DEFAULT_EXTRACTION = ExtractionConfig()


def _candidate_kind(token: str, config: ExtractionConfig) -> str:
    grammar = config.grammar
    low = token.lower()
    if grammar.is_connector(low):
        return "connector"
    if len(low) >= config.min_term_length and grammar.is_term_token(low):
        return "term"
    return "boundary"


def _emit_runs(text: str, config: ExtractionConfig) -> Iterator[list[str]]:
    """Yield maximal token runs of the shape term (connector term)*."""
    run: list[str] = []

    def flush():
        nonlocal run
        if run and _candidate_kind(run[-1], config) == "connector":
            run = run[:-1]
        if run:
            yield run
        run = []

    for raw in text.split():
        # punctuation inside or around tokens splits runs below
        for piece, is_word in _split_word(raw):
            if not is_word:
                yield from flush()
                continue
            token = piece.lower()
            kind = _candidate_kind(token, config)
            if kind == "boundary":
                yield from flush()
            elif kind == "connector":
                if not run or _candidate_kind(run[-1], config) == "connector":
                    yield from flush()
                else:
                    run.append(token)
            else:  # term
                if run and _candidate_kind(run[-1], config) == "term":
                    yield from flush()
                run.append(token)
    yield from flush()


def _split_word(raw: str) -> Iterator[tuple[str, bool]]:
    """Split one whitespace token into word pieces and punctuation marks."""
    word = []
    for ch in raw:
        if ch.isalnum() or ch == "-":
            word.append(ch)
        else:
            if word:
                yield "".join(word), True
                word = []
            yield ch, False
    if word:
        yield "".join(word), True


def _chunk_run(run: list[str], config: ExtractionConfig) -> Iterator[list[str]]:
    """Split an overlong run at connector boundaries into capped chunks."""
    max_terms = config.max_phrase_terms
    chunk: list[str] = []
    nterms = 0
    for token in run:
        if _candidate_kind(token, config) == "term" and nterms == max_terms:
            if chunk and _candidate_kind(chunk[-1], config) == "connector":
                chunk.pop()
            yield chunk
            chunk, nterms = [], 0
        chunk.append(token)
        if _candidate_kind(token, config) == "term":
            nterms += 1
    if chunk:
        yield chunk


def extract(text: str, config: ExtractionConfig = DEFAULT_EXTRACTION) -> frozenset[IndexExpression]:
    """Derive index expressions from document text.

    Pure and deterministic; empty text yields the empty set.
    """
    out: set[IndexExpression] = set()
    for run in _emit_runs(text, config):
        for chunk in _chunk_run(run, config):
            if not chunk:
                continue
            out.add(parse(" ".join(chunk), config.grammar))
    return frozenset(out)


def parse_phrases(
    phrases: Iterable[str | IndexExpression],
    config: ExtractionConfig = DEFAULT_EXTRACTION,
) -> frozenset[IndexExpression]:
    """Parse caller-provided phrases, enforcing the size cap."""
    parsed = set()
    for p in phrases:
        expr = p if isinstance(p, IndexExpression) else parse(p, config.grammar)
        if size(expr) > config.max_phrase_terms:
            raise PhraseTooLong(
                f"{linearize(expr)!r} has {size(expr)} terms "
                f"(max {config.max_phrase_terms})"
            )
        parsed.add(expr)
    return frozenset(parsed)


class Registry:
    """Registered sources and their characterizations."""

    def __init__(self, config: ExtractionConfig = DEFAULT_EXTRACTION):
        self.config = config
        self._descriptors: dict[str, SourceDescriptor] = {}
        self._characterizations: dict[str, SourceCharacterization] = {}

    def __contains__(self, source_id: str) -> bool:
        return source_id in self._descriptors

    def __len__(self) -> int:
        return len(self._descriptors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Registry):
            return NotImplemented
        return (
            self._descriptors == other._descriptors
            and self._characterizations == other._characterizations
        )

    def source_ids(self) -> list[str]:
        return sorted(self._descriptors)

    def descriptor(self, source_id: str) -> SourceDescriptor:
        try:
            return self._descriptors[source_id]
        except KeyError:
            raise UnknownSource(f"source {source_id!r} is not registered") from None

    def characterization(self, source_id: str) -> SourceCharacterization:
        self.descriptor(source_id)
        return self._characterizations[source_id]

    def register(
        self,
        descriptor: SourceDescriptor,
        phrases: Iterable[str | IndexExpression] | None = None,
        text: str | None = None,
    ) -> SourceCharacterization:
        """Register a source with provided phrases or extracted ones.

        Non-text sources need provided phrases; a text source with nothing
        extractable cannot be characterized either.
        """
        if descriptor.source_id in self._descriptors:
            raise DuplicateSource(f"source {descriptor.source_id!r} already registered")
        provided = parse_phrases(phrases, self.config) if phrases else frozenset()
        if provided:
            char = SourceCharacterization(descriptor.source_id, provided, "provided")
        else:
            if descriptor.media_type != "text":
                raise NoCharacterization(
                    f"non-text source {descriptor.source_id!r} needs provided phrases"
                )
            extracted = extract(text or "", self.config)
            if not extracted:
                raise NoCharacterization(
                    f"nothing extractable from source {descriptor.source_id!r}"
                )
            char = SourceCharacterization(descriptor.source_id, extracted, "extracted")
        self._descriptors[descriptor.source_id] = descriptor
        self._characterizations[descriptor.source_id] = char
        return char

    def restore(self, descriptor: SourceDescriptor, char: SourceCharacterization) -> None:
        """Re-attach a persisted characterization verbatim (snapshot load)."""
        if descriptor.source_id in self._descriptors:
            raise DuplicateSource(f"source {descriptor.source_id!r} already registered")
        self._descriptors[descriptor.source_id] = descriptor
        self._characterizations[descriptor.source_id] = char

    def remove(self, source_id: str) -> SourceDescriptor:
        descriptor = self.descriptor(source_id)
        del self._descriptors[source_id]
        del self._characterizations[source_id]
        return descriptor


@dataclass
class IngestReport:
    registered: int = 0
    failed: int = 0
    phrase_counts: dict[str, int] = field(default_factory=dict)
    errors: list[tuple[str, str]] = field(default_factory=list)


def read_corpus(path: str | Path) -> Iterator[dict]:
    """Yield document records from a corpus path.

    A directory is read as plain-text files (file stem = source id); a
    file is read as JSON lines with source_id/uri/title/text fields and
    optional media_type/phrases.
    """
    path = Path(path)
    if path.is_dir():
        for f in sorted(path.glob("*.txt")):
            yield {
                "source_id": f.stem,
                "uri": f.as_uri(),
                "title": f.stem,
                "text": f.read_text(encoding="utf-8"),
            }
        return
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise LithoidError(f"{path}:{lineno}: bad corpus record: {exc}") from exc
            yield record
