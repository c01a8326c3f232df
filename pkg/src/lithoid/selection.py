"""Containment-based source selection with preference-aware ranking.

A clue matches a characterization phrase either by containment (scored by
the specificity ratio: clue size over phrase size) or, failing that, by
term overlap (Jaccard, discounted by w_partial). Sources are ordered by
contained-clue count first, so any containment beats any amount of
partial overlap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characterize import Registry
from .errors import EmptyRequest
from .expressions import IndexExpression, contains, linearize, size, terms
from .navigation import PreferenceProfile

__all__ = ["SelectionParams", "ClueMatch", "RankedSource", "select", "brute_force_select"]

CONTAINED = "contained"
PARTIAL = "partial"


@dataclass(frozen=True)
class SelectionParams:
    w_partial: float = 0.5
    lambda_sel: float = 0.1

    def __post_init__(self) -> None:
        if self.w_partial < 0 or self.lambda_sel < 0:
            raise ValueError("selection weights must be >= 0")


DEFAULT_PARAMS = SelectionParams()


@dataclass(frozen=True)
class ClueMatch:
    clue: IndexExpression
    phrase: IndexExpression
    kind: str  # CONTAINED or PARTIAL
    value: float


@dataclass(frozen=True)
class RankedSource:
    source_id: str
    score: float
    contained_count: int
    matched: tuple[ClueMatch, ...]


def _best_match(clue: IndexExpression, phrases: list[IndexExpression], params: SelectionParams) -> ClueMatch | None:
    """Best phrase for one clue; containment always beats partial overlap."""
    best: ClueMatch | None = None
    clue_terms = terms(clue)
    for phrase in phrases:
        if contains(phrase, clue):
            kind, value = CONTAINED, size(clue) / size(phrase)
        else:
            if params.w_partial == 0:
                continue
            overlap = clue_terms & terms(phrase)
            if not overlap:
                continue
            jaccard = len(overlap) / len(clue_terms | terms(phrase))
            kind, value = PARTIAL, jaccard * params.w_partial
        candidate = ClueMatch(clue, phrase, kind, value)
        if best is None or (candidate.kind == CONTAINED, candidate.value) > (
            best.kind == CONTAINED,
            best.value,
        ):
            best = candidate
    return best


def select(
    registry: Registry,
    clues: set[IndexExpression],
    profile: PreferenceProfile | None = None,
    limit: int | None = None,
    params: SelectionParams = DEFAULT_PARAMS,
    exclude: set[str] | None = None,
) -> list[RankedSource]:
    """Rank sources against the clue set.

    Ordering: contained-clue count desc, score desc, source id asc.
    Sources with no match are omitted; `exclude` drops sources the user
    already judged not relevant.
    """
    if not clues:
        raise EmptyRequest("at least one clue is required")
    profile = profile or PreferenceProfile()
    exclude = exclude or set()
    clue_list = sorted(clues, key=linearize)
    results = []
    for source_id in registry.source_ids():
        if source_id in exclude:
            continue
        phrases = sorted(registry.characterization(source_id).phrases, key=linearize)
        matched = []
        for clue in clue_list:
            best = _best_match(clue, phrases, params)
            if best is not None:
                matched.append(best)
        if not matched:
            continue
        matched_terms = frozenset().union(*(terms(m.phrase) for m in matched))
        bonus = sum(profile.term_weight(t) for t in matched_terms)
        score = sum(m.value for m in matched) + params.lambda_sel * bonus
        if score <= 0:
            continue
        contained_count = sum(1 for m in matched if m.kind == CONTAINED)
        results.append(RankedSource(source_id, score, contained_count, tuple(matched)))
    results.sort(key=lambda r: (-r.contained_count, -r.score, r.source_id))
    return results if limit is None else results[:limit]


def brute_force_select(registry: Registry, clues: set[IndexExpression]) -> set[str]:
    """Oracle: every source with at least one clue contained in a phrase."""
    out = set()
    for source_id in registry.source_ids():
        phrases = registry.characterization(source_id).phrases
        if any(contains(x, c) for c in clues for x in phrases):
            out.add(source_id)
    return out
