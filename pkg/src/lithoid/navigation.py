"""Query-by-navigation sessions over the lithoid.

A session tracks the focus, the trail of visited nodes, collected clues
(the request under construction), and a preference profile learned from
navigation behaviour and relevance feedback. Preferences only ever grow:
users can recognize relevance, but marking a source not-relevant never
produces negative evidence — it only keeps that source out of later
result lists.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .characterize import Registry
from .errors import IllegalMove, NoFocus, StaleFocus, UnknownSource
from .expressions import IndexExpression, linearize, terms
from .hyperindex import START, Lithoid, Start

__all__ = [
    "PreferenceProfile",
    "Alternative",
    "NavigationSession",
    "begin_session",
]

REFINE = "refine"
BEAM_DOWN = "beam_down"


@dataclass
class PreferenceProfile:
    """Term and term-pair weights; absent keys weigh zero."""

    term_weights: dict[str, float] = field(default_factory=dict)
    pair_weights: dict[frozenset[str], float] = field(default_factory=dict)

    def term_weight(self, term: str) -> float:
        return self.term_weights.get(term, 0.0)

    def pair_weight(self, a: str, b: str) -> float:
        return self.pair_weights.get(frozenset((a, b)), 0.0)

    def bump_term(self, term: str, delta: float) -> None:
        self.term_weights[term] = self.term_weights.get(term, 0.0) + delta

    def bump_pair(self, a: str, b: str, delta: float) -> None:
        key = frozenset((a, b))
        self.pair_weights[key] = self.pair_weights.get(key, 0.0) + delta

    def preference(self, expr: IndexExpression, focus_terms: frozenset[str]) -> float:
        """Affinity of expr given the current focus terms."""
        expr_terms = terms(expr)
        score = sum(self.term_weight(t) for t in expr_terms)
        for t in focus_terms:
            for u in expr_terms - focus_terms:
                score += self.pair_weight(t, u)
        return score

    def to_records(self) -> list[tuple[str, str, float]]:
        records = [("term", t, w) for t, w in sorted(self.term_weights.items())]
        records += [
            ("pair", " ".join(sorted(k)), w)
            for k, w in sorted(self.pair_weights.items(), key=lambda kv: sorted(kv[0]))
        ]
        return records

    @classmethod
    def from_records(cls, records) -> "PreferenceProfile":
        profile = cls()
        for kind, key, weight in records:
            weight = float(weight)
            if weight < 0:
                raise ValueError("preference weights must be >= 0")
            if kind == "term":
                profile.bump_term(key, weight)
            elif kind == "pair":
                a, b = key.split()
                profile.bump_pair(a, b, weight)
            else:
                raise ValueError(f"unknown profile record kind {kind!r}")
        return profile

    def save(self, path: str | Path) -> None:
        lines = [f"{kind}\t{key}\t{weight}" for kind, key, weight in self.to_records()]
        Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "PreferenceProfile":
        records = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            kind, key, weight = line.split("\t")
            records.append((kind, key, float(weight)))
        return cls.from_records(records)


@dataclass(frozen=True)
class Alternative:
    """One way to continue navigating from the current focus."""

    expr: IndexExpression | Start
    direction: str  # REFINE or BEAM_DOWN
    score: float
    support: int

    @property
    def phrase(self) -> str:
        return "" if isinstance(self.expr, Start) else linearize(self.expr)


class NavigationSession:
    def __init__(
        self,
        lithoid: Lithoid,
        registry: Registry | None = None,
        *,
        lambda_pref: float = 1.0,
        eta_nav: float = 0.1,
        eta_fb: float = 1.0,
        profile: PreferenceProfile | None = None,
        session_id: str | None = None,
    ):
        self.session_id = session_id or uuid.uuid4().hex
        self.lithoid = lithoid
        self.registry = registry
        self.lambda_pref = lambda_pref
        self.eta_nav = eta_nav
        self.eta_fb = eta_fb
        self.profile = profile or PreferenceProfile()
        self.focus: IndexExpression | Start = START
        self.trail: list[IndexExpression | Start] = [START]
        self.clues: set[IndexExpression] = set()
        self.feedback: dict[str, bool] = {}
        # one logical owner per session; concurrent callers serialize here
        self.lock = threading.RLock()

    # -- read side -----------------------------------------------------

    def _score(self, expr: IndexExpression, focus_terms: frozenset[str], support: int) -> float:
        return support + self.lambda_pref * self.profile.preference(expr, focus_terms)

    def alternatives(self) -> list[Alternative]:
        """Refinements then beam-downs, each ranked by support + preference."""
        focus = self.focus
        if isinstance(focus, Start):
            refine_nodes = self.lithoid.start_node()
            beam_entries: list = []
        else:
            if self.lithoid.lookup(focus) is None:
                raise StaleFocus(f"focus {linearize(focus)!r} is no longer indexed")
            refine_nodes = self.lithoid.refinements(focus)
            beam_entries = self.lithoid.beam_down(focus)
        focus_terms = frozenset() if isinstance(focus, Start) else terms(focus)

        def ranked(entries, direction):
            alts = []
            for entry in entries:
                if isinstance(entry, Start):
                    alts.append(Alternative(START, direction, 0.0, 0))
                else:
                    score = self._score(entry.expr, focus_terms, entry.support)
                    alts.append(Alternative(entry.expr, direction, score, entry.support))
            return sorted(alts, key=lambda a: (-a.score, a.phrase))

        return ranked(refine_nodes, REFINE) + ranked(beam_entries, BEAM_DOWN)

    # -- mutations (serialize per session) -------------------------------

    def move(self, target: IndexExpression | Start) -> None:
        """Traverse one edge (or jump back to start)."""
        if not isinstance(target, Start):
            if target not in {a.expr for a in self.alternatives()}:
                raise IllegalMove(f"{linearize(target)!r} is not adjacent to the focus")
        self.focus = target
        self.trail.append(target)
        if not isinstance(target, Start):
            for t in terms(target):
                self.profile.bump_term(t, self.eta_nav)

    def add_clue(self) -> None:
        if isinstance(self.focus, Start):
            raise NoFocus("cannot collect the start node as a clue")
        self.clues.add(self.focus)

    def remove_clue(self, expr: IndexExpression) -> None:
        self.clues.discard(expr)

    def record_feedback(self, source_id: str, relevant: bool) -> None:
        """Store a relevance judgment; relevant sources grow the profile."""
        if self.registry is None or source_id not in self.registry:
            raise UnknownSource(f"source {source_id!r} is not registered")
        self.feedback[source_id] = relevant
        if not relevant:
            return
        for phrase in self.registry.characterization(source_id).phrases:
            ts = sorted(terms(phrase))
            for t in ts:
                self.profile.bump_term(t, self.eta_fb)
            for i, t in enumerate(ts):
                for u in ts[i + 1 :]:
                    self.profile.bump_pair(t, u, self.eta_fb)

    def excluded_sources(self) -> set[str]:
        """Sources judged not relevant; kept out of later result lists."""
        return {s for s, ok in self.feedback.items() if not ok}

    def to_dict(self) -> dict:
        def key(e):
            return None if isinstance(e, Start) else linearize(e)

        return {
            "session_id": self.session_id,
            "focus": key(self.focus),
            "trail": [key(e) for e in self.trail],
            "clues": sorted(linearize(c) for c in self.clues),
            "feedback": dict(sorted(self.feedback.items())),
        }


def begin_session(
    lithoid: Lithoid,
    registry: Registry | None = None,
    **knobs,
) -> NavigationSession:
    """Open a fresh session focused on the start node."""
    return NavigationSession(lithoid, registry, **knobs)
