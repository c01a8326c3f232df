"""The lithoid: union of per-phrase subexpression lattices.

Nodes are canonical index expressions; edges are one-term covering steps.
A virtual start node of size 0 sits below all elementary (size-1) terms.
Nodes exist only while at least one characterization supports them, so
navigation always stays grounded in retrievable sources.

Concurrency: single writer, many readers. Mutations must be serialized by
the caller (the service layer holds a lock); read methods never mutate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownNode, UnknownSource
from .expressions import IndexExpression, contains, linearize, size, subexpressions

__all__ = ["START", "Start", "LithoidNode", "Lithoid"]


class Start:
    """Virtual size-0 start node; its refinements are all elementary terms."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "START"


START = Start()


@dataclass
class LithoidNode:
    """A stored expression plus the sources and characterizations behind it.

    support counts (source, phrase) characterization pairs whose phrase
    contains the expression; postings is the set of source ids among them.
    """

    expr: IndexExpression
    postings: set[str] = field(default_factory=set)
    support: int = 0

    @property
    def phrase(self) -> str:
        return linearize(self.expr)


def _default_order(nodes) -> list[LithoidNode]:
    return sorted(nodes, key=lambda n: (-n.support, n.phrase))


class Lithoid:
    def __init__(self) -> None:
        self._nodes: dict[IndexExpression, LithoidNode] = {}
        self._up: dict[IndexExpression, set[IndexExpression]] = {}
        self._down: dict[IndexExpression, set[IndexExpression]] = {}
        self._sources: set[str] = set()
        self._phrases: dict[str, set[IndexExpression]] = {}

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, expr: IndexExpression) -> bool:
        return expr in self._nodes

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lithoid):
            return NotImplemented
        return (
            {e: (n.support, frozenset(n.postings)) for e, n in self._nodes.items()}
            == {e: (n.support, frozenset(n.postings)) for e, n in other._nodes.items()}
            and self._up == other._up
            and self._phrases == other._phrases
            and self._sources == other._sources
        )

    @property
    def sources(self) -> frozenset[str]:
        return frozenset(self._sources)

    def phrases_of(self, source_id: str) -> frozenset[IndexExpression]:
        return frozenset(self._phrases.get(source_id, ()))

    def nodes(self) -> list[LithoidNode]:
        return list(self._nodes.values())

    def add_source(self, source_id: str) -> None:
        self._sources.add(source_id)

    def insert_characterization(self, source_id: str, expr: IndexExpression) -> None:
        """Store every subexpression of expr, supported by (source, expr).

        Idempotent for a repeated (source_id, expr) pair.
        """
        if source_id not in self._sources:
            raise UnknownSource(f"source {source_id!r} is not registered")
        seen = self._phrases.setdefault(source_id, set())
        if expr in seen:
            return
        seen.add(expr)
        members = subexpressions(expr)
        for s in members:
            node = self._nodes.get(s)
            if node is None:
                node = self._nodes[s] = LithoidNode(s)
                self._up[s] = set()
                self._down[s] = set()
            node.postings.add(source_id)
            node.support += 1
        # Covering edges only ever change between members of Sub(expr):
        # the stored set is closed under subexpressions, so a new node
        # cannot have a neighbor outside it.
        by_size: dict[int, list[IndexExpression]] = {}
        for s in members:
            by_size.setdefault(size(s), []).append(s)
        for k, smaller in by_size.items():
            for y in by_size.get(k + 1, ()):
                bigger_subs = subexpressions(y)
                for x in smaller:
                    if x in bigger_subs:
                        self._up[x].add(y)
                        self._down[y].add(x)

    def remove_source(self, source_id: str) -> None:
        """Purge a source; nodes whose support drops to zero disappear."""
        if source_id not in self._sources:
            raise UnknownSource(f"source {source_id!r} is not registered")
        self._sources.discard(source_id)
        for expr in self._phrases.pop(source_id, set()):
            for s in subexpressions(expr):
                node = self._nodes.get(s)
                if node is None:
                    continue
                node.support -= 1
                node.postings.discard(source_id)
                if node.support <= 0:
                    self._delete_node(s)

    def _delete_node(self, s: IndexExpression) -> None:
        del self._nodes[s]
        for up in self._up.pop(s, ()):
            self._down[up].discard(s)
        for down in self._down.pop(s, ()):
            self._up[down].discard(s)

    def lookup(self, expr: IndexExpression) -> LithoidNode | None:
        return self._nodes.get(expr)

    def start_node(self, order=_default_order) -> list[LithoidNode]:
        """All elementary (size-1) nodes, ranked."""
        return order(n for n in self._nodes.values() if size(n.expr) == 1)

    def refinements(self, focus: IndexExpression | Start, order=_default_order) -> list[LithoidNode]:
        """Stored nodes covering the focus (one term larger)."""
        if isinstance(focus, Start):
            return self.start_node(order)
        if focus not in self._nodes:
            raise UnknownNode(f"no node {linearize(focus)!r}")
        return order(self._nodes[e] for e in self._up[focus])

    def beam_down(self, focus: IndexExpression, order=_default_order) -> list[LithoidNode | Start]:
        """Stored nodes the focus covers; for a size-1 focus, the start node."""
        if focus not in self._nodes:
            raise UnknownNode(f"no node {linearize(focus)!r}")
        if size(focus) == 1:
            return [START]
        return order(self._nodes[e] for e in self._down[focus])

    def check_edges(self) -> bool:
        """Verify edge completeness; test helper, O(n^2)."""
        exprs = list(self._nodes)
        expected = set()
        for x in exprs:
            for y in exprs:
                if size(y) == size(x) + 1 and contains(y, x):
                    expected.add((x, y))
        actual = {(x, y) for x, ups in self._up.items() for y in ups}
        return expected == actual
