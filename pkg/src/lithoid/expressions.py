"""Index expressions: structured noun phrases and their containment algebra.

An index expression is a rooted ordered tree: a head term plus children
attached through connector words ("resurrection of jesus"). This module
owns parsing, canonical linearization, the subexpression set, and the
containment partial order that the hyperindex is built on.

Canonical phrase syntax (the wire format used everywhere else): lowercase
terms and connectors separated by single spaces; a child is parenthesized
unless it is both a leaf and the last child of its parent. That bracketing
rule is exactly what makes ``parse(linearize(e)) == e`` hold under the
nearest-attachment rule for flat input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator

from .errors import (
    AdjacentTerms,
    DanglingConnector,
    EmptyPhrase,
    InvalidTerm,
    UnbalancedParens,
)

__all__ = [
    "DEFAULT_CONNECTORS",
    "DEFAULT_STOPWORDS",
    "Grammar",
    "DEFAULT_GRAMMAR",
    "IndexExpression",
    "parse",
    "linearize",
    "size",
    "terms",
    "subexpressions",
    "contains",
    "covers",
]

# Closed connector table; order doubles as the canonical child sort order.
DEFAULT_CONNECTORS: tuple[str, ...] = (
    "of",
    "by",
    "in",
    "for",
    "on",
    "with",
    "about",
    "to",
    "and",
)

# Small English stopword list. Deliberately disjoint from the connector
# table: words there are connectors, not noise.
DEFAULT_STOPWORDS: frozenset[str] = frozenset(
    """
    a an the this that these those some any each every no not nor
    i me my mine we us our ours you your yours he him his she her hers
    it its they them their theirs who whom whose which what
    is am are was were be been being do does did done
    have has had having will would shall should can could may might must
    as at but if or because until while from up down out off over under
    again further then once here there when where why how
    all both few more most other own same so such than too very just
    s t don
    """.split()
)

_TERM_RE = re.compile(r"^[a-z0-9](?:[a-z0-9-]*[a-z0-9])?$")
_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")

# Fixed precedence used to sort children canonically: default-table order
# first, any custom connector after, alphabetically. Keeping this fixed
# (rather than per-grammar) makes canonical form intrinsic to the tree.
_CONNECTOR_PRECEDENCE = {c: i for i, c in enumerate(DEFAULT_CONNECTORS)}


def _light_stem(token: str) -> str:
    """Crude plural/suffix stripper, used only when Grammar.stem is on."""
    if token.endswith("ies") and len(token) > 4:
        return token[:-3] + "y"
    if token.endswith("sses"):
        return token[:-2]
    if token.endswith("ing") and len(token) > 5:
        return token[:-3]
    if token.endswith("ed") and len(token) > 4:
        return token[:-2]
    if token.endswith("s") and not token.endswith("ss") and len(token) > 3:
        return token[:-1]
    return token


@dataclass(frozen=True)
class Grammar:
    """Tokenization tables for parsing and extraction.

    connectors: closed table of linking words; stopwords: tokens dropped
    before parsing; stem: fold terms with a light suffix stripper.
    """

    connectors: tuple[str, ...] = DEFAULT_CONNECTORS
    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    stem: bool = False

    def __post_init__(self) -> None:
        overlap = set(self.connectors) & self.stopwords
        if overlap:
            raise ValueError(f"connectors and stopwords overlap: {sorted(overlap)}")

    def is_connector(self, token: str) -> bool:
        return token in self.connectors

    def is_stopword(self, token: str) -> bool:
        return token in self.stopwords

    def is_term_token(self, token: str) -> bool:
        return (
            _TERM_RE.match(token) is not None
            and token not in self.connectors
            and token not in self.stopwords
        )

    def normalize_term(self, token: str) -> str:
        return _light_stem(token) if self.stem else token


DEFAULT_GRAMMAR = Grammar()


class IndexExpression:
    """Immutable canonical index-expression tree.

    Do not mutate; construct through :func:`parse` or :meth:`make`, which
    put children in canonical order and drop duplicate (connector, subtree)
    pairs. Direct construction trusts its arguments.
    """

    __slots__ = ("head", "children", "_hash", "_size", "_phrase", "_terms")

    head: str
    children: tuple[tuple[str, "IndexExpression"], ...]

    def __init__(self, head: str, children: tuple[tuple[str, "IndexExpression"], ...] = ()):
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_size", None)
        object.__setattr__(self, "_phrase", None)
        object.__setattr__(self, "_terms", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("IndexExpression is immutable")

    @classmethod
    def make(
        cls, head: str, children: Iterable[tuple[str, "IndexExpression"]] = ()
    ) -> "IndexExpression":
        """Build a node, canonicalizing child order and deduplicating."""
        ordered = sorted(set(children), key=_child_key)
        return cls(head, tuple(ordered))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, IndexExpression):
            return NotImplemented
        return self.head == other.head and self.children == other.children

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.head, self.children))
            object.__setattr__(self, "_hash", h)
        return h

    def __lt__(self, other: "IndexExpression") -> bool:
        return linearize(self) < linearize(other)

    def __str__(self) -> str:
        return linearize(self)

    def __repr__(self) -> str:
        return f"IndexExpression({linearize(self)!r})"


def _child_key(pair: tuple[str, IndexExpression]) -> tuple[int, str, str]:
    connector, sub = pair
    return (_CONNECTOR_PRECEDENCE.get(connector, len(DEFAULT_CONNECTORS)), connector, linearize(sub))


def linearize(e: IndexExpression) -> str:
    """Canonical phrase string; inverse of :func:`parse` on canonical trees."""
    phrase = e._phrase
    if phrase is not None:
        return phrase
    parts = [e.head]
    last = len(e.children) - 1
    for i, (connector, sub) in enumerate(e.children):
        parts.append(connector)
        if sub.is_leaf and i == last:
            parts.append(sub.head)
        else:
            parts.append("(" + linearize(sub) + ")")
    phrase = " ".join(parts)
    object.__setattr__(e, "_phrase", phrase)
    return phrase


def size(e: IndexExpression) -> int:
    """Number of term nodes in the tree."""
    n = e._size
    if n is None:
        n = 1 + sum(size(sub) for _, sub in e.children)
        object.__setattr__(e, "_size", n)
    return n


def terms(e: IndexExpression) -> frozenset[str]:
    """Set of term texts occurring in the tree."""
    t = e._terms
    if t is None:
        t = frozenset({e.head}).union(*(terms(sub) for _, sub in e.children)) if e.children else frozenset({e.head})
        object.__setattr__(e, "_terms", t)
    return t


# --- parsing ---------------------------------------------------------------


def _tokenize(text: str, grammar: Grammar) -> list[str]:
    tokens: list[str] = []
    for raw in _TOKEN_RE.findall(text):
        if raw in ("(", ")"):
            tokens.append(raw)
            continue
        token = raw.lower()
        if grammar.is_stopword(token):
            continue
        if grammar.is_connector(token):
            tokens.append(token)
            continue
        token = grammar.normalize_term(token)
        if not _TERM_RE.match(token):
            raise InvalidTerm(f"not a valid term or connector: {raw!r}")
        if grammar.is_stopword(token) or grammar.is_connector(token):
            # stemming may fold into a reserved word; treat like the original
            continue
        tokens.append(token)
    return tokens


class _Builder:
    __slots__ = ("head", "children")

    def __init__(self, head: str):
        self.head = head
        self.children: list[tuple[str, "_Builder"]] = []

    def freeze(self) -> IndexExpression:
        return IndexExpression.make(
            self.head, ((c, sub.freeze()) for c, sub in self.children)
        )


def _parse_operand(tokens: list[str], i: int, grammar: Grammar) -> tuple[_Builder, bool, int]:
    """Parse one operand; returns (node, sealed, next index)."""
    tok = tokens[i]
    if tok == "(":
        node, i = _parse_expr(tokens, i + 1, grammar, in_group=True)
        if i >= len(tokens) or tokens[i] != ")":
            raise UnbalancedParens("missing closing parenthesis")
        return node, True, i + 1
    if tok == ")":
        raise UnbalancedParens("unexpected closing parenthesis")
    if grammar.is_connector(tok):
        raise DanglingConnector(f"connector {tok!r} where a term was expected")
    return _Builder(tok), False, i + 1


def _parse_expr(tokens: list[str], i: int, grammar: Grammar, in_group: bool) -> tuple[_Builder, int]:
    if i >= len(tokens) or tokens[i] == ")":
        raise EmptyPhrase("no terms in phrase")
    root, sealed, i = _parse_operand(tokens, i, grammar)
    # Nearest attachment: new connector phrases land on the most recent
    # unsealed (bare-term) operand; a parenthesized operand is sealed, so
    # attachment stays with its parent.
    attach = root
    while i < len(tokens):
        tok = tokens[i]
        if tok == ")":
            if not in_group:
                raise UnbalancedParens("unexpected closing parenthesis")
            return root, i
        if not grammar.is_connector(tok):
            raise AdjacentTerms(f"expected a connector before {tok!r}")
        connector = tok
        i += 1
        if i >= len(tokens) or tokens[i] == ")" or grammar.is_connector(tokens[i]):
            raise DanglingConnector(f"connector {connector!r} has no following term")
        node, sealed, i = _parse_operand(tokens, i, grammar)
        attach.children.append((connector, node))
        if not sealed:
            attach = node
    if in_group:
        raise UnbalancedParens("missing closing parenthesis")
    return root, i


def parse(text: str, grammar: Grammar = DEFAULT_GRAMMAR) -> IndexExpression:
    """Parse a phrase into a canonical index expression.

    Flat input attaches each connector phrase to the nearest preceding
    bare term (right-branching); parentheses group explicitly and seal the
    group against further attachment.
    """
    tokens = _tokenize(text, grammar)
    if not tokens:
        raise EmptyPhrase(f"no terms in {text!r}")
    root, end = _parse_expr(tokens, 0, grammar, in_group=False)
    if end != len(tokens):  # pragma: no cover - defensive; loop consumes all
        raise UnbalancedParens("trailing tokens after phrase")
    return root.freeze()


# --- subexpressions and containment ----------------------------------------


@lru_cache(maxsize=65536)
def _reductions(e: IndexExpression) -> frozenset[IndexExpression]:
    """All expressions obtained from e by dropping child subtrees.

    The root is kept; any subset of children is kept, each kept child
    reduced the same way (its root preserved).
    """
    if e.is_leaf:
        return frozenset({e})
    per_child = [
        tuple((connector, r) for r in _reductions(sub)) for connector, sub in e.children
    ]
    out: set[IndexExpression] = set()
    indices = range(len(per_child))
    for k in range(len(per_child) + 1):
        for keep in combinations(indices, k):
            for combo in product(*(per_child[i] for i in keep)):
                out.add(IndexExpression.make(e.head, combo))
    return frozenset(out)


@lru_cache(maxsize=65536)
def subexpressions(e: IndexExpression) -> frozenset[IndexExpression]:
    """The set Sub(e): reductions rooted at every node of e. e is a member."""
    out = set(_reductions(e))
    for _, sub in e.children:
        out |= subexpressions(sub)
    return frozenset(out)


def contains(outer: IndexExpression, inner: IndexExpression) -> bool:
    """True iff inner is a subexpression of outer (canonical comparison)."""
    if outer is inner or outer == inner:
        return True
    if size(inner) > size(outer) or not terms(inner) <= terms(outer):
        return False
    return inner in subexpressions(outer)


def covers(larger: IndexExpression, smaller: IndexExpression) -> bool:
    """True iff larger contains smaller and is exactly one term bigger."""
    return size(larger) == size(smaller) + 1 and contains(larger, smaller)


def walk(e: IndexExpression) -> Iterator[IndexExpression]:
    """Yield every node of the tree, pre-order."""
    yield e
    for _, sub in e.children:
        yield from walk(sub)
