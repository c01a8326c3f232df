"""Shared test helpers: random expression trees and brute-force oracles.

The brute-force subexpression oracle enumerates node subsets directly
(pick a root node, keep any upward-closed set of its descendants) and is
kept independent of the recursive construction in the library.
"""

from __future__ import annotations

import random
from itertools import combinations

from hypothesis import strategies as st

from lithoid.expressions import IndexExpression

VOCAB = ("angel", "beach", "coral", "dune", "ember", "fjord", "grove", "harbor")
GEN_CONNECTORS = ("of", "by", "in", "with")


def random_expression(
    rng: random.Random,
    max_size: int,
    vocab=VOCAB,
    distinct: bool = False,
) -> IndexExpression:
    """Random canonical tree with at most max_size terms.

    Duplicate-child collapse during canonicalization may shrink the tree,
    so the bound is an upper bound, not an exact size.
    """
    n = rng.randint(1, max_size)
    heads = rng.sample(list(vocab), n) if distinct else [rng.choice(vocab) for _ in range(n)]
    return _build(rng, heads)


def _build(rng: random.Random, heads: list[str]) -> IndexExpression:
    head, rest = heads[0], list(heads[1:])
    children = []
    while rest:
        take = rng.randint(1, len(rest))
        children.append((rng.choice(GEN_CONNECTORS), _build(rng, rest[:take])))
        rest = rest[take:]
    return IndexExpression.make(head, children)


@st.composite
def index_expressions(draw, max_size: int = 6, distinct: bool = False) -> IndexExpression:
    seed = draw(st.integers(0, 2**32 - 1))
    return random_expression(random.Random(seed), max_size, distinct=distinct)


def _paths(e: IndexExpression, prefix=()):
    yield prefix
    for i, (_, sub) in enumerate(e.children):
        yield from _paths(sub, prefix + (i,))


def _at(e: IndexExpression, path) -> IndexExpression:
    for i in path:
        e = e.children[i][1]
    return e


def brute_subexpressions(e: IndexExpression) -> set[IndexExpression]:
    """All connected, root-attachment-preserving node-subset subtrees."""
    all_paths = list(_paths(e))
    out: set[IndexExpression] = set()
    for root in all_paths:
        descendants = [p for p in all_paths if len(p) > len(root) and p[: len(root)] == root]
        for r in range(len(descendants) + 1):
            for keep in combinations(descendants, r):
                kept = set(keep)
                if all(p[:-1] == root or p[:-1] in kept for p in kept):
                    out.add(_rebuild(e, root, kept))
    return out


def _rebuild(e: IndexExpression, path, kept) -> IndexExpression:
    node = _at(e, path)
    children = []
    for i, (connector, _) in enumerate(node.children):
        child_path = path + (i,)
        if child_path in kept:
            children.append((connector, _rebuild(e, child_path, kept)))
    return IndexExpression.make(node.head, children)
