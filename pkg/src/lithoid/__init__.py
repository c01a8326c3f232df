"""Query-by-navigation information discovery engine.

Characterizes text sources as index expressions, assembles them into a
navigable hyperindex (the lithoid), supports interactive request
refinement with preference-aware ranking and relevance feedback, and
selects matching sources by containment.
"""

from .expressions import (
    DEFAULT_CONNECTORS,
    DEFAULT_GRAMMAR,
    DEFAULT_STOPWORDS,
    Grammar,
    IndexExpression,
    contains,
    covers,
    linearize,
    parse,
    size,
    subexpressions,
    terms,
)

__all__ = [
    "DEFAULT_CONNECTORS",
    "DEFAULT_GRAMMAR",
    "DEFAULT_STOPWORDS",
    "Grammar",
    "IndexExpression",
    "contains",
    "covers",
    "linearize",
    "parse",
    "size",
    "subexpressions",
    "terms",
]

__version__ = "0.1.0"
