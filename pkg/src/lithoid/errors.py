"""Engine error hierarchy.

Every error carries a stable ``code`` (its class name) and an HTTP status
used by the JSON API layer; library callers just catch the classes.
"""


class LithoidError(Exception):
    http_status = 400

    @property
    def code(self) -> str:
        return type(self).__name__


class PhraseSyntaxError(LithoidError):
    """Base for phrase parsing failures."""


class EmptyPhrase(PhraseSyntaxError):
    pass


class DanglingConnector(PhraseSyntaxError):
    pass


class UnbalancedParens(PhraseSyntaxError):
    pass


class InvalidTerm(PhraseSyntaxError):
    pass


class AdjacentTerms(PhraseSyntaxError):
    pass


class PhraseTooLong(LithoidError):
    pass


class UnknownSource(LithoidError):
    http_status = 404


class UnknownNode(LithoidError):
    http_status = 404


class UnknownSession(LithoidError):
    http_status = 404


class DuplicateSource(LithoidError):
    http_status = 409


class IllegalMove(LithoidError):
    http_status = 409


class StaleFocus(LithoidError):
    http_status = 409


class NoCharacterization(LithoidError):
    pass


class NoFocus(LithoidError):
    pass


class EmptyRequest(LithoidError):
    pass


class ConfigError(LithoidError):
    pass
