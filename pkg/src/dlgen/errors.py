"""Exception types shared across the package.

Dataset loading raises ParseError/ValidationError. Everything a dialog
session can reject derives from EngineError, which carries a stable
``code`` (the class name) plus a human-readable ``detail`` and optional
structured ``extras`` so transport layers can serialize failures
without string matching.
"""
from __future__ import annotations


class DatasetError(Exception):
    """Base for problems with a collection file."""


class ParseError(DatasetError):
    """The file is not well-formed (bad JSON, wrong shapes, unknown keys)."""


class ValidationError(DatasetError):
    """The file parsed but violates a collection constraint."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{message} (at {location})" if location else message)


class EngineError(Exception):
    """Base for rejections that leave dialog state unchanged."""

    def __init__(self, detail: str = "", **extras):
        self.code = type(self).__name__
        self.detail = detail or self.code
        self.extras = dict(extras)
        super().__init__(self.detail)


class EmptyResult(EngineError):
    def __init__(self, token: str):
        super().__init__(f"no path contains '{token}'", token=token)


class NoMatch(EngineError):
    def __init__(self, token: str):
        super().__init__(f"'{token}' matches nothing that remains", token=token)
        self.token = token


class EmptyUtterance(EngineError):
    def __init__(self):
        super().__init__("utterance contains no tokens")


class NoSuchChild(EngineError):
    def __init__(self, label: str):
        super().__init__(f"focus node has no child labeled '{label}'", label=label)


class DialogTerminated(EngineError):
    def __init__(self):
        super().__init__("dialog already terminated; only reset is accepted")


class NotFaceted(EngineError):
    def __init__(self):
        super().__init__("collection declares no facets")


class UnknownFacet(EngineError):
    def __init__(self, name: str):
        super().__init__(f"unknown facet '{name}'", facet=name)


class DuplicateFacet(EngineError):
    def __init__(self, name: str):
        super().__init__(f"facet '{name}' appears more than once", facet=name)


class EmptyFacetOrder(EngineError):
    def __init__(self):
        super().__init__("facet order must name at least one facet")


class EmptyDocumentSet(EngineError):
    def __init__(self):
        super().__init__("cannot pivot an empty document set")


class UnknownAction(EngineError):
    def __init__(self, action: str):
        super().__init__(f"unknown action '{action}'", action=action)


class BadArgument(EngineError):
    def __init__(self, detail: str):
        super().__init__(detail)


class OTMLError(Exception):
    """Base for problems with an interface descriptor."""


class OTMLParseError(OTMLError):
    """Malformed descriptor XML; carries line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownElement(OTMLError):
    pass


class UnknownTechnique(OTMLError):
    pass


class UnknownWidget(OTMLError):
    pass


class OTMLValidationError(OTMLError):
    pass


class CapabilityError(OTMLError):
    """A descriptor asks for a technique the collection cannot support."""

    def __init__(self, findings):
        self.findings = list(findings)
        super().__init__("; ".join(f.message for f in self.findings))
