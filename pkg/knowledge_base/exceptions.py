"""
Exceptions raised by the knowledge-base model and parser.
Every kbtool exception derives from KnowledgeBaseError.
"""

from enum import Enum
from typing import Iterable, List


class KnowledgeBaseError(ValueError):
    """Base class for all kbtool domain errors."""


class InvalidKnowledgeBaseError(KnowledgeBaseError):
    """A knowledge base violates one of its structural invariants."""


class UnboundVariableError(KnowledgeBaseError):
    """An expression was evaluated under an assignment missing one of its variables."""

    def __init__(self, variable: str):
        super().__init__(f"Variable '{variable}' is not bound by the assignment")
        self.variable = variable


class ParseErrorKind(str, Enum):
    SYNTAX = 'syntax'
    UNKNOWN_VARIABLE = 'unknown-variable'
    DUPLICATE_ID = 'duplicate-id'
    EMPTY_DOMAIN = 'empty-domain'
    OVERSIZED_DOMAIN = 'oversized-domain'


class ParseError(KnowledgeBaseError):
    """A single problem found in knowledge-base source text."""

    def __init__(self, line: int, column: int, message: str, kind: ParseErrorKind = ParseErrorKind.SYNTAX):
        super().__init__(f"{line}:{column}: {kind.value}: {message}")
        self.line = line
        self.column = column
        self.message = message
        self.kind = kind

    def to_dict(self) -> dict:
        return {
            'line': self.line,
            'column': self.column,
            'message': self.message,
            'kind': self.kind.value,
        }


class ParseErrors(KnowledgeBaseError):
    """All problems found in one pass over a source text, in source order."""

    def __init__(self, errors: Iterable[ParseError]):
        self.errors: List[ParseError] = sorted(errors, key=lambda e: (e.line, e.column))
        super().__init__('\n'.join(str(error) for error in self.errors))

    @property
    def kinds(self) -> List[ParseErrorKind]:
        return [error.kind for error in self.errors]
