from typing import Optional

from knowledge_base.exceptions import KnowledgeBaseError


class NavigationLogError(KnowledgeBaseError):
    """A navigation log row is malformed or contradicts an earlier row."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
        self.message = message


class EmptySessionError(KnowledgeBaseError):
    """Neighbors were requested for a session that has not visited anything yet."""


class NoCandidatesError(KnowledgeBaseError):
    """No neighbor has an unvisited constraint left to recommend."""
