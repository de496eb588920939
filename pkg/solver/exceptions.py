from knowledge_base.exceptions import KnowledgeBaseError


class ConflictVerificationError(KnowledgeBaseError):
    """A computed conflict failed its inconsistency or minimality check."""
