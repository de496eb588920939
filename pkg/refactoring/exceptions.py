from knowledge_base.exceptions import KnowledgeBaseError


class StateSpaceExceededError(KnowledgeBaseError):
    """Exhaustive enumeration would visit more assignments than allowed."""

    def __init__(self, size: int, bound: int):
        super().__init__(f"State space of {size} assignments exceeds the bound of {bound}")
        self.size = size
        self.bound = bound


class UnknownFormError(KnowledgeBaseError):
    """A refactoring form key such as 'requires/4' names no catalog entry."""
