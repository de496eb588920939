from knowledge_base.exceptions import KnowledgeBaseError


class UndefinedSimilarityError(KnowledgeBaseError):
    """Similarity of two constraints that reference no variables at all."""


class MatrixFormatError(KnowledgeBaseError):
    """A similarity matrix is malformed (shape, symmetry, range or ids)."""


class InvalidClusteringError(KnowledgeBaseError):
    """Invalid k, invalid initial centroids, or no convergence within the iteration cap."""
