"""
Value types for constraint similarity and clustering.
"""

import math
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import MatrixFormatError


class Metric(str, Enum):
    VARIABLE = 'variable'
    OPERATOR = 'operator'
    # Values supplied from outside, e.g. a published table
    EXTERNAL = 'external'


class Strategy(str, Enum):
    """How constraints are grouped for presentation."""
    VARIABLE = 'variable'
    OPERATOR = 'operator'
    RANDOM = 'random'


@dataclass(frozen=True)
class StrategyProfile:
    """
    Observed error rates (percent) of engineers working on a knowledge
    base grouped with this strategy, for finding a solution and for
    finding a minimal conflict.
    """
    strategy: Strategy
    solution_error_rate: Decimal
    conflict_error_rate: Decimal

    def to_dict(self) -> dict:
        return {
            'strategy': self.strategy.value,
            'solution_error_rate': str(self.solution_error_rate),
            'conflict_error_rate': str(self.conflict_error_rate),
        }


STRATEGY_PROFILES = {
    Strategy.VARIABLE: StrategyProfile(Strategy.VARIABLE, Decimal('21.43'), Decimal('42.86')),
    Strategy.OPERATOR: StrategyProfile(Strategy.OPERATOR, Decimal('30.77'), Decimal('53.85')),
    Strategy.RANDOM: StrategyProfile(Strategy.RANDOM, Decimal('38.46'), Decimal('76.92')),
}


def truncate(value: Fraction, places: int = 2) -> Fraction:
    """Floor a similarity to the given number of decimals (1/6 -> 0.16, 3/8 -> 0.37)."""
    scale = 10 ** places
    return Fraction(math.floor(Fraction(value) * scale), scale)


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """
    Symmetric matrix of pairwise constraint similarities in [0, 1].
    Values are exact Fractions held in a numpy object array.
    """
    constraint_ids: Tuple[str, ...]
    values: np.ndarray
    metric: Metric
    _index: Dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        ids = tuple(self.constraint_ids)
        object.__setattr__(self, 'constraint_ids', ids)
        values = np.array(
            [[Fraction(cell) for cell in row] for row in np.asarray(self.values, dtype=object)],
            dtype=object,
        ).reshape(len(ids), len(ids))
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, '_index', {cid: i for i, cid in enumerate(ids)})

        if len(self._index) != len(ids):
            raise MatrixFormatError('Similarity matrix has duplicate constraint ids')
        for i in range(len(ids)):
            for j in range(i + 1):
                if values[i, j] != values[j, i]:
                    raise MatrixFormatError(
                        f"Similarity matrix is not symmetric at ({ids[i]}, {ids[j]})"
                    )
                if not 0 <= values[i, j] <= 1:
                    raise MatrixFormatError(
                        f"Similarity ({ids[i]}, {ids[j]}) = {values[i, j]} is outside [0, 1]"
                    )

    def __eq__(self, other):
        if not isinstance(other, SimilarityMatrix):
            return NotImplemented
        return (
            self.constraint_ids == other.constraint_ids
            and self.metric == other.metric
            and np.array_equal(self.values, other.values)
        )

    def __len__(self) -> int:
        return len(self.constraint_ids)

    def index(self, constraint_id: str) -> int:
        try:
            return self._index[constraint_id]
        except KeyError:
            raise MatrixFormatError(f"Constraint '{constraint_id}' is not in the similarity matrix") from None

    def __contains__(self, constraint_id: str) -> bool:
        return constraint_id in self._index

    def get(self, a: str, b: str) -> Fraction:
        return self.values[self.index(a), self.index(b)]

    def truncated(self, places: int = 2) -> 'SimilarityMatrix':
        return SimilarityMatrix(
            self.constraint_ids,
            np.vectorize(lambda value: truncate(value, places), otypes=[object])(self.values),
            self.metric,
        )

    def reordered(self, constraint_ids: Sequence[str]) -> 'SimilarityMatrix':
        """Same values with rows/columns in the given order (must be a permutation of the ids)."""
        if sorted(constraint_ids) != sorted(self.constraint_ids):
            raise MatrixFormatError('Matrix constraint ids do not match the knowledge base')
        order = [self.index(cid) for cid in constraint_ids]
        return SimilarityMatrix(tuple(constraint_ids), self.values[np.ix_(order, order)], self.metric)

    def to_dict(self) -> dict:
        return {
            'metric': self.metric.value,
            'constraint_ids': list(self.constraint_ids),
            'values': [[str(value) for value in row] for row in self.values],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'SimilarityMatrix':
        return cls(
            tuple(data['constraint_ids']),
            [[Fraction(value) for value in row] for row in data['values']],
            Metric(data['metric']),
        )


@dataclass(frozen=True)
class TraceStep:
    """
    One k-means iteration: the centroids used for the assignment pass,
    the resulting assignment (constraint id -> 0-based cluster index),
    its objective, and the centroids recomputed from it.
    """
    iteration: int
    centroids: Tuple[str, ...]
    assignment: Dict[str, int]
    objective: Fraction
    recomputed_centroids: Tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            'iteration': self.iteration,
            'centroids': list(self.centroids),
            'assignment': dict(self.assignment),
            'objective': str(self.objective),
            'recomputed_centroids': list(self.recomputed_centroids),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'TraceStep':
        return cls(
            iteration=data['iteration'],
            centroids=tuple(data['centroids']),
            assignment=dict(data['assignment']),
            objective=Fraction(data['objective']),
            recomputed_centroids=tuple(data['recomputed_centroids']),
        )


@dataclass(frozen=True)
class Clustering:
    """
    A partition of constraints into k clusters.

    `centroids` is None for random clusterings. For k-means, `trace`
    holds every iteration and `converged_at` is the iteration whose
    centroid recomputation confirmed stability.
    """
    k: int
    assignment: Dict[str, int]
    centroids: Optional[Tuple[str, ...]]
    trace: Tuple[TraceStep, ...] = ()
    strategy: Strategy = Strategy.VARIABLE
    converged_at: Optional[int] = None

    def clusters(self) -> List[List[str]]:
        """Members of each cluster, in the assignment's (declaration) order."""
        groups = [[] for _ in range(self.k)]
        for constraint_id, cluster in self.assignment.items():
            groups[cluster].append(constraint_id)
        return groups

    def cluster_of(self, constraint_id: str) -> int:
        return self.assignment[constraint_id]

    @property
    def profile(self) -> StrategyProfile:
        return STRATEGY_PROFILES[self.strategy]

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'strategy': self.strategy.value,
            'assignment': dict(self.assignment),
            'centroids': list(self.centroids) if self.centroids is not None else None,
            'clusters': self.clusters(),
            'trace': [step.to_dict() for step in self.trace],
            'metadata': {
                'converged_at': self.converged_at,
                'stability_confirmed': self.converged_at is not None,
                'observed_error_rates': self.profile.to_dict(),
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Clustering':
        centroids = data.get('centroids')
        return cls(
            k=data['k'],
            assignment=dict(data['assignment']),
            centroids=tuple(centroids) if centroids is not None else None,
            trace=tuple(TraceStep.from_dict(step) for step in data.get('trace', [])),
            strategy=Strategy(data.get('strategy', Strategy.VARIABLE.value)),
            converged_at=data.get('metadata', {}).get('converged_at'),
        )
