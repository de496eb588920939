"""
Constraint clustering services.

k-means over a precomputed similarity matrix with medoid centroids: each
constraint joins the centroid it is most similar to, then each cluster's
centroid moves to the member with the highest summed similarity to the
other members. The loop stops once recomputation leaves every centroid
in place.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from django.conf import settings

from knowledge_base.models import KnowledgeBase

from .exceptions import InvalidClusteringError
from .models import Clustering, Metric, SimilarityMatrix, Strategy, TraceStep
from .similarity import similarity_matrix

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERATIONS = 100


def _validate_k(k: int, n: int) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise InvalidClusteringError(f"k must be an integer, got {k!r}")
    if not 1 <= k <= n:
        raise InvalidClusteringError(f"k must be between 1 and {n}, got {k}")


def assign_to_centroids(matrix: SimilarityMatrix, centroids: Sequence[str],
                        previous: Optional[Dict[str, int]] = None) -> Dict[str, int]:
    """
    Assign every constraint to the centroid it is most similar to.

    Args:
        matrix: Similarity matrix
        centroids: Distinct centroid ids; cluster i is defined by centroids[i]
        previous: Earlier assignment, consulted only to break ties

    Returns:
        dict: constraint id -> 0-based cluster index, in matrix order
    """
    if not centroids:
        raise InvalidClusteringError('At least one centroid is required')
    if len(set(centroids)) != len(centroids):
        raise InvalidClusteringError(f"Centroids must be distinct: {', '.join(centroids)}")

    columns = [matrix.index(centroid) for centroid in centroids]
    own_cluster = {centroid: cluster for cluster, centroid in enumerate(centroids)}
    assignment = {}
    for i, constraint_id in enumerate(matrix.constraint_ids):
        if constraint_id in own_cluster:
            assignment[constraint_id] = own_cluster[constraint_id]
            continue
        similarities = matrix.values[i, columns]
        best = max(similarities)
        tied = [cluster for cluster, value in enumerate(similarities) if value == best]
        if previous is not None and previous.get(constraint_id) in tied:
            assignment[constraint_id] = previous[constraint_id]
        else:
            assignment[constraint_id] = tied[0]
    return assignment


def recompute_centroid(matrix: SimilarityMatrix, members: Sequence[str], current: Optional[str] = None) -> str:
    """
    Member with the highest summed similarity to the other members.
    Ties keep the current centroid, then fall back to declaration order.
    """
    if not members:
        raise InvalidClusteringError('Cannot recompute the centroid of an empty cluster')

    order = sorted(matrix.index(member) for member in members)
    block = matrix.values[np.ix_(order, order)]
    totals = [sum(row, Fraction(0)) - row[position] for position, row in enumerate(block)]
    best = max(totals)
    tied = [matrix.constraint_ids[order[position]] for position, total in enumerate(totals) if total == best]
    if current in tied:
        return current
    return tied[0]


def objective(matrix: SimilarityMatrix, assignment: Dict[str, int], centroids: Sequence[str]) -> Fraction:
    """Sum over all constraints of the similarity to their cluster's centroid."""
    return sum(
        (matrix.get(constraint_id, centroids[cluster]) for constraint_id, cluster in assignment.items()),
        Fraction(0),
    )


def _members(assignment: Dict[str, int], k: int) -> List[List[str]]:
    groups = [[] for _ in range(k)]
    for constraint_id, cluster in assignment.items():
        groups[cluster].append(constraint_id)
    return groups


def _initial_centroids(matrix: SimilarityMatrix, k: int, init: Optional[Sequence[str]],
                       seed: Optional[int]) -> tuple:
    if init is not None:
        init = tuple(init)
        if len(init) != k:
            raise InvalidClusteringError(f"Expected {k} initial centroids, got {len(init)}")
        if len(set(init)) != k:
            raise InvalidClusteringError(f"Initial centroids must be distinct: {', '.join(init)}")
        unknown = [cid for cid in init if cid not in matrix]
        if unknown:
            raise InvalidClusteringError(f"Unknown initial centroid(s): {', '.join(unknown)}")
        return init

    if seed is None:
        seed = getattr(settings, 'KBTOOL_SEED', 0)
    rng = np.random.default_rng(seed)
    picked = sorted(int(i) for i in rng.choice(len(matrix), size=k, replace=False))
    return tuple(matrix.constraint_ids[i] for i in picked)


def kmeans(matrix: SimilarityMatrix, k: int, init: Optional[Sequence[str]] = None,
           seed: Optional[int] = None, max_iterations: Optional[int] = None,
           strategy: Strategy = Strategy.VARIABLE) -> Clustering:
    """
    Cluster the matrix's constraints into k groups.

    One iteration is an assignment pass followed by a centroid
    recomputation. The loop ends on the first iteration whose recomputed
    centroids equal the ones it assigned with; that iteration is recorded
    as `converged_at`.

    Args:
        matrix: Similarity matrix
        k: Number of clusters, 1 <= k <= number of constraints
        init: Initial centroid ids; random (seeded) when omitted
        seed: RNG seed for the random initialisation (default KBTOOL_SEED)
        max_iterations: Safety cap (default KBTOOL_KMEANS_MAX_ITERATIONS)

    Raises:
        InvalidClusteringError: Invalid k or init, or the cap was reached
    """
    _validate_k(k, len(matrix))
    if max_iterations is None:
        max_iterations = getattr(settings, 'KBTOOL_KMEANS_MAX_ITERATIONS', DEFAULT_MAX_ITERATIONS)

    centroids = _initial_centroids(matrix, k, init, seed)
    assignment = None
    trace = []

    for iteration in range(1, max_iterations + 1):
        assignment = assign_to_centroids(matrix, centroids, previous=assignment)
        recomputed = tuple(
            recompute_centroid(matrix, members, current)
            for members, current in zip(_members(assignment, k), centroids)
        )
        step = TraceStep(
            iteration=iteration,
            centroids=centroids,
            assignment=assignment,
            objective=objective(matrix, assignment, centroids),
            recomputed_centroids=recomputed,
        )
        trace.append(step)
        logger.debug(
            f"k-means iteration {iteration}: centroids {', '.join(centroids)} -> "
            f"{', '.join(recomputed)}, objective {float(step.objective):.4f}"
        )
        if recomputed == centroids:
            return Clustering(
                k=k,
                assignment=assignment,
                centroids=centroids,
                trace=tuple(trace),
                strategy=strategy,
                converged_at=iteration,
            )
        centroids = recomputed

    raise InvalidClusteringError(f"k-means did not converge within {max_iterations} iterations")


def random_clustering(kb: Union[KnowledgeBase, Sequence[str]], k: int, seed: Optional[int] = None) -> Clustering:
    """
    Uniform random partition into k non-empty clusters.

    The first k constraints of a seeded shuffle seed one cluster each; the
    remaining constraints pick a cluster uniformly.
    """
    constraint_ids = list(kb.constraint_ids if isinstance(kb, KnowledgeBase) else kb)
    _validate_k(k, len(constraint_ids))
    if seed is None:
        seed = getattr(settings, 'KBTOOL_SEED', 0)

    rng = np.random.default_rng(seed)
    order = rng.permutation(len(constraint_ids))
    labels = np.empty(len(constraint_ids), dtype=int)
    labels[order[:k]] = rng.permutation(k)
    labels[order[k:]] = rng.integers(0, k, size=len(constraint_ids) - k)

    assignment = {cid: int(label) for cid, label in zip(constraint_ids, labels)}
    return Clustering(k=k, assignment=assignment, centroids=None, strategy=Strategy.RANDOM)


def cluster_knowledge_base(kb: KnowledgeBase, k: int, strategy: Union[Strategy, str] = Strategy.VARIABLE,
                           init: Optional[Sequence[str]] = None, seed: Optional[int] = None,
                           matrix: Optional[SimilarityMatrix] = None) -> Clustering:
    """
    Group a knowledge base's constraints with the given strategy.

    A supplied matrix replaces the computed one; its ids must be the KB's
    constraint ids and it is reordered to declaration order.
    """
    strategy = Strategy(strategy)
    if strategy is Strategy.RANDOM:
        return random_clustering(kb, k, seed)

    if matrix is None:
        metric = Metric.VARIABLE if strategy is Strategy.VARIABLE else Metric.OPERATOR
        matrix = similarity_matrix(kb, metric)
    else:
        matrix = matrix.reordered(kb.constraint_ids)
    return kmeans(matrix, k, init=init, seed=seed, strategy=strategy)
