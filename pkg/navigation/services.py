"""
Collaborative recommendation of the next constraint to inspect.

Engineers whose visiting order so far resembles the current session are
the nearest neighbors; each neighbor votes for the constraint it visited
next and the plurality wins.
"""

import logging
from collections import Counter, defaultdict
from typing import Dict, List, Mapping, Optional, Sequence

from django.conf import settings

from knowledge_base.exceptions import KnowledgeBaseError

from .exceptions import EmptySessionError, NoCandidatesError
from .models import NavigationLog, Neighbor, Recommendation, SessionState, user_sort_key

logger = logging.getLogger(__name__)

DEFAULT_NEIGHBORS = 3


def _universe_size(log: NavigationLog, order: Optional[Sequence[str]] = None) -> int:
    return len(set(log.constraint_ids) | set(order or ()))


def neighbor_distance(session: SessionState, ranks: Mapping[str, int], universe_size: int) -> int:
    """
    Manhattan distance between the session's implied ranks and a user's
    ranks on the visited constraints. A constraint the user never ranked
    costs universe_size + 1.

    Raises:
        EmptySessionError: If nothing has been visited
    """
    if not session.visited:
        raise EmptySessionError('Cannot compare an empty session with other users')
    penalty = universe_size + 1
    return sum(
        abs(rank - ranks[constraint_id]) if constraint_id in ranks else penalty
        for constraint_id, rank in session.implied_ranks().items()
    )


def _validate_k(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise KnowledgeBaseError(f"Number of neighbors must be a positive integer, got {k!r}")


def rank_neighbors(log: NavigationLog, session: SessionState,
                   order: Optional[Sequence[str]] = None) -> List[Neighbor]:
    """Every user with its distance, closest first, ties by user id."""
    universe = _universe_size(log, order)
    neighbors = [
        Neighbor(user, neighbor_distance(session, log.ranks(user), universe))
        for user in log.users
    ]
    return sorted(neighbors, key=lambda n: (n.distance, user_sort_key(n.user_id)))


def nearest_neighbors(log: NavigationLog, session: SessionState, k: Optional[int] = None,
                      order: Optional[Sequence[str]] = None) -> List[str]:
    """
    The k users closest to the session (all users when fewer than k).

    Raises:
        EmptySessionError: If nothing has been visited
        NoCandidatesError: If the log has no users
    """
    if k is None:
        k = getattr(settings, 'KBTOOL_CF_NEIGHBORS', DEFAULT_NEIGHBORS)
    _validate_k(k)
    if not session.visited:
        raise EmptySessionError('Cannot compare an empty session with other users')
    if not log.users:
        raise NoCandidatesError('The navigation log has no users')
    return [neighbor.user_id for neighbor in rank_neighbors(log, session, order)[:k]]


def neighbor_vote(log: NavigationLog, user_id: str, session: SessionState) -> Optional[str]:
    """
    The constraint a neighbor votes for: its first unvisited constraint at
    rank |visited| + 1 or later, else its lowest-ranked unvisited one.
    """
    position = len(session) + 1
    unvisited = [cid for cid in log.visit_order(user_id) if cid not in session]
    ranks = log.ranks(user_id)
    for constraint_id in unvisited:
        if ranks[constraint_id] >= position:
            return constraint_id
    return unvisited[0] if unvisited else None


def recommend_next(log: NavigationLog, session: SessionState, k: Optional[int] = None,
                   order: Optional[Sequence[str]] = None) -> Recommendation:
    """
    Recommend the next constraint for the current session.

    Args:
        log: Navigation log of other engineers
        session: Constraints visited so far
        k: Number of neighbors (default KBTOOL_CF_NEIGHBORS)
        order: Constraint declaration order for the final tie-break;
            defaults to the order of first appearance in the log

    Returns:
        Recommendation: Winner by plurality, then smaller total neighbor
            distance, then declaration order

    Raises:
        EmptySessionError: If nothing has been visited
        NoCandidatesError: If no neighbor has an unvisited constraint left
    """
    if k is None:
        k = getattr(settings, 'KBTOOL_CF_NEIGHBORS', DEFAULT_NEIGHBORS)
    _validate_k(k)
    if not session.visited:
        raise EmptySessionError('Cannot recommend for an empty session')
    if not log.users:
        raise NoCandidatesError('The navigation log has no users')

    neighbors = rank_neighbors(log, session, order)[:k]
    votes: Counter = Counter()
    distance_by_candidate: Dict[str, int] = defaultdict(int)
    voters: Dict[str, List[str]] = defaultdict(list)
    for neighbor in neighbors:
        choice = neighbor_vote(log, neighbor.user_id, session)
        if choice is None:
            continue
        votes[choice] += 1
        distance_by_candidate[choice] += neighbor.distance
        voters[choice].append(neighbor.user_id)

    if not votes:
        raise NoCandidatesError('Every constraint known to the nearest neighbors has been visited')

    declaration = {cid: i for i, cid in enumerate(order if order is not None else log.constraint_ids)}
    winner = min(
        votes,
        key=lambda cid: (-votes[cid], distance_by_candidate[cid], declaration.get(cid, len(declaration)), cid),
    )
    logger.debug(f"Recommending {winner} with votes {dict(votes)}")
    return Recommendation(
        constraint_id=winner,
        supporting_neighbors=tuple(voters[winner]),
        votes=dict(votes),
        neighbors=tuple(neighbors),
    )
