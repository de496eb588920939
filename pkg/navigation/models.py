"""
Navigation data: per-user rank vectors, the current session and the
resulting recommendation.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from .exceptions import NavigationLogError


def user_sort_key(user_id: str):
    """Numeric ids sort by value and before any non-numeric id."""
    return (0, int(user_id), '') if user_id.isdigit() else (1, 0, user_id)


@dataclass(frozen=True)
class NavigationLog:
    """
    Order in which each engineer inspected the constraints.

    users maps user id -> {constraint id: rank}; ranks of one user are
    distinct positive integers. constraint_order lists every constraint id
    in order of first appearance. warnings holds non-fatal import notes.
    """
    users: Dict[str, Dict[str, int]] = field(default_factory=dict)
    constraint_order: Tuple[str, ...] = ()
    warnings: Tuple[str, ...] = ()

    def __post_init__(self):
        for user, ranks in self.users.items():
            for constraint_id, rank in ranks.items():
                if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
                    raise NavigationLogError(f"user {user}: rank of {constraint_id} must be a positive integer")
            if len(set(ranks.values())) != len(ranks):
                raise NavigationLogError(f"user {user}: ranks must be distinct")

        if not self.constraint_order:
            order = dict.fromkeys(cid for ranks in self.users.values() for cid in ranks)
            object.__setattr__(self, 'constraint_order', tuple(order))
        object.__setattr__(self, 'warnings', tuple(self.warnings))

    @property
    def user_ids(self) -> List[str]:
        return sorted(self.users, key=user_sort_key)

    @property
    def constraint_ids(self) -> Tuple[str, ...]:
        return self.constraint_order

    def __len__(self) -> int:
        return len(self.users)

    def ranks(self, user_id: str) -> Dict[str, int]:
        return self.users[user_id]

    def visit_order(self, user_id: str) -> List[str]:
        """The user's constraints sorted by rank."""
        ranks = self.users[user_id]
        return sorted(ranks, key=ranks.__getitem__)

    def next_user_id(self) -> str:
        numeric = [int(user) for user in self.users if user.isdigit()]
        return str(max(numeric, default=0) + 1)

    def to_dict(self) -> dict:
        return {
            'users': {user: dict(self.users[user]) for user in self.user_ids},
            'constraint_order': list(self.constraint_order),
            'warnings': list(self.warnings),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'NavigationLog':
        return cls(
            users={user: dict(ranks) for user, ranks in data.get('users', {}).items()},
            constraint_order=tuple(data.get('constraint_order', ())),
            warnings=tuple(data.get('warnings', ())),
        )


@dataclass(frozen=True)
class SessionState:
    """Constraints the current engineer has visited, in visiting order."""
    visited: Tuple[str, ...] = ()

    def __post_init__(self):
        visited = tuple(self.visited)
        if len(set(visited)) != len(visited):
            raise NavigationLogError('A session cannot visit the same constraint twice')
        object.__setattr__(self, 'visited', visited)

    def __len__(self) -> int:
        return len(self.visited)

    def __contains__(self, constraint_id: str) -> bool:
        return constraint_id in self.visited

    def visit(self, constraint_id: str) -> 'SessionState':
        return SessionState(self.visited + (constraint_id,))

    def implied_ranks(self) -> Dict[str, int]:
        """The i-th visited constraint has rank i."""
        return {constraint_id: rank for rank, constraint_id in enumerate(self.visited, start=1)}

    @classmethod
    def of(cls, visited: Iterable[str]) -> 'SessionState':
        return cls(tuple(visited))


@dataclass(frozen=True)
class Neighbor:
    user_id: str
    distance: int


@dataclass(frozen=True)
class Recommendation:
    """
    The constraint to inspect next, the neighbors that voted for it, the
    vote count per candidate and every consulted neighbor with its distance.
    """
    constraint_id: str
    supporting_neighbors: Tuple[str, ...]
    votes: Dict[str, int]
    neighbors: Tuple[Neighbor, ...] = ()

    def to_dict(self) -> dict:
        return {
            'constraint': self.constraint_id,
            'supporting_neighbors': list(self.supporting_neighbors),
            'votes': dict(self.votes),
            'neighbors': [{'user': n.user_id, 'distance': n.distance} for n in self.neighbors],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Recommendation':
        return cls(
            constraint_id=data['constraint'],
            supporting_neighbors=tuple(data['supporting_neighbors']),
            votes=dict(data['votes']),
            neighbors=tuple(Neighbor(n['user'], n['distance']) for n in data.get('neighbors', [])),
        )
