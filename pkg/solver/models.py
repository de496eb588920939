"""
Solver results.
"""

from dataclasses import dataclass
from typing import FrozenSet, Tuple


@dataclass(frozen=True)
class Conflict:
    """
    A minimal conflict: the constraints are jointly inconsistent, and
    dropping any one of them makes the rest consistent.
    Ids are kept in declaration order.
    """
    constraint_ids: Tuple[str, ...]

    @property
    def as_set(self) -> FrozenSet[str]:
        return frozenset(self.constraint_ids)

    def __len__(self) -> int:
        return len(self.constraint_ids)

    def __contains__(self, constraint_id: str) -> bool:
        return constraint_id in self.constraint_ids

    def to_dict(self) -> dict:
        return {'conflict': list(self.constraint_ids)}

    @classmethod
    def from_dict(cls, data: dict) -> 'Conflict':
        return cls(tuple(data['conflict']))
