"""
Solving and conflict detection for knowledge bases.

find_solution runs chronological backtracking: variables in declaration
order, values ascending, and each constraint is checked as soon as its
last variable has a value. minimal_conflict splits the constraint list
recursively (QuickXplain) and prefers constraints declared earlier.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence

from knowledge_base.expressions import evaluate, variables_of
from knowledge_base.models import Assignment, Constraint, KnowledgeBase

from .exceptions import ConflictVerificationError
from .models import Conflict

logger = logging.getLogger(__name__)


class BacktrackingSolver:
    """
    Depth-first search over the variables of one knowledge base.

    Args:
        kb: Knowledge base supplying variables and domains
        constraints: Constraints to satisfy (default: all)
    """

    def __init__(self, kb: KnowledgeBase, constraints: Optional[Sequence[Constraint]] = None):
        self.kb = kb
        self.variables = kb.variables
        self.constraints = tuple(kb.constraints if constraints is None else constraints)
        position = {variable.name: i for i, variable in enumerate(self.variables)}

        # checks[i]: constraints whose last variable is variables[i]
        self.checks: List[List[Constraint]] = [[] for _ in self.variables]
        self.ground: List[Constraint] = []
        for constraint in self.constraints:
            names = variables_of(constraint)
            if names:
                self.checks[max(position[name] for name in names)].append(constraint)
            else:
                self.ground.append(constraint)

    def solve(self) -> Optional[Assignment]:
        """A satisfying complete assignment, or None when unsatisfiable."""
        if any(not evaluate(constraint.expr, {}) for constraint in self.ground):
            return None
        assignment: Dict[str, int] = {}
        if self._extend(0, assignment):
            return dict(assignment)
        return None

    def _extend(self, depth: int, assignment: Dict[str, int]) -> bool:
        if depth == len(self.variables):
            return True
        variable = self.variables[depth]
        for value in variable.domain:
            assignment[variable.name] = value
            if all(evaluate(constraint.expr, assignment) for constraint in self.checks[depth]):
                if self._extend(depth + 1, assignment):
                    return True
        del assignment[variable.name]
        return False


def _constraints(kb: KnowledgeBase, subset: Optional[Iterable[str]]) -> Sequence[Constraint]:
    return kb.constraints if subset is None else kb.subset(subset)


def find_solution(kb: KnowledgeBase, subset: Optional[Iterable[str]] = None) -> Optional[Assignment]:
    """
    Solve a knowledge base or a subset of its constraints.

    Args:
        kb: Knowledge base
        subset: Constraint ids to satisfy (default: all)

    Returns:
        dict | None: First solution in enumeration order, None when UNSAT
    """
    return BacktrackingSolver(kb, _constraints(kb, subset)).solve()


def is_consistent(kb: KnowledgeBase, subset: Optional[Iterable[str]] = None) -> bool:
    return find_solution(kb, subset) is not None


def _consistent(kb: KnowledgeBase, constraints: Sequence[Constraint]) -> bool:
    return BacktrackingSolver(kb, constraints).solve() is not None


def _quickxplain(kb: KnowledgeBase, background: List[Constraint], delta: List[Constraint],
                 constraints: List[Constraint]) -> List[Constraint]:
    if delta and not _consistent(kb, background):
        return []
    if len(constraints) == 1:
        return list(constraints)

    split = len(constraints) // 2
    preferred, rest = constraints[:split], constraints[split:]
    delta2 = _quickxplain(kb, background + preferred, preferred, rest)
    delta1 = _quickxplain(kb, background + delta2, delta2, preferred)
    return delta1 + delta2


def verify_conflict(kb: KnowledgeBase, conflict: Conflict) -> bool:
    """True if the conflict is inconsistent and every one-smaller subset is consistent."""
    ids = list(conflict.constraint_ids)
    if is_consistent(kb, ids):
        return False
    return all(is_consistent(kb, ids[:i] + ids[i + 1:]) for i in range(len(ids)))


def minimal_conflict(kb: KnowledgeBase) -> Optional[Conflict]:
    """
    One minimal conflict of the knowledge base.

    Returns:
        Conflict | None: None when the knowledge base is consistent

    Raises:
        ConflictVerificationError: If the result fails its minimality check
    """
    constraints = list(kb.constraints)
    if _consistent(kb, constraints):
        return None

    found = {constraint.id for constraint in _quickxplain(kb, [], [], constraints)}
    conflict = Conflict(tuple(cid for cid in kb.constraint_ids if cid in found))
    if not verify_conflict(kb, conflict):
        raise ConflictVerificationError(f"Computed conflict {', '.join(conflict.constraint_ids)} is not minimal")
    logger.info(f"Minimal conflict: {', '.join(conflict.constraint_ids)}")
    return conflict
