"""
Brute-force oracles: answers computed by enumerating every complete
assignment of a (small) knowledge base.
"""

import itertools
from typing import Iterable, Iterator, Optional

from knowledge_base.expressions import evaluate
from knowledge_base.models import KnowledgeBase


def all_assignments(kb: KnowledgeBase) -> Iterator[dict]:
    names = kb.variable_names
    for values in itertools.product(*(variable.domain for variable in kb.variables)):
        yield dict(zip(names, values))


def satisfies(kb: KnowledgeBase, assignment: dict, constraint_ids: Optional[Iterable[str]] = None) -> bool:
    return all(evaluate(constraint.expr, assignment) for constraint in kb.subset(constraint_ids))


def brute_force_satisfiable(kb: KnowledgeBase, constraint_ids: Optional[Iterable[str]] = None) -> bool:
    constraint_ids = None if constraint_ids is None else list(constraint_ids)
    return any(satisfies(kb, assignment, constraint_ids) for assignment in all_assignments(kb))


def solution_set(kb: KnowledgeBase) -> set:
    """Every solution as a tuple of values in declaration order."""
    return {
        tuple(assignment.values())
        for assignment in all_assignments(kb)
        if satisfies(kb, assignment)
    }


def is_minimal_conflict(kb: KnowledgeBase, constraint_ids) -> bool:
    ids = list(constraint_ids)
    if brute_force_satisfiable(kb, ids):
        return False
    return all(brute_force_satisfiable(kb, ids[:i] + ids[i + 1:]) for i in range(len(ids)))
