"""
Brute-force semantic comparison of constraint expressions.

Two expressions are equivalent when they evaluate identically under
every complete assignment of the variables either one references.
"""

import itertools
import math
from typing import Iterable, Iterator, Optional, Union

from django.conf import settings

from knowledge_base.exceptions import InvalidKnowledgeBaseError
from knowledge_base.expressions import evaluate, variables_of
from knowledge_base.models import Assignment, Expr, KnowledgeBase, Variable

from .exceptions import StateSpaceExceededError

DEFAULT_BOUND = 1_000_000

Variables = Union[KnowledgeBase, Iterable[Variable]]


def _domains(variables: Variables, names) -> list:
    declared = {v.name: v for v in (variables.variables if isinstance(variables, KnowledgeBase) else variables)}
    missing = [name for name in names if name not in declared]
    if missing:
        raise InvalidKnowledgeBaseError(f"No domain given for variable(s): {', '.join(missing)}")
    return [declared[name].domain for name in names]


def assignments(names, domains, bound: Optional[int] = None) -> Iterator[Assignment]:
    """
    Every complete assignment over the given variables, first variable
    slowest, values ascending.

    Raises:
        StateSpaceExceededError: If there are more than `bound` assignments
    """
    if bound is None:
        bound = getattr(settings, 'KBTOOL_EQUIVALENCE_BOUND', DEFAULT_BOUND)
    size = math.prod(len(domain) for domain in domains)
    if size > bound:
        raise StateSpaceExceededError(size, bound)
    for values in itertools.product(*domains):
        yield dict(zip(names, values))


def find_counterexample(a: Expr, b: Expr, variables: Variables,
                        bound: Optional[int] = None) -> Optional[Assignment]:
    """
    First assignment on which the two expressions disagree.

    Args:
        a, b: Expressions to compare
        variables: Declarations giving the domain of every referenced variable
        bound: Largest state space to enumerate (default KBTOOL_EQUIVALENCE_BOUND)

    Returns:
        dict | None: A distinguishing assignment, or None when equivalent

    Raises:
        StateSpaceExceededError: If the referenced variables span too many assignments
    """
    names = list(dict.fromkeys([*variables_of(a), *variables_of(b)]))
    domains = _domains(variables, names)
    for assignment in assignments(names, domains, bound):
        if evaluate(a, assignment) != evaluate(b, assignment):
            return assignment
    return None


def check_equivalence(a: Expr, b: Expr, variables: Variables, bound: Optional[int] = None) -> bool:
    return find_counterexample(a, b, variables, bound) is None
