"""
Operations over constraint expressions: variable occurrences, evaluation
and operator multisets.
"""

import operator
from collections import Counter
from typing import Iterator, List, Mapping, Tuple, Union

from .exceptions import UnboundVariableError
from .models import (
    And,
    BinaryExpr,
    Comparison,
    Constraint,
    Expr,
    ImpliedBy,
    Implies,
    Not,
    Operator,
    Or,
)

_COMPARE = {
    Operator.EQ: operator.eq,
    Operator.NE: operator.ne,
    Operator.LT: operator.lt,
    Operator.GT: operator.gt,
    Operator.LE: operator.le,
    Operator.GE: operator.ge,
}


def _as_expr(c: Union[Constraint, Expr]) -> Expr:
    return c.expr if isinstance(c, Constraint) else c


def iter_variable_refs(expr: Expr) -> Iterator[str]:
    """Every variable occurrence, left to right, depth first in order."""
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Comparison):
            yield node.var
            if isinstance(node.value, str):
                yield node.value
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, BinaryExpr):
            stack.append(node.right)
            stack.append(node.left)


def variables_of(c: Union[Constraint, Expr]) -> Tuple[str, ...]:
    """Distinct variables in order of first occurrence."""
    return tuple(dict.fromkeys(iter_variable_refs(_as_expr(c))))


def variable_occurrences(c: Union[Constraint, Expr]) -> List[Tuple[str, int]]:
    """
    Distinct variables of a constraint with their first-occurrence position.

    Positions are 1-based indexes into the sequence of all variable
    occurrences, so repeated occurrences of an earlier variable still
    advance the counter: `v5=1 -> v3=2 or v3=3` gives [(v5, 1), (v3, 2)]
    and `v3=1 -> (v4=2 and v1>v5)` gives [(v3,1), (v4,2), (v1,3), (v5,4)].
    """
    first_positions = {}
    for position, name in enumerate(iter_variable_refs(_as_expr(c)), start=1):
        first_positions.setdefault(name, position)
    return list(first_positions.items())


def evaluate(expr: Expr, assignment: Mapping[str, int]) -> bool:
    """
    Two-valued evaluation of an expression under a complete assignment.

    Raises:
        UnboundVariableError: If the assignment misses a referenced variable
    """
    match expr:
        case Comparison(var=var, op=op, value=value):
            left = _lookup(assignment, var)
            right = _lookup(assignment, value) if isinstance(value, str) else value
            return _COMPARE[op](left, right)
        case Not(child=child):
            return not evaluate(child, assignment)
        case And(left=left, right=right):
            return evaluate(left, assignment) and evaluate(right, assignment)
        case Or(left=left, right=right):
            return evaluate(left, assignment) or evaluate(right, assignment)
        case Implies(left=left, right=right):
            return (not evaluate(left, assignment)) or evaluate(right, assignment)
        case ImpliedBy(left=left, right=right):
            return (not evaluate(right, assignment)) or evaluate(left, assignment)
    raise TypeError(f"Not a constraint expression: {expr!r}")


def _lookup(assignment: Mapping[str, int], name: str) -> int:
    try:
        return assignment[name]
    except KeyError:
        raise UnboundVariableError(name) from None


def operator_multiset(c: Union[Constraint, Expr]) -> Counter:
    """Multiset of operator tags (comparisons and connectives) in the expression tree."""
    counts = Counter()
    stack = [_as_expr(c)]
    while stack:
        node = stack.pop()
        if isinstance(node, Comparison):
            counts[node.op] += 1
        elif isinstance(node, Not):
            counts[Operator.NOT] += 1
            stack.append(node.child)
        elif isinstance(node, BinaryExpr):
            counts[node.operator] += 1
            stack.extend((node.left, node.right))
    return counts
