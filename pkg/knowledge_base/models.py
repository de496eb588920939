"""
Core value types for configuration knowledge bases.

A knowledge base is a CSP (V, D, C): named variables with finite integer
domains plus named constraints. Constraints are expression trees over
comparisons, negation, conjunction, disjunction and forward/reverse
implication. All types are immutable after construction.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, Dict, Iterable, Mapping, Optional, Tuple, Union

from .exceptions import InvalidKnowledgeBaseError


class Operator(str, Enum):
    """Operator tags occurring in constraint expressions."""
    EQ = '='
    NE = '!='
    LT = '<'
    GT = '>'
    LE = '<='
    GE = '>='
    NOT = 'not'
    AND = 'and'
    OR = 'or'
    IMPLIES = '->'
    IMPLIED_BY = '<-'


COMPARISON_OPERATORS = (
    Operator.EQ, Operator.NE, Operator.LT, Operator.GT, Operator.LE, Operator.GE,
)

# Maps an Assignment from variable identifier to value
Assignment = Dict[str, int]


@dataclass(frozen=True)
class Expr:
    """Base class of constraint expression nodes."""


@dataclass(frozen=True)
class Comparison(Expr):
    """`var op value`, where value is an integer constant or another variable."""
    var: str
    op: Operator
    value: Union[int, str]

    def __post_init__(self):
        if self.op not in COMPARISON_OPERATORS:
            raise InvalidKnowledgeBaseError(f"'{self.op}' is not a comparison operator")


@dataclass(frozen=True)
class Not(Expr):
    child: Expr


@dataclass(frozen=True)
class BinaryExpr(Expr):
    left: Expr
    right: Expr

    operator: ClassVar[Operator]


@dataclass(frozen=True)
class And(BinaryExpr):
    operator: ClassVar[Operator] = Operator.AND


@dataclass(frozen=True)
class Or(BinaryExpr):
    operator: ClassVar[Operator] = Operator.OR


@dataclass(frozen=True)
class Implies(BinaryExpr):
    """left -> right"""
    operator: ClassVar[Operator] = Operator.IMPLIES


@dataclass(frozen=True)
class ImpliedBy(BinaryExpr):
    """left <- right, i.e. right implies left."""
    operator: ClassVar[Operator] = Operator.IMPLIED_BY


ConstraintExpr = Expr


@dataclass(frozen=True)
class Variable:
    name: str
    domain: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'domain', tuple(self.domain))
        if not self.domain:
            raise InvalidKnowledgeBaseError(f"Variable '{self.name}' has an empty domain")


@dataclass(frozen=True)
class Constraint:
    id: str
    expr: Expr


@dataclass(frozen=True)
class KnowledgeBase:
    """
    A configuration knowledge base.

    Declaration order of variables and constraints is preserved: it
    defines display order and tie-breaking downstream.
    """
    variables: Tuple[Variable, ...] = ()
    constraints: Tuple[Constraint, ...] = ()
    _variables_by_name: Mapping[str, Variable] = field(init=False, repr=False, compare=False)
    _constraints_by_id: Mapping[str, Constraint] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        object.__setattr__(self, 'constraints', tuple(self.constraints))

        from .expressions import variables_of

        variables_by_name = {}
        for variable in self.variables:
            if variable.name in variables_by_name:
                raise InvalidKnowledgeBaseError(f"Duplicate variable '{variable.name}'")
            variables_by_name[variable.name] = variable

        constraints_by_id = {}
        for constraint in self.constraints:
            if constraint.id in constraints_by_id:
                raise InvalidKnowledgeBaseError(f"Duplicate constraint '{constraint.id}'")
            constraints_by_id[constraint.id] = constraint

            for name in variables_of(constraint.expr):
                if name not in variables_by_name:
                    raise InvalidKnowledgeBaseError(
                        f"Constraint '{constraint.id}' references undeclared variable '{name}'"
                    )

        object.__setattr__(self, '_variables_by_name', variables_by_name)
        object.__setattr__(self, '_constraints_by_id', constraints_by_id)

    @property
    def constraint_ids(self) -> Tuple[str, ...]:
        return tuple(constraint.id for constraint in self.constraints)

    @property
    def variable_names(self) -> Tuple[str, ...]:
        return tuple(variable.name for variable in self.variables)

    def variable(self, name: str) -> Variable:
        try:
            return self._variables_by_name[name]
        except KeyError:
            raise InvalidKnowledgeBaseError(f"Unknown variable '{name}'") from None

    def constraint(self, constraint_id: str) -> Constraint:
        try:
            return self._constraints_by_id[constraint_id]
        except KeyError:
            raise InvalidKnowledgeBaseError(f"Unknown constraint '{constraint_id}'") from None

    def has_constraint(self, constraint_id: str) -> bool:
        return constraint_id in self._constraints_by_id

    def subset(self, constraint_ids: Optional[Iterable[str]]) -> Tuple[Constraint, ...]:
        """Constraints with the given ids, in declaration order (all when ids is None)."""
        if constraint_ids is None:
            return self.constraints
        wanted = set(constraint_ids)
        unknown = wanted - set(self._constraints_by_id)
        if unknown:
            raise InvalidKnowledgeBaseError(f"Unknown constraints: {', '.join(sorted(unknown))}")
        return tuple(c for c in self.constraints if c.id in wanted)

    def replace_constraint(self, constraint_id: str, expr: Expr) -> 'KnowledgeBase':
        self.constraint(constraint_id)
        constraints = tuple(
            Constraint(c.id, expr) if c.id == constraint_id else c
            for c in self.constraints
        )
        return KnowledgeBase(self.variables, constraints)

    def check_assignment(self, assignment: Mapping[str, int]) -> None:
        """Raise if a value lies outside its variable's domain."""
        for name, value in assignment.items():
            if value not in self.variable(name).domain:
                raise InvalidKnowledgeBaseError(
                    f"Value {value} is outside the domain of '{name}'"
                )
