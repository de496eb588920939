"""
Random knowledge-base generators.

Named shapes follow the knowledge bases used in the grouping study
(kba1, kba2) and the representation study (kbb1, kbb2): number of
variables, domain size and number of constraints. The generated KBs
only match those shape parameters; they do not replicate the studies.
"""

from dataclasses import dataclass
from typing import Optional, Protocol

import numpy as np

from .models import (
    COMPARISON_OPERATORS,
    And,
    Comparison,
    Constraint,
    Expr,
    ImpliedBy,
    Implies,
    KnowledgeBase,
    Not,
    Operator,
    Or,
    Variable,
)


@dataclass(frozen=True)
class StudyShape:
    name: str
    variables: int
    domain_size: int
    constraints: int


STUDY_SHAPES = {
    'kba1': StudyShape('kba1', variables=5, domain_size=5, constraints=15),
    'kba2': StudyShape('kba2', variables=10, domain_size=3, constraints=10),
    'kbb1': StudyShape('kbb1', variables=5, domain_size=5, constraints=7),
    'kbb2': StudyShape('kbb2', variables=3, domain_size=3, constraints=5),
}

_CONNECTIVES = (And, Or, Implies, ImpliedBy)


class FormTemplate(Protocol):
    """Anything that can write a relation between two sub-expressions, e.g. a refactoring form."""

    def instantiate(self, x: Expr, y: Expr) -> Expr:
        ...


class KnowledgeBaseGenerator:
    """
    Builds random knowledge bases from a seeded numpy Generator.
    The same seed always yields the same knowledge base.
    """

    def __init__(self, seed: int, max_depth: int = 3, variable_comparisons: bool = True):
        self.rng = np.random.default_rng(seed)
        self.max_depth = max_depth
        self.variable_comparisons = variable_comparisons

    def _pick(self, items):
        return items[int(self.rng.integers(len(items)))]

    def variables(self, domain_sizes) -> list:
        return [
            Variable(f"v{i}", tuple(range(1, size + 1)))
            for i, size in enumerate(domain_sizes, start=1)
        ]

    def comparison(self, variables, operators=COMPARISON_OPERATORS) -> Comparison:
        variable = self._pick(variables)
        op = self._pick(operators)
        if self.variable_comparisons and len(variables) > 1 and self.rng.random() < 0.15:
            other = self._pick([v for v in variables if v.name != variable.name])
            return Comparison(variable.name, op, other.name)
        return Comparison(variable.name, op, int(self._pick(variable.domain)))

    def expression(self, variables, depth: int = 0) -> Expr:
        if depth >= self.max_depth or self.rng.random() < 0.3:
            return self.comparison(variables)
        if self.rng.random() < 0.15:
            return Not(self.expression(variables, depth + 1))
        connective = self._pick(_CONNECTIVES)
        return connective(self.expression(variables, depth + 1), self.expression(variables, depth + 1))

    def relation(self, variables, form: FormTemplate) -> Expr:
        """Relation between two atomic `var = value` comparisons written in the given form."""
        first = self._pick(variables)
        others = [v for v in variables if v.name != first.name] or [first]
        second = self._pick(others)
        x = Comparison(first.name, Operator.EQ, int(self._pick(first.domain)))
        y = Comparison(second.name, Operator.EQ, int(self._pick(second.domain)))
        return form.instantiate(x, y)

    def knowledge_base(self, domain_sizes, constraints: int,
                       form: Optional[FormTemplate] = None) -> KnowledgeBase:
        declared = self.variables(domain_sizes)
        built = []
        for i in range(1, constraints + 1):
            expr = self.relation(declared, form) if form is not None else self.expression(declared)
            built.append(Constraint(f"c{i}", expr))
        return KnowledgeBase(declared, built)


def generate_kb(shape: StudyShape, seed: int, form: Optional[FormTemplate] = None) -> KnowledgeBase:
    """
    Random knowledge base with the given study shape.

    Args:
        shape: Number of variables, domain size and number of constraints
        seed: RNG seed
        form: When given, every constraint is a two-placeholder relation in this form
    """
    generator = KnowledgeBaseGenerator(seed)
    return generator.knowledge_base(
        [shape.domain_size] * shape.variables,
        shape.constraints,
        form=form,
    )


def generate_random_kb(seed: int, max_variables: int = 10, max_domain_size: int = 5,
                       max_constraints: int = 15, max_states: Optional[int] = None) -> KnowledgeBase:
    """
    Random knowledge base within the given bounds.

    When max_states is given, domain sizes are shrunk until the product of
    domain sizes (the number of complete assignments) fits under it.
    """
    generator = KnowledgeBaseGenerator(seed)
    rng = generator.rng
    variables = int(rng.integers(1, max_variables, endpoint=True))
    sizes = [int(rng.integers(1, max_domain_size, endpoint=True)) for _ in range(variables)]
    if max_states is not None:
        while int(np.prod(sizes)) > max_states and max(sizes) > 1:
            sizes[int(np.argmax(sizes))] -= 1
    constraints = int(rng.integers(0, max_constraints, endpoint=True))
    return generator.knowledge_base(sizes, constraints)
