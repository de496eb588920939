"""
Catalog of representation forms for requires and incompatibility
relations between two sub-expressions X and Y.

Each family lists five logically equivalent forms; form 1 is the one
engineers misread least often, and every form carries the observed error
rate (percent) used as its cognitive-complexity score.
"""

from dataclasses import dataclass, fields
from decimal import Decimal
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple, Union

from knowledge_base.models import And, BinaryExpr, Expr, ImpliedBy, Implies, Not, Or

from .exceptions import UnknownFormError


class MatchFailure(Exception):
    """Raised on unification failure, to exit the recursion."""


@dataclass(frozen=True)
class PatVar(Expr):
    """Pattern variable standing for any sub-expression."""
    name: str


X = PatVar('X')
Y = PatVar('Y')


def substitute(template: Expr, bindings: Mapping[str, Expr]) -> Expr:
    """Replace every pattern variable of the template by its binding."""
    if isinstance(template, PatVar):
        return bindings[template.name]
    if isinstance(template, Not):
        return Not(substitute(template.child, bindings))
    if isinstance(template, BinaryExpr):
        return type(template)(substitute(template.left, bindings), substitute(template.right, bindings))
    return template


def _unify(pattern: Expr, tree: Expr, bindings: Dict[str, Expr]) -> None:
    if isinstance(pattern, PatVar):
        bound = bindings.setdefault(pattern.name, tree)
        if bound != tree:
            raise MatchFailure(f"{pattern.name} is bound to two different sub-expressions")
        return
    if type(pattern) is not type(tree):
        raise MatchFailure(f"Node {type(pattern).__name__} does not match node {type(tree).__name__}")
    for f in fields(pattern):
        expected, actual = getattr(pattern, f.name), getattr(tree, f.name)
        if isinstance(expected, Expr):
            _unify(expected, actual, bindings)
        elif expected != actual:
            raise MatchFailure(f"Constant {expected!r} does not match {actual!r}")


def match(pattern: Expr, tree: Expr) -> Optional[Dict[str, Expr]]:
    """Bindings making the pattern equal to the tree at its root, or None."""
    bindings: Dict[str, Expr] = {}
    try:
        _unify(pattern, tree, bindings)
    except MatchFailure:
        return None
    return bindings


def specificity(pattern: Expr) -> int:
    """Number of non-placeholder nodes."""
    if isinstance(pattern, PatVar):
        return 0
    if isinstance(pattern, Not):
        return 1 + specificity(pattern.child)
    if isinstance(pattern, BinaryExpr):
        return 1 + specificity(pattern.left) + specificity(pattern.right)
    return 1


class Family(str, Enum):
    REQUIRES = 'requires'
    INCOMPATIBILITY = 'incompatibility'


@dataclass(frozen=True)
class RefactoringForm:
    family: Family
    index: int
    template: Expr
    error_rate: Decimal
    notation: str

    @property
    def key(self) -> str:
        return f"{self.family.value}/{self.index}"

    @property
    def specificity(self) -> int:
        return specificity(self.template)

    def instantiate(self, x: Expr, y: Expr) -> Expr:
        return substitute(self.template, {'X': x, 'Y': y})

    def __str__(self) -> str:
        return f"{self.key} ({self.notation})"

    def to_dict(self) -> dict:
        return {
            'family': self.family.value,
            'index': self.index,
            'notation': self.notation,
            'error_rate': str(self.error_rate),
        }


CATALOG: Tuple[RefactoringForm, ...] = (
    RefactoringForm(Family.REQUIRES, 1, Implies(X, Y), Decimal('21.43'), 'X -> Y'),
    RefactoringForm(Family.REQUIRES, 2, Or(Not(X), Y), Decimal('50.0'), 'not X or Y'),
    RefactoringForm(Family.REQUIRES, 3, Implies(Not(Y), Not(X)), Decimal('96.43'), 'not Y -> not X'),
    RefactoringForm(Family.REQUIRES, 4, Not(And(X, Not(Y))), Decimal('73.08'), 'not (X and not Y)'),
    RefactoringForm(Family.REQUIRES, 5, ImpliedBy(Y, X), Decimal('25.0'), 'Y <- X'),
    RefactoringForm(Family.INCOMPATIBILITY, 1, Implies(X, Not(Y)), Decimal('14.29'), 'X -> not Y'),
    RefactoringForm(Family.INCOMPATIBILITY, 2, Or(Not(X), Not(Y)), Decimal('34.62'), 'not X or not Y'),
    RefactoringForm(Family.INCOMPATIBILITY, 3, Implies(Y, Not(X)), Decimal('50.0'), 'Y -> not X'),
    RefactoringForm(Family.INCOMPATIBILITY, 4, Not(And(X, Y)), Decimal('42.31'), 'not (X and Y)'),
    RefactoringForm(Family.INCOMPATIBILITY, 5, ImpliedBy(Not(Y), X), Decimal('16.67'), 'not Y <- X'),
)

_FORMS = {form.key: form for form in CATALOG}


def get_form(key: Union[str, Tuple[str, int]]) -> RefactoringForm:
    """Look up a form by 'family/index' or (family, index)."""
    if isinstance(key, tuple):
        family, index = key
        key = f"{Family(family).value}/{index}"
    try:
        return _FORMS[key]
    except KeyError:
        known = ', '.join(_FORMS)
        raise UnknownFormError(f"Unknown refactoring form '{key}' (known: {known})") from None


def family_forms(family: Union[Family, str]) -> Tuple[RefactoringForm, ...]:
    family = Family(family)
    return tuple(form for form in CATALOG if form.family is family)


def canonical_form(family: Union[Family, str]) -> RefactoringForm:
    """Form 1 of the family, the target of every refactoring."""
    return get_form((Family(family).value, 1))


def score(form: Union[RefactoringForm, str, Tuple[str, int]]) -> Decimal:
    """Observed error rate (percent) of a form."""
    if not isinstance(form, RefactoringForm):
        form = get_form(form)
    return form.error_rate
