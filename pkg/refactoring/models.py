"""
Refactoring results.
"""

from dataclasses import dataclass
from decimal import Decimal
from typing import Tuple

from knowledge_base.models import Expr, KnowledgeBase
from knowledge_base.parser import format_expr, parse_expr

from .catalog import RefactoringForm, get_form


@dataclass(frozen=True)
class FormMatch:
    """A constraint expression recognised as a catalog form with bound X and Y."""
    form: RefactoringForm
    x: Expr
    y: Expr

    @property
    def family(self):
        return self.form.family

    @property
    def index(self) -> int:
        return self.form.index


@dataclass(frozen=True)
class RefactoringSuggestion:
    constraint_id: str
    matched: RefactoringForm
    target: RefactoringForm
    original: Expr
    rewritten: Expr

    @property
    def score_delta(self) -> Decimal:
        """Error-rate reduction in percentage points."""
        return self.matched.error_rate - self.target.error_rate

    def to_dict(self) -> dict:
        return {
            'constraint': self.constraint_id,
            'matched': self.matched.key,
            'target': self.target.key,
            'original': format_expr(self.original),
            'rewritten': format_expr(self.rewritten),
            'score_delta': str(self.score_delta),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'RefactoringSuggestion':
        return cls(
            constraint_id=data['constraint'],
            matched=get_form(data['matched']),
            target=get_form(data['target']),
            original=parse_expr(data['original']),
            rewritten=parse_expr(data['rewritten']),
        )


@dataclass(frozen=True)
class SkippedConstraint:
    """A constraint left untouched, with the reason."""
    constraint_id: str
    reason: str

    def to_dict(self) -> dict:
        return {'constraint': self.constraint_id, 'reason': self.reason}


@dataclass(frozen=True)
class RefactoringResult:
    """
    Outcome of refactoring a whole knowledge base.

    rejected: rewrites that failed the equivalence check
    skipped: rewrites that could not be checked (state space too large)
    """
    knowledge_base: KnowledgeBase
    suggestions: Tuple[RefactoringSuggestion, ...] = ()
    rejected: Tuple[SkippedConstraint, ...] = ()
    skipped: Tuple[SkippedConstraint, ...] = ()

    def __iter__(self):
        # Unpacks as (knowledge_base, suggestions)
        return iter((self.knowledge_base, list(self.suggestions)))

    def to_dict(self) -> dict:
        return {
            'suggestions': [suggestion.to_dict() for suggestion in self.suggestions],
            'rejected': [item.to_dict() for item in self.rejected],
            'skipped': [item.to_dict() for item in self.skipped],
        }
