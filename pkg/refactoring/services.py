"""
Refactoring recommendations.

A constraint whose expression has the shape of a catalog form is
rewritten into form 1 of the same family with the same X and Y
sub-expressions. Every rewrite applied to a knowledge base is checked
for equivalence by enumeration first.
"""

import logging
import re
from typing import Optional, Sequence, Union

from knowledge_base.expressions import variables_of
from knowledge_base.models import Constraint, Expr, KnowledgeBase

from .catalog import CATALOG, canonical_form, get_form, match
from .equivalence import find_counterexample
from .exceptions import StateSpaceExceededError
from .models import FormMatch, RefactoringResult, RefactoringSuggestion, SkippedConstraint

logger = logging.getLogger(__name__)

_INCOMPATIBILITY_1 = get_form('incompatibility/1')
_INCOMPATIBILITY_3 = get_form('incompatibility/3')


def _natural_key(name: str):
    return [int(part) if part.isdigit() else part for part in re.split(r'(\d+)', name)]


def _order_key(variable_order: Optional[Sequence[str]]):
    if variable_order is None:
        return _natural_key
    positions = {name: i for i, name in enumerate(variable_order)}
    return lambda name: (positions.get(name, len(positions)), _natural_key(name))


def _as_expr(c: Union[Constraint, Expr]) -> Expr:
    return c.expr if isinstance(c, Constraint) else c


def _candidates(expr: Expr):
    """Every matching form, most specific first, then catalog order."""
    found = []
    for position, form in enumerate(CATALOG):
        bindings = match(form.template, expr)
        if bindings is not None:
            found.append((-form.specificity, position, FormMatch(form, bindings['X'], bindings['Y'])))
    return [candidate for *_, candidate in sorted(found, key=lambda item: item[:2])]


def classify(c: Union[Constraint, Expr], variable_order: Optional[Sequence[str]] = None) -> Optional[FormMatch]:
    """
    Recognise the catalog form of a constraint.

    `P -> not Q` fits both incompatibility/1 (X=P, Y=Q) and
    incompatibility/3 (X=Q, Y=P); it is read as form 3 when the first
    variable of P comes after the first variable of Q in variable_order
    (declaration order, or natural name order when omitted).

    Returns:
        FormMatch | None: The matched form with its X and Y bindings
    """
    candidates = _candidates(_as_expr(c))
    if not candidates:
        return None
    best = candidates[0]
    if best.form == _INCOMPATIBILITY_1:
        alternative = next((m for m in candidates if m.form == _INCOMPATIBILITY_3), None)
        key = _order_key(variable_order)
        if alternative is not None and key(variables_of(best.x)[0]) > key(variables_of(best.y)[0]):
            return alternative
    return best


def recommend(c: Constraint, variable_order: Optional[Sequence[str]] = None) -> Optional[RefactoringSuggestion]:
    """
    Suggest rewriting a constraint into form 1 of its family.

    The rewrite must itself read as a form 1. `B -> not A` reads as
    incompatibility/3 when B's variable comes after A's, so it is written
    as the equivalent `A -> not B` instead; a requires relation whose Y is
    a negation ends up in incompatibility/1 the same way. Returns None
    when the constraint matches no form, is already in form 1, no form 1
    reading exists, or the form 1 reached has a higher error rate than
    the matched form (`not Y <- not X` read as incompatibility/5 ends in
    requires/1).
    """
    matched = classify(c, variable_order)
    if matched is None or matched.index == 1:
        return None

    rewritten = canonical_form(matched.family).instantiate(matched.x, matched.y)
    reread = classify(rewritten, variable_order)
    if reread.index != 1:
        rewritten = canonical_form(reread.family).instantiate(reread.x, reread.y)
        reread = classify(rewritten, variable_order)
    if reread.index != 1:
        logger.debug(f"No form 1 rewrite for {c.id}: result reads as {reread.form.key}")
        return None
    if reread.form.error_rate > matched.form.error_rate:
        logger.debug(f"No rewrite for {c.id}: {reread.form.key} scores worse than {matched.form.key}")
        return None

    return RefactoringSuggestion(
        constraint_id=c.id,
        matched=matched.form,
        target=reread.form,
        original=c.expr,
        rewritten=rewritten,
    )


def refactor_kb(kb: KnowledgeBase, bound: Optional[int] = None) -> RefactoringResult:
    """
    Apply every verified refactoring suggestion to a knowledge base.

    Args:
        kb: Knowledge base to refactor
        bound: State-space bound for each equivalence check

    Returns:
        RefactoringResult: New knowledge base, applied suggestions in
            declaration order, and rejected/skipped constraints with reasons
    """
    result = kb
    applied, rejected, skipped = [], [], []
    order = kb.variable_names

    for constraint in kb.constraints:
        suggestion = recommend(constraint, order)
        if suggestion is None:
            continue
        try:
            counterexample = find_counterexample(suggestion.original, suggestion.rewritten, kb, bound)
        except StateSpaceExceededError as exc:
            logger.warning(f"Skipping {constraint.id}: {exc}")
            skipped.append(SkippedConstraint(constraint.id, str(exc)))
            continue
        if counterexample is not None:
            reason = f"rewrite differs on {counterexample}"
            logger.warning(f"Rejecting rewrite of {constraint.id}: {reason}")
            rejected.append(SkippedConstraint(constraint.id, reason))
            continue

        result = result.replace_constraint(constraint.id, suggestion.rewritten)
        applied.append(suggestion)

    logger.info(f"Refactored {len(applied)} of {len(kb.constraints)} constraints")
    return RefactoringResult(
        knowledge_base=result,
        suggestions=tuple(applied),
        rejected=tuple(rejected),
        skipped=tuple(skipped),
    )
