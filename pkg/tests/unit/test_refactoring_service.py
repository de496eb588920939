"""
Unit tests for refactoring classification, recommendation and equivalence checks.
"""

from decimal import Decimal

import pytest

from knowledge_base.exceptions import InvalidKnowledgeBaseError
from knowledge_base.generators import KnowledgeBaseGenerator, generate_random_kb
from knowledge_base.models import Constraint, Not, Variable
from knowledge_base.parser import format_expr, parse_expr, parse_kb
from refactoring.catalog import CATALOG, Family, family_forms, get_form
from refactoring.equivalence import (
    assignments,
    check_equivalence,
    find_counterexample,
)
from refactoring.exceptions import StateSpaceExceededError
from refactoring.models import RefactoringSuggestion
from refactoring.services import classify, recommend, refactor_kb
from tests.utils.oracles import solution_set

X_TEXT = 'v1 = 1'
Y_TEXT = 'v2 = 2'
DOMAINS = [Variable('v1', (1, 2, 3)), Variable('v2', (1, 2, 3))]

# Every form instantiated with X := v1 = 1 and Y := v2 = 2
FORM_TEXT = {
    'requires/1': 'v1 = 1 -> v2 = 2',
    'requires/2': 'not v1 = 1 or v2 = 2',
    'requires/3': 'not v2 = 2 -> not v1 = 1',
    'requires/4': 'not (v1 = 1 and not v2 = 2)',
    'requires/5': 'v2 = 2 <- v1 = 1',
    'incompatibility/1': 'v1 = 1 -> not v2 = 2',
    'incompatibility/2': 'not v1 = 1 or not v2 = 2',
    'incompatibility/3': 'v2 = 2 -> not v1 = 1',
    'incompatibility/4': 'not (v1 = 1 and v2 = 2)',
    'incompatibility/5': 'not v2 = 2 <- v1 = 1',
}

REQUIRES_KB = """\
var v1 in 1..3;
var v2 in 1..3;
constraint r1: v1 = 1 -> v2 = 2;
constraint r2: not v1 = 1 or v2 = 2;
constraint r3: not v2 = 2 -> not v1 = 1;
constraint r4: not (v1 = 1 and not v2 = 2);
constraint r5: v2 = 2 <- v1 = 1;
"""


def constraint(text, cid='c1'):
    return Constraint(cid, parse_expr(text))


@pytest.mark.unit
class TestClassify:
    """Test cases for classify."""

    @pytest.mark.parametrize('key', sorted(FORM_TEXT))
    def test_every_form_recognised(self, key):
        """Test that each instantiated template reads as itself."""
        matched = classify(parse_expr(FORM_TEXT[key]))

        assert matched.form.key == key
        assert matched.x == parse_expr(X_TEXT)
        assert matched.y == parse_expr(Y_TEXT)

    def test_template_text_matches_instantiation(self):
        """Test that the table above is each form's own instantiation."""
        for form in CATALOG:
            assert format_expr(form.instantiate(parse_expr(X_TEXT), parse_expr(Y_TEXT))) == FORM_TEXT[form.key]

    def test_negated_consequent_is_incompatibility(self):
        """Test that `X -> not Y` is not read as a requires relation."""
        assert classify(parse_expr('v1 = 1 -> not v2 = 2')).family is Family.INCOMPATIBILITY

    def test_unmatched(self, example_kb):
        """Test that a plain conjunction matches no form."""
        assert classify(example_kb.constraint('c2')) is None

    def test_declaration_order_orients_incompatibility(self):
        """Test that the variable order decides between forms 1 and 3."""
        expr = parse_expr('b = 1 -> not a = 1')

        assert classify(expr, ['a', 'b']).index == 3
        assert classify(expr, ['b', 'a']).index == 1


@pytest.mark.unit
class TestRecommend:
    """Test cases for recommend."""

    def test_requires_four(self):
        """Test the double-negation form."""
        suggestion = recommend(constraint('not (v1 = 1 and not v2 = 2)'))

        assert suggestion.matched.key == 'requires/4'
        assert suggestion.target.key == 'requires/1'
        assert format_expr(suggestion.rewritten) == 'v1 = 1 -> v2 = 2'
        assert suggestion.score_delta == Decimal('51.65')

    def test_reverse_implication(self):
        """Test `Y <- X`."""
        suggestion = recommend(constraint('v2 = 2 <- v1 = 1'))

        assert format_expr(suggestion.rewritten) == 'v1 = 1 -> v2 = 2'
        assert suggestion.score_delta == Decimal('3.57')

    def test_form_one_unchanged(self):
        """Test that form 1 needs no refactoring."""
        assert recommend(constraint('v1 = 1 -> v2 = 2')) is None
        assert recommend(constraint('v1 = 1 -> not v2 = 2')) is None

    def test_unmatched(self):
        """Test a constraint of no catalog shape."""
        assert recommend(constraint('v1 = 1 and v2 = 2')) is None

    def test_incompatibility_oriented_by_declaration(self):
        """Test that `not B or not A` becomes `A -> not B` when A is declared first."""
        suggestion = recommend(constraint('not v2 = 1 or not v1 = 1'), ['v1', 'v2'])

        assert format_expr(suggestion.rewritten) == 'v1 = 1 -> not v2 = 1'
        assert suggestion.target.key == 'incompatibility/1'
        assert suggestion.score_delta == Decimal('20.33')

    def test_requires_with_negated_consequent(self):
        """Test that requiring a negation ends in incompatibility form 1."""
        suggestion = recommend(constraint('not (v1 = 1 and not not v2 = 2)'))

        assert suggestion.matched.key == 'requires/4'
        assert format_expr(suggestion.rewritten) == 'v1 = 1 -> not v2 = 2'
        assert suggestion.target.key == 'incompatibility/1'
        assert suggestion.score_delta == Decimal('58.79')

    def test_no_rewrite_into_worse_form(self):
        """Test that `not Y <- not X` is left alone rather than moved to requires/1."""
        c = constraint('not v2 = 2 <- not v1 = 1')

        assert classify(c).form.key == 'incompatibility/5'
        assert recommend(c) is None

    @pytest.mark.parametrize('key', sorted(FORM_TEXT))
    def test_rewrite_is_stable(self, key):
        """Test that recommending on a rewritten constraint suggests nothing."""
        suggestion = recommend(constraint(FORM_TEXT[key]))
        if suggestion is None:
            return

        assert recommend(Constraint('c1', suggestion.rewritten)) is None
        assert suggestion.score_delta >= 0

    @pytest.mark.parametrize('key', sorted(FORM_TEXT))
    def test_rewrite_is_equivalent(self, key):
        """Test that every suggested rewrite keeps the semantics."""
        suggestion = recommend(constraint(FORM_TEXT[key]))
        if suggestion is None:
            return

        assert check_equivalence(suggestion.original, suggestion.rewritten, DOMAINS)

    def test_suggestion_round_trip(self):
        """Test to_dict/from_dict."""
        suggestion = recommend(constraint('not (v1 = 1 and not v2 = 2)'))
        data = suggestion.to_dict()

        assert data['score_delta'] == '51.65'
        assert RefactoringSuggestion.from_dict(data) == suggestion


@pytest.mark.unit
class TestEquivalence:
    """Test cases for check_equivalence and find_counterexample."""

    def test_material_implication(self):
        """Test `a -> b` against `not a or b`."""
        a = parse_expr('v1 = 3 -> v2 > 1')
        b = parse_expr('not v1 = 3 or v2 > 1')
        variables = [Variable('v1', range(1, 6)), Variable('v2', range(1, 6))]

        assert check_equivalence(a, b, variables)

    def test_counterexample(self):
        """Test two implications that differ on one assignment."""
        a = parse_expr('v1 = 3 -> v2 > 1')
        b = parse_expr('v1 = 3 -> v2 > 2')
        variables = [Variable('v1', range(1, 6)), Variable('v2', range(1, 6))]

        assert find_counterexample(a, b, variables) == {'v1': 3, 'v2': 2}

    @pytest.mark.parametrize('size', [2, 3, 5])
    @pytest.mark.parametrize('family', list(Family), ids=lambda family: family.value)
    def test_family_members_equivalent(self, family, size):
        """Test every pair of forms of one family over domains of the given size."""
        x, y = parse_expr(X_TEXT), parse_expr(Y_TEXT)
        variables = [Variable('v1', range(1, size + 1)), Variable('v2', range(1, size + 1))]
        forms = family_forms(family)

        for i, first in enumerate(forms):
            for second in forms[i + 1:]:
                assert check_equivalence(first.instantiate(x, y), second.instantiate(x, y), variables), \
                    f"{first.key} vs {second.key}"

    def test_requires_is_not_incompatibility(self):
        """Test that the two families differ."""
        x, y = parse_expr(X_TEXT), parse_expr(Y_TEXT)

        assert not check_equivalence(
            get_form('requires/1').instantiate(x, y),
            get_form('incompatibility/1').instantiate(x, y),
            DOMAINS,
        )

    def test_state_space_bound(self):
        """Test that enumeration refuses oversized spaces."""
        with pytest.raises(StateSpaceExceededError) as excinfo:
            list(assignments(['v1', 'v2'], [(1, 2, 3), (1, 2, 3)], bound=8))

        assert excinfo.value.size == 9

    def test_bound_from_settings(self, settings):
        """Test the KBTOOL_EQUIVALENCE_BOUND default."""
        settings.KBTOOL_EQUIVALENCE_BOUND = 4
        a, b = parse_expr(X_TEXT), parse_expr(Y_TEXT)

        with pytest.raises(StateSpaceExceededError):
            check_equivalence(a, b, DOMAINS)

    def test_missing_domain(self):
        """Test a referenced variable without a domain."""
        with pytest.raises(InvalidKnowledgeBaseError):
            check_equivalence(parse_expr('v1 = 1'), parse_expr('v9 = 1'), DOMAINS)


@pytest.mark.unit
class TestRefactorKb:
    """Test cases for refactor_kb."""

    def test_requires_variants_collapse(self):
        """Test that all five requires variants become `X -> Y`."""
        kb = parse_kb(REQUIRES_KB)

        new_kb, suggestions = refactor_kb(kb)

        assert [s.constraint_id for s in suggestions] == ['r2', 'r3', 'r4', 'r5']
        assert {format_expr(c.expr) for c in new_kb.constraints} == {'v1 = 1 -> v2 = 2'}

    def test_solution_set_preserved(self, example_kb):
        """Test that the example knowledge base keeps every solution."""
        result = refactor_kb(example_kb)

        assert solution_set(result.knowledge_base) == solution_set(example_kb)

    def test_solution_set_preserved_for_form_kbs(self):
        """Test generated knowledge bases written in every form."""
        from knowledge_base.generators import STUDY_SHAPES, generate_kb

        for form in CATALOG:
            kb = generate_kb(STUDY_SHAPES['kbb2'], seed=3, form=form)
            result = refactor_kb(kb)

            assert solution_set(result.knowledge_base) == solution_set(kb), form.key
            assert all(recommend(c, kb.variable_names) is None for c in result.knowledge_base.constraints)

    def test_worse_form_left_untouched(self):
        """Test that no applied rewrite raises the error rate."""
        kb = parse_kb('var v1 in 1..3;\nvar v2 in 1..3;\nconstraint c1: not v2 = 2 <- not v1 = 1;\n')

        result = refactor_kb(kb)

        assert result.suggestions == ()
        assert result.knowledge_base == kb

    def test_empty_kb(self):
        """Test a knowledge base without constraints."""
        result = refactor_kb(parse_kb('var v1 in 1..2;'))

        assert result.suggestions == ()
        assert result.knowledge_base == parse_kb('var v1 in 1..2;')

    def test_oversized_state_space_skipped(self, caplog):
        """Test that unverifiable rewrites are skipped with a warning."""
        kb = parse_kb(REQUIRES_KB)

        result = refactor_kb(kb, bound=8)

        assert result.suggestions == ()
        assert [item.constraint_id for item in result.skipped] == ['r2', 'r3', 'r4', 'r5']
        assert result.knowledge_base == kb
        assert 'Skipping r2' in caplog.text

    def test_result_to_dict(self):
        """Test the JSON shape of a result."""
        data = refactor_kb(parse_kb(REQUIRES_KB)).to_dict()

        assert data['suggestions'][0]['matched'] == 'requires/2'
        assert data['rejected'] == []
        assert data['skipped'] == []


@pytest.mark.unit
@pytest.mark.slow
class TestRecommendOnRandomRelations:
    """Property tests over every form instantiated with random sub-expressions."""

    def test_suggestions_improve_and_are_stable(self):
        """Test non-negative deltas, idempotence and equivalence for 200 random knowledge bases."""
        for seed in range(200):
            kb = generate_random_kb(seed, max_states=256)
            generator = KnowledgeBaseGenerator(seed, max_depth=2)
            order = kb.variable_names

            for form in CATALOG:
                x, y = generator.expression(kb.variables), generator.expression(kb.variables)
                if generator.rng.random() < 0.5:
                    x = Not(x)
                if generator.rng.random() < 0.5:
                    y = Not(y)
                suggestion = recommend(Constraint('c', form.instantiate(x, y)), order)
                if suggestion is None:
                    continue

                assert suggestion.score_delta >= 0, f"seed {seed}, {form.key}"
                assert suggestion.target.index == 1
                assert recommend(Constraint('c', suggestion.rewritten), order) is None, f"seed {seed}, {form.key}"
                assert check_equivalence(suggestion.original, suggestion.rewritten, kb.variables)
