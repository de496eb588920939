"""
Unit tests for the knowledge-base text format.
"""

import numpy as np
import pytest

from knowledge_base.exceptions import ParseErrorKind, ParseErrors
from knowledge_base.generators import generate_random_kb
from knowledge_base.models import (
    And,
    Comparison,
    ImpliedBy,
    Implies,
    KnowledgeBase,
    Not,
    Operator,
    Or,
)
from knowledge_base.parser import (
    KnowledgeBaseParser,
    format_expr,
    parse_expr,
    parse_kb,
    serialize_kb,
)


def eq(var, value):
    return Comparison(var, Operator.EQ, value)


@pytest.mark.unit
class TestParseKnowledgeBase:
    """Test cases for parse_kb on valid input."""

    def test_example_kb(self, example_kb):
        """Test the seven-constraint example."""
        assert len(example_kb.variables) == 5
        assert len(example_kb.constraints) == 7
        assert example_kb.constraint('c1').expr == Implies(eq('v1', 3), Comparison('v2', Operator.GT, 1))
        assert example_kb.constraint('c5').expr == Implies(
            eq('v3', 1),
            And(eq('v4', 2), Comparison('v1', Operator.GT, 'v5')),
        )

    def test_enumerated_domain_sorted_and_deduplicated(self):
        """Test `{...}` domains."""
        kb = parse_kb('var v1 in {5, 1, 3, 1};')

        assert kb.variable('v1').domain == (1, 3, 5)

    def test_comments_and_blank_statements(self):
        """Test that comments and empty statements are ignored."""
        kb = parse_kb('# header\nvar v1 in 1..2; # trailing ; comment\n;\nconstraint c1: v1 = 1;\n')

        assert kb.constraint_ids == ('c1',)

    def test_variable_declared_after_use(self):
        """Test that declarations may follow the constraints using them."""
        kb = parse_kb('constraint c1: v1 = 1;\nvar v1 in 1..2;')

        assert kb.variable_names == ('v1',)

    def test_precedence(self):
        """Test not > and > or > implication."""
        expr = parse_expr('not v1 = 1 and v2 = 2 or v3 = 3 -> v4 = 4')

        assert expr == Implies(
            Or(And(Not(eq('v1', 1)), eq('v2', 2)), eq('v3', 3)),
            eq('v4', 4),
        )

    def test_implication_is_right_associative(self):
        """Test `a -> b -> c`."""
        assert parse_expr('v1 = 1 -> v2 = 2 -> v3 = 3') == Implies(eq('v1', 1), Implies(eq('v2', 2), eq('v3', 3)))
        assert parse_expr('v1 = 1 <- v2 = 2 <- v3 = 3') == ImpliedBy(eq('v1', 1), ImpliedBy(eq('v2', 2), eq('v3', 3)))

    def test_negative_values(self):
        """Test signed integer constants."""
        kb = parse_kb('var t in -2..2;\nconstraint c1: t > -1;')

        assert kb.variable('t').domain == (-2, -1, 0, 1, 2)
        assert kb.constraint('c1').expr == Comparison('t', Operator.GT, -1)

    def test_bytes_input(self, example_kb_source, example_kb):
        """Test that UTF-8 bytes parse like text."""
        assert parse_kb(example_kb_source.encode('utf-8')) == example_kb

    def test_empty_source(self):
        """Test that an empty file is an empty knowledge base."""
        assert parse_kb('') == KnowledgeBase()


@pytest.mark.unit
class TestParseErrors:
    """Test cases for error reporting."""

    def test_unknown_variable_position(self):
        """Test line and column of an undeclared variable."""
        with pytest.raises(ParseErrors) as excinfo:
            parse_kb('var v1 in 1..5;\nconstraint c1: v1 = 3 -> v9 > 1;\n')

        [error] = excinfo.value.errors
        assert error.kind == ParseErrorKind.UNKNOWN_VARIABLE
        assert (error.line, error.column) == (2, 26)
        assert 'v9' in error.message

    def test_all_errors_in_one_pass(self):
        """Test that errors in several statements are reported together, in source order."""
        source = (
            'var v1 in 1..5;\n'
            'var v1 in 1..3;\n'
            'constraint c1: v1 = ;\n'
            'constraint c2: v2 = 1;\n'
        )
        with pytest.raises(ParseErrors) as excinfo:
            parse_kb(source)

        assert excinfo.value.kinds == [
            ParseErrorKind.DUPLICATE_ID,
            ParseErrorKind.SYNTAX,
            ParseErrorKind.UNKNOWN_VARIABLE,
        ]
        assert [error.line for error in excinfo.value.errors] == [2, 3, 4]

    def test_duplicate_constraint_id(self):
        """Test duplicate constraint ids."""
        with pytest.raises(ParseErrors) as excinfo:
            parse_kb('var v1 in 1..2;\nconstraint c1: v1 = 1;\nconstraint c1: v1 = 2;')

        assert excinfo.value.kinds == [ParseErrorKind.DUPLICATE_ID]

    @pytest.mark.parametrize('declaration', ['var v1 in 5..1;', 'var v1 in {};'])
    def test_empty_domain(self, declaration):
        """Test empty intervals and enumerations."""
        with pytest.raises(ParseErrors) as excinfo:
            parse_kb(declaration)

        assert excinfo.value.kinds == [ParseErrorKind.EMPTY_DOMAIN]

    def test_oversized_domain(self):
        """Test the domain size limit."""
        with pytest.raises(ParseErrors) as excinfo:
            KnowledgeBaseParser(max_domain_size=10).parse('var v1 in 1..11;')

        assert excinfo.value.kinds == [ParseErrorKind.OVERSIZED_DOMAIN]

    def test_missing_semicolon(self):
        """Test an unterminated final statement."""
        with pytest.raises(ParseErrors) as excinfo:
            parse_kb('var v1 in 1..5')

        assert "missing ';'" in str(excinfo.value)

    def test_mixed_arrows_need_parentheses(self):
        """Test that `->` and `<-` cannot be chained."""
        with pytest.raises(ParseErrors):
            parse_expr('v1 = 1 -> v2 = 2 <- v3 = 3')

    def test_invalid_utf8(self):
        """Test that undecodable bytes are a parse error."""
        with pytest.raises(ParseErrors, match='UTF-8'):
            parse_kb(b'var v1 in 1..2;\n\xff')

    def test_error_to_dict(self):
        """Test the JSON shape of a parse error."""
        with pytest.raises(ParseErrors) as excinfo:
            parse_kb('var v1 in 1..2;\nconstraint c1: v2 = 1;')

        assert excinfo.value.errors[0].to_dict() == {
            'line': 2,
            'column': 16,
            'message': "unknown variable 'v2'",
            'kind': 'unknown-variable',
        }


@pytest.mark.unit
class TestFormatting:
    """Test cases for format_expr and serialize_kb."""

    @pytest.mark.parametrize('text', [
        'v1 = 3 -> v2 > 1',
        'v3 = 1 -> v4 = 2 and v1 > v5',
        'v5 = 1 -> v3 = 2 or v3 = 3',
        'not (v1 = 1 and not v2 = 2)',
        '(v1 = 1 -> v2 = 2) -> v3 = 3',
        'v1 = 1 -> (v2 = 2 <- v3 = 3)',
        'v1 = 1 and (v2 = 2 and v3 = 3)',
        'not not v1 = 1',
    ])
    def test_canonical_text_is_stable(self, text):
        """Test that canonical text parses back to the same tree and text."""
        expr = parse_expr(text)

        assert format_expr(expr) == text
        assert parse_expr(format_expr(expr)) == expr

    def test_serialize_example(self, example_kb):
        """Test compact interval output and statement order."""
        text = serialize_kb(example_kb)

        assert text.splitlines()[0] == 'var v1 in 1..5;'
        assert text.splitlines()[5] == 'constraint c1: v1 = 3 -> v2 > 1;'
        assert parse_kb(text) == example_kb

    def test_serialize_enumeration(self):
        """Test non-contiguous domains."""
        kb = parse_kb('var v1 in {1, 3};')

        assert serialize_kb(kb) == 'var v1 in {1, 3};\n'


@pytest.mark.unit
@pytest.mark.slow
class TestRoundTrip:
    """Property tests over random knowledge bases."""

    def test_parse_serialize_identity(self):
        """Test parse(serialize(kb)) == kb on 1000 random knowledge bases."""
        for seed in range(1000):
            kb = generate_random_kb(seed)

            assert parse_kb(serialize_kb(kb)) == kb, f"seed {seed}"

    def test_fuzz_never_crashes(self):
        """Test that arbitrary text yields a knowledge base or ParseErrors, nothing else."""
        alphabet = list('varconstintdemobl vcx0123456789-+<>=!(){},.;:#\n\t') + ['->', '<-', ' and ', ' or ', 'not ']
        rng = np.random.default_rng(0)
        for _ in range(500):
            text = ''.join(rng.choice(alphabet, size=int(rng.integers(0, 80))))
            try:
                result = parse_kb(text)
            except ParseErrors as exc:
                assert exc.errors
            else:
                assert isinstance(result, KnowledgeBase)

    def test_fuzz_bytes_never_crash(self):
        """Test raw byte input."""
        rng = np.random.default_rng(1)
        for _ in range(500):
            data = rng.bytes(int(rng.integers(0, 64)))
            try:
                parse_kb(data)
            except ParseErrors as exc:
                assert exc.errors
