"""
Text DSL for knowledge bases.

    # comments run to the end of the line
    var v1 in 1..5;
    var v2 in {1, 3, 5};
    constraint c1: v1 = 3 -> v2 > 1;

Operator precedence, tightest first: comparisons, `not`, `and`, `or`,
`->` / `<-`. Implication chains are right-associative and a chain may not
mix `->` with `<-` without parentheses.

The source is split into `;`-terminated statements which are parsed one
at a time with a Lark LALR parser, so every statement's problems are
reported in a single pass.
"""

import bisect
import functools
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import lark
from django.conf import settings
from lark import Transformer, v_args

from .exceptions import ParseError, ParseErrorKind, ParseErrors
from .models import (
    And,
    BinaryExpr,
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

logger = logging.getLogger(__name__)

DEFAULT_MAX_DOMAIN_SIZE = 10_000

_COMMENT = re.compile(r'#[^\n]*')


@functools.cache
def _parser() -> lark.Lark:
    """Create/retrieve a singleton Lark parser for single statements."""
    return lark.Lark.open('grammar.lark', rel_to=__file__, parser='lalr', start='statement')


# ─── Statement transformer ─────────────────────────────────────────────────────

@dataclass
class _VariableDecl:
    name: lark.Token
    bounds: Optional[Tuple[int, int]] = None
    values: Tuple[int, ...] = ()


@dataclass
class _ConstraintDecl:
    id: lark.Token
    expr: Expr
    references: List[lark.Token] = field(default_factory=list)


class _StatementTransformer(Transformer):
    """Turns a Lark statement tree into declarations over kb-model nodes."""

    def __init__(self):
        super().__init__()
        self.references: List[lark.Token] = []

    def statement(self, children):
        return children[0]

    def var_decl(self, children):
        name, domain = children
        domain.name = name
        return domain

    def interval(self, children):
        low, high = children
        return _VariableDecl(name=None, bounds=(int(low), int(high)))

    def enumeration(self, children):
        return _VariableDecl(name=None, values=tuple(int(token) for token in children))

    def constraint_decl(self, children):
        constraint_id, expr = children
        return _ConstraintDecl(id=constraint_id, expr=expr, references=self.references)

    def comparison(self, children):
        name, comparator, operand = children
        self.references.append(name)
        if operand.type == 'NAME':
            self.references.append(operand)
            value = str(operand)
        else:
            value = int(operand)
        return Comparison(str(name), Operator(str(comparator)), value)

    @v_args(inline=True)
    def not_(self, child):
        return Not(child)

    @v_args(inline=True)
    def and_(self, left, right):
        return And(left, right)

    @v_args(inline=True)
    def or_(self, left, right):
        return Or(left, right)

    @v_args(inline=True)
    def implies(self, left, right):
        return Implies(left, right)

    @v_args(inline=True)
    def implied_by(self, left, right):
        return ImpliedBy(left, right)


# ─── Source positions ──────────────────────────────────────────────────────────

class _LineIndex:
    """Converts character offsets into 1-based (line, column) pairs."""

    def __init__(self, text: str):
        self.line_starts = [0] + [match.end() for match in re.finditer('\n', text)]

    def position(self, offset: int) -> Tuple[int, int]:
        line = bisect.bisect_right(self.line_starts, offset)
        return line, offset - self.line_starts[line - 1] + 1


def _split_statements(masked: str):
    """Yield (offset, text, terminated) for every `;`-separated statement."""
    start = 0
    for match in re.finditer(';', masked):
        yield start, masked[start:match.start()], True
        start = match.end()
    yield start, masked[start:], False


def _syntax_message(exc: lark.exceptions.UnexpectedInput) -> str:
    if isinstance(exc, lark.exceptions.UnexpectedCharacters):
        return f"unexpected character {exc.char!r}"
    if isinstance(exc, lark.exceptions.UnexpectedEOF):
        return 'unexpected end of statement'
    if isinstance(exc, lark.exceptions.UnexpectedToken):
        if exc.token.type == '$END':
            return 'unexpected end of statement'
        return f"unexpected {str(exc.token)!r}"
    return 'invalid syntax'


def _error_offset(exc: lark.exceptions.UnexpectedInput, default: int) -> int:
    if isinstance(exc, lark.exceptions.UnexpectedToken) and exc.token.start_pos is not None:
        return exc.token.start_pos
    position = getattr(exc, 'pos_in_stream', None)
    if position is None or position < 0:
        return default
    return position


# ─── parse_kb / serialize_kb ───────────────────────────────────────────────────

class KnowledgeBaseParser:
    """
    Parses knowledge-base source text.
    Collects every syntax and semantic error before raising.
    """

    def __init__(self, max_domain_size: Optional[int] = None):
        if max_domain_size is None:
            max_domain_size = getattr(settings, 'KBTOOL_MAX_DOMAIN_SIZE', DEFAULT_MAX_DOMAIN_SIZE)
        self.max_domain_size = max_domain_size

    def parse(self, source: Union[str, bytes]) -> KnowledgeBase:
        """
        Parse source text into a KnowledgeBase.

        Args:
            source: KB text (bytes are decoded as UTF-8)

        Returns:
            KnowledgeBase: Declarations in source order

        Raises:
            ParseErrors: Every error found, in source order
        """
        if isinstance(source, bytes):
            try:
                source = source.decode('utf-8')
            except UnicodeDecodeError as exc:
                line = source[:exc.start].count(b'\n') + 1
                column = exc.start - (source.rfind(b'\n', 0, exc.start) + 1) + 1
                raise ParseErrors([ParseError(line, column, 'source is not valid UTF-8')]) from None

        index = _LineIndex(source)
        masked = _COMMENT.sub(lambda match: ' ' * len(match.group()), source)
        errors: List[ParseError] = []
        declarations = []

        for offset, text, terminated in _split_statements(masked):
            if not text.strip():
                continue
            if not terminated:
                errors.append(ParseError(*index.position(offset + len(text.rstrip())), "missing ';'"))
            declaration = self._parse_statement(text, offset, index, errors)
            if declaration is not None:
                declarations.append((offset, declaration))

        variables, constraints = self._resolve(declarations, index, errors)

        if errors:
            logger.info(f"Knowledge base rejected with {len(errors)} error(s)")
            raise ParseErrors(errors)
        return KnowledgeBase(variables, constraints)

    def _parse_statement(self, text: str, offset: int, index: _LineIndex, errors: List[ParseError]):
        try:
            tree = _parser().parse(text)
            return _StatementTransformer().transform(tree)
        except lark.exceptions.UnexpectedInput as exc:
            position = offset + _error_offset(exc, len(text.rstrip()))
            errors.append(ParseError(*index.position(position), _syntax_message(exc)))
        except RecursionError:
            errors.append(ParseError(*index.position(offset), 'expression nested too deeply'))
        except lark.exceptions.LarkError as exc:
            errors.append(ParseError(*index.position(offset), f"invalid statement ({exc.__class__.__name__})"))
        return None

    def _resolve(self, declarations, index: _LineIndex, errors: List[ParseError]):
        variables: Dict[str, Variable] = {}
        constraints: Dict[str, Constraint] = {}
        pending_references = []

        def error_at(offset, token, message, kind):
            errors.append(ParseError(*index.position(offset + token.start_pos), message, kind))

        for offset, declaration in declarations:
            if isinstance(declaration, _VariableDecl):
                name = str(declaration.name)
                if name in variables:
                    error_at(offset, declaration.name, f"variable '{name}' is already declared",
                             ParseErrorKind.DUPLICATE_ID)
                    continue
                domain = self._domain(declaration, offset, error_at)
                if domain is not None:
                    variables[name] = Variable(name, domain)
            else:
                constraint_id = str(declaration.id)
                if constraint_id in constraints:
                    error_at(offset, declaration.id, f"constraint '{constraint_id}' is already declared",
                             ParseErrorKind.DUPLICATE_ID)
                    continue
                constraints[constraint_id] = Constraint(constraint_id, declaration.expr)
                pending_references.extend((offset, token) for token in declaration.references)

        # Variables may be declared after the constraints that use them
        declared = {str(d.name) for _, d in declarations if isinstance(d, _VariableDecl)}
        for offset, token in pending_references:
            if str(token) not in declared:
                error_at(offset, token, f"unknown variable '{token}'", ParseErrorKind.UNKNOWN_VARIABLE)

        return list(variables.values()), list(constraints.values())

    def _domain(self, declaration: _VariableDecl, offset: int, error_at) -> Optional[Tuple[int, ...]]:
        name = str(declaration.name)
        if declaration.bounds is not None:
            low, high = declaration.bounds
            size = high - low + 1
        else:
            values = tuple(sorted(set(declaration.values)))
            size = len(values)

        if size <= 0:
            error_at(offset, declaration.name, f"variable '{name}' has an empty domain",
                     ParseErrorKind.EMPTY_DOMAIN)
            return None
        if size > self.max_domain_size:
            error_at(offset, declaration.name,
                     f"domain of '{name}' has {size} values (limit {self.max_domain_size})",
                     ParseErrorKind.OVERSIZED_DOMAIN)
            return None
        if declaration.bounds is not None:
            return tuple(range(low, high + 1))
        return values


def parse_kb(source: Union[str, bytes]) -> KnowledgeBase:
    return KnowledgeBaseParser().parse(source)


_PRECEDENCE = {
    Implies: 1,
    ImpliedBy: 1,
    Or: 2,
    And: 3,
    Not: 4,
    Comparison: 5,
}


def _precedence(expr: Expr) -> int:
    return _PRECEDENCE[type(expr)]


def _wrap(expr: Expr, parenthesize: bool) -> str:
    text = format_expr(expr)
    return f"({text})" if parenthesize else text


def format_expr(expr: Expr) -> str:
    """Canonical text of an expression with the minimal parentheses that keep its shape."""
    if isinstance(expr, Comparison):
        return f"{expr.var} {expr.op.value} {expr.value}"
    if isinstance(expr, Not):
        return f"not {_wrap(expr.child, _precedence(expr.child) < 4)}"
    if isinstance(expr, (Implies, ImpliedBy)):
        # Right-associative; the other arrow always needs parentheses
        other = ImpliedBy if isinstance(expr, Implies) else Implies
        left = _wrap(expr.left, _precedence(expr.left) <= 1)
        right = _wrap(expr.right, isinstance(expr.right, other))
        return f"{left} {expr.operator.value} {right}"
    if isinstance(expr, BinaryExpr):
        level = _precedence(expr)
        left = _wrap(expr.left, _precedence(expr.left) < level)
        right = _wrap(expr.right, _precedence(expr.right) <= level)
        return f"{left} {expr.operator.value} {right}"
    raise TypeError(f"Not a constraint expression: {expr!r}")


def _format_domain(domain: Tuple[int, ...]) -> str:
    if len(domain) > 1 and domain == tuple(range(domain[0], domain[-1] + 1)):
        return f"{domain[0]}..{domain[-1]}"
    return '{' + ', '.join(str(value) for value in domain) + '}'


def serialize_kb(kb: KnowledgeBase) -> str:
    """Canonical text for a knowledge base; parse_kb(serialize_kb(kb)) == kb."""
    lines = [f"var {variable.name} in {_format_domain(variable.domain)};" for variable in kb.variables]
    lines += [f"constraint {constraint.id}: {format_expr(constraint.expr)};" for constraint in kb.constraints]
    return '\n'.join(lines) + '\n' if lines else ''


def parse_expr(text: str) -> Expr:
    """
    Parse a single constraint expression, e.g. `v1 = 3 -> v2 > 1`.
    Variables are not resolved against any declarations.

    Raises:
        ParseErrors: If the text is not one well-formed expression
    """
    prefix = 'constraint _: '
    errors: List[ParseError] = []
    index = _LineIndex(prefix + text)
    declaration = KnowledgeBaseParser()._parse_statement(prefix + text, 0, index, errors)
    if errors or declaration is None:
        raise ParseErrors(errors or [ParseError(1, 1, 'not an expression')])
    return declaration.expr
