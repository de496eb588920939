"""
Pairwise constraint similarity.

The variable metric compares which variables two constraints share and
whether they appear at the same position:

    sim(a, b) = sum(co_occurrence(v, a, b) for v in V) / |V|
    V = variables(a) | variables(b)

The operator metric is the Jaccard index of the two operator multisets.
"""

import csv
import io
import logging
from fractions import Fraction
from typing import Union

import numpy as np

from knowledge_base.expressions import operator_multiset, variable_occurrences
from knowledge_base.models import Constraint, KnowledgeBase

from .exceptions import MatrixFormatError, UndefinedSimilarityError
from .models import Metric, SimilarityMatrix

logger = logging.getLogger(__name__)

_MISSING = {'', '-'}


def _co_occurrence(position_a, position_b) -> Fraction:
    if position_a is None or position_b is None:
        return Fraction(0)
    return Fraction(1) if position_a == position_b else Fraction(1, 2)


def co_occurrence(variable: str, c_a: Constraint, c_b: Constraint) -> Fraction:
    """1 if the variable sits at the same position in both, 1/2 if in both elsewhere, else 0."""
    return _co_occurrence(
        dict(variable_occurrences(c_a)).get(variable),
        dict(variable_occurrences(c_b)).get(variable),
    )


def variable_similarity(c_a: Constraint, c_b: Constraint) -> Fraction:
    positions_a = dict(variable_occurrences(c_a))
    positions_b = dict(variable_occurrences(c_b))
    union = list(dict.fromkeys([*positions_a, *positions_b]))
    if not union:
        raise UndefinedSimilarityError(
            f"Similarity of '{getattr(c_a, 'id', c_a)}' and '{getattr(c_b, 'id', c_b)}' "
            "is undefined: neither references a variable"
        )

    total = sum(
        (_co_occurrence(positions_a.get(variable), positions_b.get(variable)) for variable in union),
        Fraction(0),
    )
    return total / len(union)


def operator_similarity(c_a: Constraint, c_b: Constraint) -> Fraction:
    ops_a = operator_multiset(c_a)
    ops_b = operator_multiset(c_b)
    union = sum((ops_a | ops_b).values())
    if union == 0:
        return Fraction(1)
    return Fraction(sum((ops_a & ops_b).values()), union)


_METRICS = {
    Metric.VARIABLE: variable_similarity,
    Metric.OPERATOR: operator_similarity,
}


def similarity_matrix(kb: KnowledgeBase, metric: Union[Metric, str] = Metric.VARIABLE) -> SimilarityMatrix:
    """
    Full symmetric similarity matrix over the knowledge base's constraints.

    Args:
        kb: Knowledge base with at least one constraint
        metric: 'variable' or 'operator'

    Returns:
        SimilarityMatrix: Rows and columns in declaration order

    Raises:
        UndefinedSimilarityError: If a pair of constraints references no variables
    """
    metric = Metric(metric)
    if metric not in _METRICS:
        raise MatrixFormatError(f"Cannot compute a '{metric.value}' similarity matrix")
    if not kb.constraints:
        raise MatrixFormatError('Knowledge base has no constraints to compare')

    similarity = _METRICS[metric]
    n = len(kb.constraints)
    values = np.empty((n, n), dtype=object)
    for i, c_a in enumerate(kb.constraints):
        for j in range(i + 1):
            values[i, j] = values[j, i] = similarity(c_a, kb.constraints[j])

    logger.debug(f"Computed {metric.value} similarity matrix for {n} constraints")
    return SimilarityMatrix(kb.constraint_ids, values, metric)


def format_value(value: Fraction) -> str:
    """Shortest decimal text of a similarity (1/3 -> 0.3333333333333333, 33/100 -> 0.33)."""
    return repr(float(value))


def _parse_cell(text: str, row_id: str, column_id: str, line: int) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise MatrixFormatError(
            f"line {line}: similarity ({row_id}, {column_id}) is not a number: {text!r}"
        ) from None
    return value


def load_matrix(source: str, metric: Union[Metric, str] = Metric.EXTERNAL) -> SimilarityMatrix:
    """
    Read a similarity matrix from CSV.

    The first row holds the constraint ids (its first cell is a label and
    is ignored); every further row starts with a constraint id in the same
    order. Blank or '-' cells are taken from the mirrored cell, so a lower
    triangular table can be loaded as-is.

    Raises:
        MatrixFormatError: On ragged rows, mismatched ids, missing pairs or
            values that break symmetry or the [0, 1] range
    """
    rows = [row for row in csv.reader(io.StringIO(source)) if any(cell.strip() for cell in row)]
    if not rows:
        raise MatrixFormatError('Similarity matrix is empty')

    header, *body = rows
    ids = [cell.strip() for cell in header[1:]]
    if not ids:
        raise MatrixFormatError('Similarity matrix header lists no constraint ids')
    if len(body) != len(ids):
        raise MatrixFormatError(f"Expected {len(ids)} matrix rows, found {len(body)}")

    n = len(ids)
    cells = [[None] * n for _ in range(n)]
    for i, row in enumerate(body):
        line = i + 2
        row_id, *texts = [cell.strip() for cell in row]
        if row_id != ids[i]:
            raise MatrixFormatError(f"line {line}: expected row '{ids[i]}', found '{row_id}'")
        if len(texts) > n:
            raise MatrixFormatError(f"line {line}: row has {len(texts)} values for {n} constraints")
        texts += [''] * (n - len(texts))
        for j, text in enumerate(texts):
            if text not in _MISSING:
                cells[i][j] = _parse_cell(text, ids[i], ids[j], line)

    for i in range(n):
        for j in range(n):
            if cells[i][j] is None:
                cells[i][j] = cells[j][i]
            if cells[i][j] is None:
                raise MatrixFormatError(f"No similarity given for ({ids[i]}, {ids[j]})")

    return SimilarityMatrix(tuple(ids), cells, Metric(metric))


def dump_matrix(matrix: SimilarityMatrix) -> str:
    """CSV text with a header row and column of constraint ids."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['', *matrix.constraint_ids])
    for constraint_id, row in zip(matrix.constraint_ids, matrix.values):
        writer.writerow([constraint_id, *(format_value(value) for value in row)])
    return buffer.getvalue()
