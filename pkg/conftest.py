"""
Pytest configuration and shared fixtures.
This file is automatically loaded by pytest.
"""

import pytest

from clustering.similarity import load_matrix
from knowledge_base.parser import parse_kb
from navigation.log_service import parse_navigation_log


EXAMPLE_KB_SOURCE = """\
# Worked example: five variables, seven constraints
var v1 in 1..5;
var v2 in 1..5;
var v3 in 1..5;
var v4 in 1..5;
var v5 in 1..5;

constraint c1: v1 = 3 -> v2 > 1;
constraint c2: v1 = 3 and v3 = 1;
constraint c3: v2 = 2 -> v3 = 1;
constraint c4: v3 = 1 -> v1 != 1;
constraint c5: v3 = 1 -> (v4 = 2 and v1 > v5);
constraint c6: v4 >= 1 -> v5 <= 4;
constraint c7: v5 = 1 -> v3 = 2 or v3 = 3;
"""

# Rank in which each of four engineers visited c1..c6
NAVIGATION_LOG_SOURCE = """\
user,constraint,rank
1,c1,4
1,c2,2
1,c3,3
1,c4,5
1,c5,1
1,c6,6
2,c1,3
2,c2,2
2,c3,5
2,c4,6
2,c5,1
2,c6,4
3,c1,1
3,c2,3
3,c3,2
3,c4,4
3,c5,6
3,c6,5
4,c1,3
4,c2,2
4,c3,4
4,c4,5
4,c5,1
4,c6,6
"""

# Similarities rounded to two decimals, lower triangle only
ROUNDED_MATRIX_SOURCE = """\
,c1,c2,c3,c4,c5,c6,c7
c1,1.0,-,-,-,-,-,-
c2,0.33,1.0,-,-,-,-,-
c3,0.16,0.33,1.0,-,-,-,-
c4,0.16,0.5,0.16,1.0,-,-,-
c5,0.1,0.25,0.1,0.37,1.0,-,-
c6,0.0,0.0,0.0,0.0,0.12,1.0,-
c7,0.0,0.33,0.33,0.16,0.12,0.16,1.0
"""


@pytest.fixture
def example_kb_source():
    """
    Source text of the five-variable, seven-constraint example knowledge base.
    """
    return EXAMPLE_KB_SOURCE


@pytest.fixture
def example_kb():
    """
    The example knowledge base, parsed.
    """
    return parse_kb(EXAMPLE_KB_SOURCE)


@pytest.fixture
def navigation_log_source():
    """
    Navigation log of four engineers over c1..c6, as CSV.
    """
    return NAVIGATION_LOG_SOURCE


@pytest.fixture
def navigation_log():
    """
    The four-engineer navigation log, parsed.
    """
    return parse_navigation_log(NAVIGATION_LOG_SOURCE)


@pytest.fixture
def rounded_matrix_source():
    """
    Two-decimal similarity table as lower-triangular CSV.
    """
    return ROUNDED_MATRIX_SOURCE


@pytest.fixture
def rounded_matrix():
    """
    Two-decimal similarity table as a SimilarityMatrix.
    """
    return load_matrix(ROUNDED_MATRIX_SOURCE)


@pytest.fixture
def write_file(tmp_path):
    """
    Write text to a file under tmp_path and return its path as a string.
    """
    def _write(name, content):
        path = tmp_path / name
        path.write_text(content, encoding='utf-8')
        return str(path)
    return _write


@pytest.fixture
def example_kb_file(write_file):
    """
    The example knowledge base written to example.ckb.
    """
    return write_file('example.ckb', EXAMPLE_KB_SOURCE)


@pytest.fixture
def navigation_log_file(write_file):
    """
    The four-engineer navigation log written to nav.csv.
    """
    return write_file('nav.csv', NAVIGATION_LOG_SOURCE)


@pytest.fixture
def rounded_matrix_file(write_file):
    """
    The two-decimal similarity table written to rounded.csv.
    """
    return write_file('rounded.csv', ROUNDED_MATRIX_SOURCE)
