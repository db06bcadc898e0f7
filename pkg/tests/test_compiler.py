from __future__ import annotations

from fractions import Fraction

import pytest

from attnlogic import (
    TOP,
    NonBooleanVectorError,
    UnknownSymbolError,
    compile_program,
    devectorize,
    load_program,
    vectorize_interpretation,
    vectorize_query,
)
from attnlogic.compiler import identity_matrix

H = Fraction(1, 2)


def test_head_matrix_is_identity(chain_compiled):
    assert chain_compiled.head_matrix == identity_matrix(9)


def test_body_matrix_golden(chain_compiled):
    # Rows follow symbol order p q r s t u w, then the built-in true/false
    # rows; columns are the same order.
    assert chain_compiled.body_matrix == (
        (0, 1, 1, 0, 0, 0, 0, 0, 0),  # p <- q & r
        (0, 0, 0, 1, 0, 0, 0, 0, 0),  # q <- s
        (0, 0, 0, 1, 1, 0, 0, 0, 0),  # r <- s & t
        (0, 0, 0, 0, 0, 1, 0, 0, 0),  # s <- u
        (0, 0, 0, 0, 0, 0, 0, 1, 0),  # t <- true
        (0, 0, 0, 0, 0, 0, 0, 1, 0),  # u <- true
        (0, 0, 0, 0, 0, 0, 0, 0, 1),  # w <- false
        (0, 0, 0, 0, 0, 0, 0, 1, 0),  # true <- true
        (0, 0, 0, 0, 0, 0, 0, 0, 1),  # false <- false
    )


def test_rule_matrix_golden(chain_compiled):
    assert chain_compiled.rule_matrix == (
        (0, H, H, 0, 0, 0, 0),
        (0, 0, 0, 1, 0, 0, 0),
        (0, 0, 0, H, H, 0, 0),
        (0, 0, 0, 0, 0, 1, 0),
        (0, 0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 1, 0),
        (0, 0, 0, 0, 0, 0, 0),
    )


def test_fact_heads_are_indices(chain_compiled):
    assert chain_compiled.fact_heads == frozenset({4, 5})


def test_rule_matrix_row_sums():
    # Every non-failure row sums to 1: facts via the diagonal, conjunctive
    # bodies via m entries of 1/m.
    prog = load_program("a <- b & c & d.\nb <- true.\nc <- false.\nd <- b.\n")
    compiled = compile_program(prog)
    sums = [sum(row) for row in compiled.rule_matrix]
    assert sums == [1, 1, 0, 1]
    assert compiled.rule_matrix[0] == (0, Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))


def test_to_json_dict(chain_compiled):
    doc = chain_compiled.to_json_dict()
    assert set(doc) == {"symbols", "H", "B", "M"}
    assert doc["symbols"] == ["p", "q", "r", "s", "t", "u", "w"]
    assert doc["B"][0] == [0, 1, 1, 0, 0, 0, 0, 0, 0]
    assert doc["M"][2] == ["0", "0", "0", "1/2", "1/2", "0", "0"]
    assert all(isinstance(x, int) for row in doc["H"] for x in row)


def test_vectorize_query(chain_compiled):
    table = chain_compiled.table
    assert vectorize_query(["p"], table) == (1, 0, 0, 0, 0, 0, 0, 0, 0)
    assert vectorize_query([TOP, "w"], table) == (0, 0, 0, 0, 0, 0, 1, 1, 0)
    with pytest.raises(ValueError):
        vectorize_query([], table)
    with pytest.raises(UnknownSymbolError):
        vectorize_query(["zz"], table)


def test_vectorize_interpretation(chain_compiled):
    table = chain_compiled.table
    assert vectorize_interpretation(["t", "u"], table) == (0, 0, 0, 0, 1, 1, 0)
    assert vectorize_interpretation([], table) == (0,) * 7
    with pytest.raises(UnknownSymbolError):
        vectorize_interpretation([TOP], table)


def test_devectorize_both_widths(chain_compiled):
    table = chain_compiled.table
    assert devectorize((0, 0, 0, 0, 0, 0, 0, 1, 0), table) == frozenset({TOP})
    assert devectorize((0, 0, 0, 0, 1, 1, 0), table) == frozenset({"t", "u"})
    with pytest.raises(ValueError):
        devectorize((1, 0), table)
    with pytest.raises(NonBooleanVectorError):
        devectorize((H, 0, 0, 0, 0, 0, 0), table)
