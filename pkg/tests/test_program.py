from __future__ import annotations

import pytest

from attnlogic import (
    BOT,
    TOP,
    DuplicateHeadError,
    ParseError,
    ProgramError,
    UnknownSymbolError,
    load_program,
    parse_program,
    parse_query,
    validate_and_complete,
)
from attnlogic.program import render_clause, render_program, render_query, scan_query_symbols


def test_symbols_in_first_appearance_order(chain_program):
    assert chain_program.table.symbols == ("p", "q", "r", "s", "t", "u", "w")
    assert chain_program.table.atoms == ("p", "q", "r", "s", "t", "u", "w", TOP, BOT)
    assert chain_program.table.n == 7
    assert chain_program.table.width == 9


def test_body_symbols_can_appear_before_their_clause():
    prog = load_program("a <- b.\nb <- true.\n")
    assert prog.table.symbols == ("a", "b")


def test_clause_i_heads_symbol_i(chain_program):
    for i, clause in enumerate(chain_program.clauses):
        assert clause.head == chain_program.table.symbols[i]


def test_facts_and_failures(chain_program):
    t = chain_program.clause_for("t")
    w = chain_program.clause_for("w")
    assert t.is_fact and not t.is_failure
    assert w.is_failure and not w.is_fact
    assert chain_program.fact_heads == frozenset({"t", "u"})


def test_completion_adds_false_clauses_for_undefined_symbols():
    prog = load_program("p <- q & r.\n")
    assert prog.table.symbols == ("p", "q", "r")
    assert prog.clause_for("q").is_failure
    assert prog.clause_for("r").is_failure


def test_completion_covers_extra_query_symbols():
    clauses = parse_program("p <- true.\n")
    prog = validate_and_complete(clauses, extra_symbols=("z",))
    assert prog.table.symbols == ("p", "z")
    assert prog.clause_for("z").is_failure


def test_duplicate_head_rejected():
    with pytest.raises(DuplicateHeadError) as info:
        load_program("p <- q.\nq <- true.\np <- r.\n")
    assert info.value.symbol == "p"
    assert (info.value.first_line, info.value.second_line) == (1, 3)


def test_empty_program_rejected():
    with pytest.raises(ProgramError, match="empty program"):
        load_program("% nothing here\n")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("p <- q", "expected '.'"),
        ("p q.", "expected '<-'"),
        ("<- q.", "clause head"),
        ("p <- q &.", "body atom"),
        ("p <- .", "body atom"),
        ("true <- q.", "reserved"),
        ("p <- q & true.", "conjunction"),
        ("p <- q & false.", "conjunction"),
        ("p <- q ! r.", "unexpected character"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_program(text)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_program("p <- q.\nq <- r & .\n")
    assert info.value.line == 2
    assert info.value.col == 10


def test_comments_and_whitespace_ignored():
    prog = load_program("% leading comment\n  p <- true. % trailing\n\n\nq<-p.")
    assert prog.table.symbols == ("p", "q")


def test_duplicate_body_atoms_collapse():
    prog = load_program("p <- q & q & q.\nq <- true.\n")
    assert prog.clause_for("p").body == frozenset({"q"})


def test_parse_query(chain_program):
    assert parse_query("p & q", chain_program.table) == frozenset({"p", "q"})
    assert parse_query("true", chain_program.table) == frozenset({TOP})
    assert parse_query("p & false", chain_program.table) == frozenset({"p", BOT})


def test_parse_query_rejects_unknown_and_empty(chain_program):
    with pytest.raises(UnknownSymbolError):
        parse_query("zz", chain_program.table)
    with pytest.raises(ParseError):
        parse_query("", chain_program.table)
    with pytest.raises(ParseError):
        parse_query("p &", chain_program.table)


def test_scan_query_symbols_skips_reserved():
    assert scan_query_symbols("p & true & z & false") == ("p", "z")


def test_render_round_trip(chain_text, chain_program):
    rendered = render_program(chain_program)
    assert load_program(rendered).clauses == chain_program.clauses
    assert render_clause(chain_program.clause_for("t")) == "t <- true."
    assert render_clause(chain_program.clause_for("w")) == "w <- false."


def test_render_query_orders_by_table(chain_program):
    q = frozenset({"t", "p", TOP})
    assert render_query(q, chain_program.table) == "p & t & true"
