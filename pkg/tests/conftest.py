from __future__ import annotations

import pytest

from attnlogic import compile_program, load_program

# Running example used throughout the tests: a chain of rules proving p
# from two facts, plus one symbol that can never be derived.
CHAIN_TEXT = """\
p <- q & r.
q <- s.
r <- s & t.
s <- u.
t <- true.
u <- true.
w <- false.
"""


@pytest.fixture
def chain_text():
    return CHAIN_TEXT


@pytest.fixture
def chain_program():
    return load_program(CHAIN_TEXT)


@pytest.fixture
def chain_compiled(chain_program):
    return compile_program(chain_program)


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.lp"
    path.write_text(CHAIN_TEXT, encoding="utf-8")
    return str(path)
