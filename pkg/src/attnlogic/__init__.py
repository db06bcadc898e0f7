"""Compile definite logic programs into self-attention networks.

A program with at most one clause per head is translated into three
matrices: attention keys, top-down values, and bottom-up keys.  Running
single-head attention with a hardmax and a componentwise step function
then reproduces top-down query derivation; swapping in identity
activation and a threshold-at-one reproduces the bottom-up least-model
construction.  Everything is exact (integers and `fractions.Fraction`),
and a purely symbolic inference engine is included as a cross-check.
"""

from .compiler import CompiledProgram, NonBooleanVectorError, compile_program, devectorize, vectorize_interpretation, vectorize_query
from .engine import DEFAULT_MAX_STEPS, DerivationTrace, Status, TraceStep, attention, bottomup_fixpoint, bottomup_step, hardmax, heaviside, threshold_at_one, topdown_derive, topdown_step
from .generate import random_interpretation, random_program_text, random_query_atoms
from .oracle import FixpointNotReachedError, least_model, symbolic_topdown, symbolic_topdown_step, symbolic_tp
from .program import BOT, TOP, Clause, DuplicateHeadError, ParseError, Program, ProgramError, SymbolTable, UnknownSymbolError, load_program, parse_program, parse_query, validate_and_complete

__version__ = "0.1.0"

__all__ = [
    "BOT",
    "TOP",
    "Clause",
    "CompiledProgram",
    "DEFAULT_MAX_STEPS",
    "DerivationTrace",
    "DuplicateHeadError",
    "FixpointNotReachedError",
    "NonBooleanVectorError",
    "ParseError",
    "Program",
    "ProgramError",
    "Status",
    "SymbolTable",
    "TraceStep",
    "UnknownSymbolError",
    "attention",
    "bottomup_fixpoint",
    "bottomup_step",
    "compile_program",
    "devectorize",
    "hardmax",
    "heaviside",
    "least_model",
    "load_program",
    "parse_program",
    "parse_query",
    "random_interpretation",
    "random_program_text",
    "random_query_atoms",
    "symbolic_topdown",
    "symbolic_topdown_step",
    "symbolic_tp",
    "threshold_at_one",
    "topdown_derive",
    "topdown_step",
    "validate_and_complete",
    "vectorize_interpretation",
    "vectorize_query",
]
