"""Abstract propositions and proofs for classical propositional logic."""

from .absprop import (
    ONE,
    ZERO,
    AbstractProp,
    compile_formula,
    is_abstract_prop,
    is_true,
    neg,
    orthogonal,
    unit,
    vee,
    wedge,
)
from .formula import Literal, evaluate, is_tautology, negate, parse, render
from .morphism import Morphism, check_lax, check_lax_edge, check_strict, check_strict_edge, compose

__all__ = [
    "ONE",
    "ZERO",
    "AbstractProp",
    "Literal",
    "Morphism",
    "check_lax",
    "check_lax_edge",
    "check_strict",
    "check_strict_edge",
    "compile_formula",
    "compose",
    "evaluate",
    "is_abstract_prop",
    "is_tautology",
    "is_true",
    "neg",
    "negate",
    "orthogonal",
    "parse",
    "render",
    "unit",
    "vee",
    "wedge",
]
