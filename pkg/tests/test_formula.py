import pytest
from hypothesis import given

from abslogic import formula as fm
from abslogic.errors import BoundExceededError, FormulaSyntaxError, MissingAtomError
from abslogic.formula import And, Lit, Literal, Or, evaluate, is_tautology, negate, parse, render

from conftest import formulas

p, q, r = (Lit(Literal(a)) for a in "pqr")
np_ = Lit(Literal("p", True))


def test_literal_dual_is_involution():
    lit = Literal("p")
    assert lit.dual == Literal("p", True)
    assert lit.dual.dual == lit


@pytest.mark.parametrize("bad", ["", "P", "1p", "p-q"])
def test_literal_rejects_bad_atoms(bad):
    with pytest.raises(ValueError):
        Literal(bad)


def test_parse_running_example():
    assert parse("(p|q)&(p|~p)") == And(Or(p, q), Or(p, np_))


def test_parse_constants_and_whitespace():
    assert parse("1") == fm.TRUE
    assert parse(" 0 ") == fm.FALSE
    assert parse("p &\tq") == And(p, q)


def test_and_binds_tighter_and_chains_nest_right():
    assert parse("p|q&r") == Or(p, And(q, r))
    assert parse("p|q|r") == Or(p, Or(q, r))
    assert parse("p&q&r") == And(p, And(q, r))


@pytest.mark.parametrize(
    "text, offset",
    [
        # the input is 10 characters long, so end of input is offset 10
        ("p & (q | r", 10),
        ("p &", 3),
        ("(p))", 3),
        ("p q", 2),
        ("p # q", 2),
        ("", 0),
        ("Pq", 0),
    ],
)
def test_syntax_errors_carry_offsets(text, offset):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


@pytest.mark.parametrize("text", ["~(p|q)", "~1", "~~p"])
def test_tilde_only_on_atoms(text):
    with pytest.raises(FormulaSyntaxError, match="only to atoms"):
        parse(text)


def test_render_examples():
    assert render(And(Or(p, q), Or(p, np_))) == "((p|q)&(p|~p))"
    assert render(p) == "p"
    assert render(fm.FALSE) == "0"


def test_negate_examples():
    assert render(negate(parse("p|q"))) == "(~p&~q)"
    assert negate(parse("1")) == fm.FALSE
    assert render(negate(parse("p&~q"))) == "(~p|q)"


def test_evaluate_examples():
    assert evaluate(parse("p|~p"), {"p": False}) is True
    assert evaluate(parse("(p|q)&(p|~p)"), {"p": False, "q": False}) is False
    assert evaluate(parse("0"), {}) is False


def test_evaluate_missing_atom():
    with pytest.raises(MissingAtomError) as info:
        evaluate(parse("p&q"), {"p": True})
    assert info.value.atom == "q"


def test_tautology_examples():
    assert is_tautology(parse("p|~p"))
    assert not is_tautology(parse("(p|q)&(p|~p)"))
    assert is_tautology(parse("1"))
    assert fm.falsifying_assignment(parse("(p|q)&(p|~p)")) == {"p": False, "q": False}


def test_tautology_bound():
    big = parse("|".join(f"a{i}" for i in range(21)))
    with pytest.raises(BoundExceededError):
        is_tautology(big)


@given(formulas())
def test_render_parse_round_trip(f):
    assert parse(render(f)) == f


@given(formulas())
def test_negate_is_involution(f):
    assert negate(negate(f)) == f


@given(formulas())
def test_negate_complements_semantics(f):
    for sigma in fm.assignments(["p", "q", "r"]):
        assert evaluate(negate(f), sigma) == (not evaluate(f, sigma))


def _naive_satisfiable(f):
    names = fm.atoms(f)
    return any(evaluate(f, sigma) for sigma in fm.assignments(names))


@given(formulas())
def test_tautology_iff_negation_unsatisfiable(f):
    assert is_tautology(f) == (not _naive_satisfiable(negate(f)))
