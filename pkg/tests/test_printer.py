"""Canonical rendering: minimal parentheses, default openness omitted, and
`parse(print_spec(spec))` structurally equal to `spec` for generated sources."""
from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from normcase.lang import parse, print_spec
from normcase.lang.printer import print_expr, quote

from conftest import QUITTANCE


def expr_of(source):
    result = parse(f"Act probe Actor x Conditioned by {source}.")
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.spec.declaration("probe").conditioned_by


def test_quote_escapes():
    assert quote('say "hi"\n\tdone \\') == '"say \\"hi\\"\\n\\tdone \\\\"'


def test_boolean_precedence_needs_no_parens():
    assert print_expr(expr_of("a && b || c && Not d")) == "a && b || c && Not d"


def test_or_under_and_is_parenthesized():
    assert print_expr(expr_of("(a || b) && c")) == "(a || b) && c"


def test_not_over_compound_is_parenthesized():
    assert print_expr(expr_of("Not (a && b)")) == "Not (a && b)"


def test_comparison_operand_keeps_parens():
    # comparisons do not chain, so nesting one inside another needs parens
    assert print_expr(expr_of("(1 < 2) == e")) == "(1 < 2) == e"


def test_left_associative_arithmetic_drops_parens():
    assert print_expr(expr_of("(1 - 2) - 3 < n")) == "1 - 2 - 3 < n"


def test_right_nested_subtraction_keeps_parens():
    assert print_expr(expr_of("1 - (2 - 3) < n")) == "1 - (2 - 3) < n"


def test_arithmetic_inside_comparison_needs_no_parens():
    assert print_expr(expr_of("n + 1 * 2 < m")) == "n + 1 * 2 < m"


def test_default_openness_is_omitted():
    printed = print_spec(parse("Closed Fact f.\nOpen Bool b.").spec)
    assert printed == "Fact f.\nBool b.\n"


def test_non_default_openness_is_kept():
    printed = print_spec(parse("Open Fact f.\nClosed Bool b.").spec)
    assert printed == "Open Fact f.\nClosed Bool b.\n"


def test_placeholder_args_print_as_keywords():
    source = "Fact tag Identified by String.\nAct a Actor x Creates tag(x).\n"
    printed = print_spec(parse(source).spec)
    assert "Creates tag(Actor)" in printed


def test_statement_forms():
    source = ('Var v Identified by Int.\nBool flag.\n'
              'Fact tag Identified by String.\n\n'
              '=v(42).\n=flag(True).\n+tag("a\\"b").\n-tag("x").\n-tag.\n')
    assert print_spec(parse(source).spec) == source


def test_fixture_round_trips():
    first = parse(QUITTANCE)
    assert first.ok
    second = parse(print_spec(first.spec))
    assert second.ok
    assert second.spec == first.spec


# --- generated sources ------------------------------------------------------

TYPE_NAMES = ("alpha", "beta", "gamma-ray", "delta7")
PARAM_NAMES = ("x", "y", "party-a")
ACT_NAMES = ("first-act", "second-act")

type_name = st.sampled_from(TYPE_NAMES)
param_name = st.sampled_from(PARAM_NAMES)
int_lit = st.integers(min_value=0, max_value=999).map(str)
str_lit = st.text(
    alphabet=list("abc XYZ0,.'") + ['"', "\\", "\n", "\t"], max_size=8
).map(quote)

template = st.one_of(
    type_name,
    st.tuples(type_name, st.one_of(param_name, int_lit, str_lit)).map(
        lambda t: f"{t[0]}({t[1]})"
    ),
)

_OPS = ("&&", "||", "<", "<=", "==", "!=", ">=", ">", "+", "-", "*")


@st.composite
def expr_source(draw, depth=3):
    """Fully parenthesized expression text, so parsing is unambiguous and the
    printer's paren-minimisation gets exercised on the way back out."""
    atoms = st.one_of(
        int_lit,
        str_lit,
        st.sampled_from(("True", "False", "Actor", "Recipient")),
        type_name,
        param_name,
        template.map(lambda t: f"Holds({t})"),
    )
    if depth <= 0 or draw(st.booleans()):
        return draw(atoms)
    if draw(st.integers(0, 3)) == 0:
        return f"Not ({draw(expr_source(depth - 1))})"
    op = draw(st.sampled_from(_OPS))
    left = draw(expr_source(depth - 1))
    right = draw(expr_source(depth - 1))
    return f"({left}) {op} ({right})"


@st.composite
def state_decl(draw):
    kind = draw(st.sampled_from(("Fact", "Var", "Bool")))
    parts = [draw(st.sampled_from(("", "Open ", "Closed "))), kind,
             " ", draw(type_name)]
    if kind != "Bool" and draw(st.booleans()):
        parts.append(" Identified by " + draw(st.sampled_from(("Int", "String"))))
    if draw(st.booleans()):
        parts.append(f" Holds when {draw(expr_source(2))}")
    return "".join(parts) + "."


@st.composite
def act_decl(draw, name):
    parts = [f"Act {name} Actor {draw(param_name)}"]
    if draw(st.booleans()):
        parts.append(f"Recipient {draw(param_name)}")
    if draw(st.booleans()):
        parts.append(f"Conditioned by {draw(expr_source())}")
    if draw(st.booleans()):
        parts.append("Creates " + ", ".join(draw(st.lists(template, min_size=1,
                                                          max_size=2))))
    if draw(st.booleans()):
        parts.append(f"Terminates {draw(template)}")
    return " ".join(parts) + "."


@st.composite
def duty_decl(draw):
    parts = [f"Duty duty-of-care Holder {draw(param_name)} "
             f"Claimant {draw(param_name)}"]
    if draw(st.booleans()):
        parts.append(f"Violated when {draw(expr_source(2))}")
    if draw(st.booleans()):
        parts.append("Terminated by " + ", ".join(draw(
            st.lists(st.sampled_from(ACT_NAMES), min_size=1, max_size=2,
                     unique=True))))
    return " ".join(parts) + "."


@st.composite
def statement(draw):
    name = draw(type_name)
    head = draw(st.sampled_from(("+", "-", "=")))
    if head == "=":
        value = draw(st.one_of(int_lit, str_lit,
                               st.sampled_from(("True", "False"))))
        return f"={name}({value})."
    if draw(st.booleans()):
        return f"{head}{name}({draw(st.one_of(int_lit, str_lit))})."
    return f"{head}{name}."


@st.composite
def spec_source(draw):
    lines = draw(st.lists(state_decl(), max_size=3))
    for name in ACT_NAMES[: draw(st.integers(0, 2))]:
        lines.append(draw(act_decl(name)))
        if draw(st.booleans()):
            lines.append(f"Physical Act do-{name} Syncs with {name}.")
    if draw(st.booleans()):
        lines.append(draw(duty_decl()))
    lines.extend(draw(st.lists(statement(), max_size=3)))
    return "\n".join(lines) + "\n"


@settings(max_examples=150, deadline=None)
@given(spec_source())
def test_round_trip_of_generated_sources(source):
    first = parse(source)
    assert first.ok, [str(d) for d in first.diagnostics]
    printed = print_spec(first.spec)
    second = parse(printed)
    assert second.ok, (printed, [str(d) for d in second.diagnostics])
    assert second.spec == first.spec
    assert print_spec(second.spec) == printed
