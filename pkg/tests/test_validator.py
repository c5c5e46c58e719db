"""Semantic checks: clause legality, references, typing, cycles, statements.

Each test builds a minimal spec around one violation and asserts the
validator reports it — and nothing else breaks the clean variants.
"""
from __future__ import annotations

from normcase.lang import parse, validate


def check(source):
    result = parse(source)
    assert result.ok, [str(d) for d in result.diagnostics]
    return [d.message for d in validate(result.spec)]


def assert_clean(source):
    assert check(source) == []


def assert_flags(source, *fragments):
    messages = check(source)
    for fragment in fragments:
        assert any(fragment in m for m in messages), (fragment, messages)


# -- declaration shape --------------------------------------------------

def test_well_formed_spec_is_clean():
    assert_clean("""
        Var income Identified by Int.
        Open Bool married.
        Fact pending Identified by String.
        Act file Actor a Recipient r
          Conditioned by income < 10
          Creates pending(a).
        Physical Act press Syncs with file.
        Duty handle Holder h Claimant c Terminated by press.
        =income(5).
    """)


def test_duplicate_declaration():
    assert_flags("Fact f.\nBool f.", "declared more than once")


def test_var_requires_domain():
    assert_flags("Var v.", "needs 'Identified by Int' or 'Identified by String'")


def test_identifier_only_on_facts_and_vars():
    assert_flags("Bool b Identified by Int.", "'Identified by' is not allowed")
    assert_flags("Act a Identified by Int Actor x.",
                 "'Identified by' is not allowed")


def test_openness_only_on_fact_like():
    assert_flags("Open Act a Actor x.", "applies only to facts, vars and bools")
    assert_clean("Open Fact f.")


def test_derived_fact_cannot_take_identifier():
    assert_flags("Bool b.\nFact d Identified by Int Holds when b.",
                 "cannot take an identifier")


def test_param_name_collisions():
    assert_flags("Act a Actor x Recipient x.", "share a parameter name")
    assert_flags("Duty d Holder h Claimant h.", "share a parameter name")


# -- clause legality ----------------------------------------------------

def test_actor_only_on_acts():
    assert_flags("Fact f Actor x.", "'Actor' is not allowed")


def test_holder_only_on_duties():
    assert_flags("Act a Actor x Holder h.", "'Holder' is not allowed")


def test_syncs_with_targets():
    assert_flags("Physical Act p Syncs with nothing.", "unknown act")
    assert_flags("Fact f.\nPhysical Act p Syncs with f.",
                 "must name an institutional Act")
    assert_flags("Physical Act q.\nPhysical Act p Syncs with q.",
                 "must name an institutional Act")


def test_creates_only_on_institutional_acts():
    assert_flags("Fact f.\nPhysical Act p Creates f.", "'Creates' is not allowed")


def test_violated_when_only_on_duties():
    assert_flags("Act a Actor x Violated when True.",
                 "'Violated when' is not allowed")


def test_extends_must_match_kind():
    assert_flags("Fact f.\nAct a Extends f Actor x.", "cannot extend")
    assert_flags("Act a Extends ghost Actor x.", "unknown declaration")


def test_terminated_by_names_acts():
    assert_flags("Fact f.\nDuty d Holder h Claimant c Terminated by f.",
                 "must name acts")
    assert_flags("Duty d Holder h Claimant c Terminated by ghost.",
                 "unknown act")


# -- templates in Creates / Terminates ----------------------------------

def test_creates_targets_facts_and_duties():
    assert_flags("Act b Actor x.\nAct a Actor x Creates b.",
                 "can only name facts and duties")


def test_duty_template_takes_no_args():
    assert_flags(
        "Duty d Holder h Claimant c.\nAct a Actor x Creates d(x).",
        "takes no arguments here")


def test_creates_cannot_target_derived():
    assert_flags(
        "Bool b.\nFact d Holds when b.\nAct a Actor x Creates d.",
        "cannot target derived")


def test_template_argument_typing():
    assert_flags('Fact f Identified by Int.\nAct a Actor x Creates f("s").',
                 "is identified by Int")
    assert_flags("Fact f Identified by String.\nAct a Actor x Creates f(3).",
                 "is identified by String")
    assert_flags("Fact f Identified by Int.\nAct a Actor x Creates f(x).",
                 "binds a string")
    assert_flags("Fact f Identified by String.\nAct a Actor x Creates f(y).",
                 "unknown name 'y'")


def test_template_arity():
    assert_flags("Fact f.\nAct a Actor x Creates f(1).", "takes 0 argument")
    assert_flags("Fact f Identified by Int.\nAct a Actor x Creates f.",
                 "takes 1 argument")


# -- expressions --------------------------------------------------------

def test_conditions_must_reference_fact_like():
    assert_flags("Act b Actor y.\nAct a Actor x Conditioned by b.",
                 "expressions can only reference facts, vars and bools")


def test_holds_applies_to_fact_like():
    assert_flags("Act b Actor y.\nAct a Actor x Conditioned by Holds(b).",
                 "Holds applies to facts, vars and bools")


def test_applied_ref_needs_domain():
    assert_flags("Bool b.\nAct a Actor x Conditioned by b(1).",
                 "takes no arguments")


def test_domained_fact_needs_argument_in_condition():
    # bare reference in a condition, and bare template inside Holds
    assert_flags(
        "Fact f Identified by String.\nAct a Actor x Conditioned by f.",
        "needs an argument")
    assert_flags(
        "Fact f Identified by Int.\nAct a Actor x Conditioned by Holds(f).",
        "takes 1 argument")


def test_condition_typing():
    assert_flags("Act a Actor x Conditioned by 1 + 2.",
                 "truth-valued expression")
    assert_flags("Bool b.\nAct a Actor x Conditioned by b && 1 < 2 + b.",
                 "needs Int operands")
    assert_flags('Act a Actor x Conditioned by 1 < "s".', "cannot compare")
    assert_flags("Bool b.\nAct a Actor x Conditioned by Not (1 + 1).",
                 "'Not' needs a truth-valued operand")
    assert_flags('Var v Identified by String.\nAct a Actor x Conditioned by v < "s".',
                 "cannot compare")
    assert_clean('Var v Identified by String.\nAct a Actor x Conditioned by v == "s".')


def test_placeholders_only_in_act_and_duty_scope():
    assert_flags("Bool b.\nFact d Holds when Actor == \"x\".",
                 "not available here")


def test_unknown_names():
    assert_flags("Act a Actor x Conditioned by ghost.", "unknown name 'ghost'")


def test_derivation_cycle():
    assert_flags(
        "Fact a Holds when b.\nFact b Holds when c.\nFact c Holds when a.",
        "derived facts form a cycle")
    assert_clean("Bool ground.\nFact a Holds when b.\nFact b Holds when ground.")


# -- statements ---------------------------------------------------------

def test_assign_only_vars_and_bools():
    assert_flags("Fact f Identified by Int.\n=f(1).", "'=' assigns Var and Bool")


def test_assign_bool_takes_true_or_false():
    assert_flags("Bool b.\n=b(1).", "takes True or False")
    assert_clean("Bool b.\n=b(True).")


def test_statement_domain_typing():
    assert_flags('Var v Identified by Int.\n=v("s").', "is identified by Int")
    assert_flags("Fact f Identified by String.\n+f(1).", "is identified by String")


def test_statement_unknown_name():
    assert_flags("+ghost(1).", "unknown name 'ghost'")


def test_statement_on_derived_fact():
    assert_flags("Bool b.\nFact d Holds when b.\n+d.",
                 "derived and cannot be asserted")


def test_bare_terminate_clears_var():
    assert_clean("Var v Identified by Int.\n-v.")


def test_statement_on_act():
    assert_flags("Act a Actor x.\n+a.", "statements apply to facts")


def test_diagnostics_carry_positions():
    result = parse("Fact f.\nVar broken.\n")
    for diagnostic in validate(result.spec):
        assert diagnostic.span.line >= 1
        assert diagnostic.span.col >= 1
