"""The engine against a deliberately naive second evaluator: facts, duty
sets, violation order, and every act's status must agree after every step."""
from __future__ import annotations

from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from normcase.reasoner import (
    FALSE,
    TRUE,
    UNKNOWN,
    Binding,
    Instance,
    ViolationKind,
    act_statuses,
    execute_act,
    init_state,
    set_fact,
)

from conftest import MICRO_MODEL, load_ok
from oracle import OracleState

MICRO = load_ok(MICRO_MODEL)
ACTORS = ("w1", "w2")
RECIPIENT = "supervisor"

_TRUTH = {TRUE: True, FALSE: False, UNKNOWN: None}


def engine_facts(state):
    return {(e.instance.type_name, e.instance.arg): e.value
            for e in state.base_facts}


def engine_duty_set(state):
    return {(d.type_name, d.holder, d.claimant, d.violated)
            for d in state.duties}


def engine_violation_list(state):
    out = []
    for violation in state.violations:
        if violation.kind is ViolationKind.NON_COMPLIANT_ACT:
            out.append(("NonCompliantAct", violation.subject.type_name,
                        violation.subject.arg))
        else:
            out.append(("DutyViolation", violation.subject.type_name,
                        violation.subject.holder, violation.subject.claimant))
    return out


def engine_board(state, actors, recipient):
    board = {}
    for actor in actors:
        for status in act_statuses(state, Binding(actor=actor,
                                                  recipient=recipient)):
            board[(status.act, actor)] = status.status.value
    return board


def assert_agreement(state, oracle, actors, recipient):
    assert engine_facts(state) == oracle.facts
    assert engine_duty_set(state) == oracle.duty_set()
    assert engine_violation_list(state) == oracle.violation_list()
    assert engine_board(state, actors, recipient) == \
        oracle.status_board(actors, recipient)


def run_both(spec, ops, actors, recipient):
    """Apply each operation to both evaluators, checking agreement between
    every pair of steps."""
    state = init_state(spec)
    oracle = OracleState(spec)
    assert_agreement(state, oracle, actors, recipient)
    for op in ops:
        if op[0] == "act":
            state = execute_act(state, op[1], op[2], recipient,
                                confirmed=True).state
            oracle.execute(op[1], op[2], recipient)
        else:
            _, type_name, arg, value = op
            state = set_fact(state, Instance(type_name, arg), value)
            oracle.set_fact(type_name, arg, _TRUTH[value])
        assert_agreement(state, oracle, actors, recipient)
    return state, oracle


def test_agreement_on_the_tax_remission_walkthrough(quittance_spec):
    ops = [
        ("set", "applicant-income", 1200, TRUE),
        ("act", "submit-application", "alice"),
        ("act", "deny-quittance", "alice"),      # blocked, still confirmed
        ("set", "applicant-is-married", None, FALSE),
        ("act", "process-application", "alice"),
        ("act", "grant-quittance", "alice"),
        ("set", "applicant-income", None, UNKNOWN),
        ("act", "submit-application", "bob"),
    ]
    run_both(quittance_spec, ops, ("alice", "bob"), "town")


MICRO_OPS = (
    [("act", act, actor)
     for act in ("assign-task", "finish-task", "cancel-task")
     for actor in ACTORS]
    + [("set", "rush", None, TRUE),
       ("set", "rush", None, UNKNOWN),
       ("set", "cancelled", "w1", TRUE)]
)


def test_exhaustive_agreement_on_short_sequences():
    total = 0
    for length in range(4):
        for ops in product(MICRO_OPS, repeat=length):
            run_both(MICRO, ops, ACTORS, RECIPIENT)
            total += 1
    assert total == sum(len(MICRO_OPS) ** n for n in range(4))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(MICRO_OPS), max_size=8))
def test_agreement_on_random_deeper_sequences(ops):
    run_both(MICRO, ops, ACTORS, RECIPIENT)
