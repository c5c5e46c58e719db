"""Strong Kleene three-valued logic.

Unknown stands for "not yet supplied", so conjunction and disjunction only
commit when one operand already forces the outcome: False wins an And, True
wins an Or, and everything else stays Unknown.
"""

from __future__ import annotations

from enum import Enum


class TruthValue(Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    def __repr__(self) -> str:
        return self.value


TRUE = TruthValue.TRUE
FALSE = TruthValue.FALSE
UNKNOWN = TruthValue.UNKNOWN


def from_bool(value: bool) -> TruthValue:
    return TRUE if value else FALSE


def kleene_not(a: TruthValue) -> TruthValue:
    if a is TRUE:
        return FALSE
    if a is FALSE:
        return TRUE
    return UNKNOWN


def kleene_and(a: TruthValue, b: TruthValue) -> TruthValue:
    if a is FALSE or b is FALSE:
        return FALSE
    if a is TRUE and b is TRUE:
        return TRUE
    return UNKNOWN


def kleene_or(a: TruthValue, b: TruthValue) -> TruthValue:
    if a is TRUE or b is TRUE:
        return TRUE
    if a is FALSE and b is FALSE:
        return FALSE
    return UNKNOWN


def refines(coarse: TruthValue, fine: TruthValue) -> bool:
    """True when `fine` carries at least the information of `coarse`.

    Unknown may sharpen into either determined value; a determined value may
    only stay what it is. This is the order the monotonicity tests quantify
    over: refining evaluation inputs must refine the result.
    """
    return coarse is UNKNOWN or coarse is fine
