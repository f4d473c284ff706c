"""The injection phi of C_p(tau, {0,1}) into C_p(tau + 1, {0,1}).

``phi(f)`` is the indicator of the change points of ``f``, with the point
0 added when ``f(0) = 1``. It is one-to-one, carries pointwise XOR to
pointwise XOR, and the preimage of every subbasic open set
``{g : g(x) = b}`` is decided by at most two evaluations of ``f``; see
:func:`phi_preimage_subbasic`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from cpord.errors import DomainError, NotInImageError
from cpord.ordinal import (
    ZERO,
    CofinalityClass,
    Kind,
    Ordinal,
    classify,
    cofinality_class,
    format_ordinal,
    predecessor,
    successor,
)
from cpord.stepfn import IndicatorFn, StepFn, eval_fn, from_support

__all__ = [
    "PredicateKind",
    "SubbasicPredicate",
    "phi_apply",
    "phi_apply_stepfn",
    "phi_invert",
    "image_membership",
    "image_witness",
    "phi_preimage_subbasic",
]

GATE_MESSAGE = "tau must have uncountable cofinality (override available)"


def phi_apply(f: StepFn, allow_countable_cofinality: bool = False) -> IndicatorFn:
    if not allow_countable_cofinality and cofinality_class(f.domain) is not CofinalityClass.COF_OMEGA1:
        raise DomainError(f"{GATE_MESSAGE}; got tau = {format_ordinal(f.domain)}")
    support = ((ZERO,) if f.initial else ()) + f.changes
    return IndicatorFn(successor(f.domain), support)


def phi_apply_stepfn(f: StepFn, allow_countable_cofinality: bool = False) -> StepFn:
    """``phi(f)`` converted to StepFn form on ``tau + 1``."""
    g = phi_apply(f, allow_countable_cofinality)
    return from_support(g.domain, g.support)


def image_witness(g: IndicatorFn) -> Optional[Ordinal]:
    """First support point that keeps ``g`` out of the image of phi, or ``None``.

    Raises :class:`DomainError` when the domain of ``g`` is not of the form
    ``tau + 1``.
    """
    if classify(g.domain) is not Kind.SUCCESSOR:
        raise DomainError(f"domain {format_ordinal(g.domain)} is not of the form tau + 1")
    tau = predecessor(g.domain)
    for s in g.support:
        if s >= tau or (s and classify(s) is not Kind.SUCCESSOR):
            return s
    return None


def image_membership(g: IndicatorFn) -> bool:
    try:
        return image_witness(g) is None
    except DomainError:
        return False


def phi_invert(g: IndicatorFn) -> StepFn:
    witness = image_witness(g)
    if witness is not None:
        tau = predecessor(g.domain)
        name = format_ordinal(witness)
        if witness == tau:
            reason = f"g({name}) = 1 at the top point tau"
        elif classify(witness) is Kind.LIMIT:
            reason = f"{name} is a limit ordinal"
        else:
            reason = f"{name} is not below tau = {format_ordinal(tau)}"
        raise NotInImageError(f"not in the image of phi: {reason}", witness)
    tau = predecessor(g.domain)
    changes = tuple(s for s in g.support if s)
    initial = int(bool(g.support) and g.support[0] == ZERO)
    return StepFn(tau, initial, changes)


class PredicateKind(enum.Enum):
    ALL = "All"
    EMPTY = "Empty"
    VALUE_AT_ZERO = "ValueAtZero"
    FLIP_AT = "FlipAt"
    NO_FLIP_AT = "NoFlipAt"


@dataclass(frozen=True)
class SubbasicPredicate:
    """A set of functions on ``domain`` decided by at most two evaluations."""

    kind: PredicateKind
    domain: Ordinal
    point: Optional[Ordinal] = None
    bit: Optional[int] = None

    def contains(self, f: StepFn) -> bool:
        if f.domain != self.domain:
            raise DomainError("predicate and function have different domains")
        if self.kind is PredicateKind.ALL:
            return True
        if self.kind is PredicateKind.EMPTY:
            return False
        if self.kind is PredicateKind.VALUE_AT_ZERO:
            return eval_fn(f, ZERO) == self.bit
        flips = eval_fn(f, self.point) != eval_fn(f, predecessor(self.point))
        return flips if self.kind is PredicateKind.FLIP_AT else not flips

    __contains__ = contains

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.bit is not None:
            out["bit"] = self.bit
        if self.point is not None:
            out["x"] = format_ordinal(self.point)
        return out

    def __str__(self):
        if self.kind is PredicateKind.VALUE_AT_ZERO:
            return f"ValueAtZero({self.bit})"
        if self.point is not None:
            return f"{self.kind.value}({format_ordinal(self.point)})"
        return self.kind.value


def phi_preimage_subbasic(x, bit: int, tau) -> SubbasicPredicate:
    """Preimage under phi of ``{g in C_p(tau + 1) : g(x) = bit}``.

    ===========================  ===========  ================
    point x                      bit 0        bit 1
    ===========================  ===========  ================
    x = tau                      All          Empty
    x = 0                        f(0) = 0     f(0) = 1
    limit, x < tau               All          Empty
    isolated, 0 < x < tau        f(x) = f(x-1)  f(x) != f(x-1)
    ===========================  ===========  ================
    """
    x, tau = Ordinal.of(x), Ordinal.of(tau)
    if bit not in (0, 1):
        raise DomainError(f"expected a bit, got {bit!r}")
    if x > tau:
        raise DomainError(f"{format_ordinal(x)} is outside tau + 1 = {format_ordinal(successor(tau))}")
    if x == tau or classify(x) is Kind.LIMIT:
        return SubbasicPredicate(PredicateKind.EMPTY if bit else PredicateKind.ALL, tau)
    if not x:
        return SubbasicPredicate(PredicateKind.VALUE_AT_ZERO, tau, bit=bit)
    kind = PredicateKind.FLIP_AT if bit else PredicateKind.NO_FLIP_AT
    return SubbasicPredicate(kind, tau, point=x)
