"""Continuous {0,1}-valued functions on an ordinal, kept in canonical form.

A continuous two-valued function ``f`` on an ordinal ``tau`` that is
eventually constant is determined by ``f(0)`` and the finite, ascending
list of points where it flips. Every flip happens at a successor ordinal,
since a continuous function cannot change value at a limit. :class:`StepFn`
stores exactly that data; the implicit first point ``0`` of the determining
sequence is never stored.

Pointwise addition mod 2 makes these functions a Boolean group, and on the
stored form it is just XOR of the initial bits plus symmetric difference of
the change sets.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

from cpord.errors import DomainError, ReconstructionError, ValidationError
from cpord.ordinal import (
    OMEGA,
    ZERO,
    Kind,
    Ordinal,
    classify,
    format_ordinal,
    is_isolated,
    omega_power,
    ordinal_from_json,
    ordinal_to_json,
    predecessor,
    successor,
)

__all__ = [
    "StepFn",
    "IndicatorFn",
    "make_stepfn",
    "zero_fn",
    "eval_fn",
    "xor_add",
    "determining_sequence",
    "reconstruct_from_oracle",
    "from_support",
    "probe_points",
]


def _bit(value) -> int:
    if value in (0, 1) and not isinstance(value, float):
        return int(value)
    raise ValidationError(f"expected a bit (0 or 1), got {value!r}")


@dataclass(frozen=True)
class StepFn:
    """``f(x) = initial XOR (number of change points <= x) mod 2`` on ``domain``.

    Construct through :func:`make_stepfn`; the dataclass constructor trusts
    its input.
    """

    domain: Ordinal
    initial: int
    changes: Tuple[Ordinal, ...] = ()

    def __call__(self, x) -> int:
        return eval_fn(self, x)

    def pieces(self) -> List[Tuple[Ordinal, Optional[Ordinal], int]]:
        """Convex partition ``[(start, end_exclusive, value), ...]``; the last piece ends at ``None`` (the domain)."""
        starts = (ZERO,) + self.changes
        out = []
        value = self.initial
        for k, start in enumerate(starts):
            end = starts[k + 1] if k + 1 < len(starts) else None
            out.append((start, end, value))
            value ^= 1
        return out

    def to_json(self) -> dict:
        return {
            "domain": ordinal_to_json(self.domain),
            "initial": self.initial,
            "changes": [ordinal_to_json(c) for c in self.changes],
        }

    @classmethod
    def from_json(cls, data) -> "StepFn":
        try:
            return make_stepfn(
                ordinal_from_json(data["domain"]),
                data["initial"],
                [ordinal_from_json(c) for c in data.get("changes", [])],
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed StepFn JSON: {data!r}") from exc

    def __str__(self):
        changes = ", ".join(format_ordinal(c) for c in self.changes)
        return f"StepFn({format_ordinal(self.domain)}; initial={self.initial}; changes=[{changes}])"


@dataclass(frozen=True)
class IndicatorFn:
    """Finitely supported {0,1}-function: 1 exactly on ``support``.

    Support points must lie below ``domain``. Non-isolated support points
    are accepted so that non-members of the image of phi can be written
    down; such a function is simply not continuous (see ``is_continuous``).
    """

    domain: Ordinal
    support: Tuple[Ordinal, ...] = ()

    @classmethod
    def make(cls, domain, support: Iterable = ()) -> "IndicatorFn":
        domain = Ordinal.of(domain)
        points = sorted({Ordinal.of(s) for s in support})
        for s in points:
            if s >= domain:
                raise ValidationError(f"support point {format_ordinal(s)} is outside the domain {format_ordinal(domain)}")
        return cls(domain, tuple(points))

    @property
    def is_continuous(self) -> bool:
        return all(is_isolated(s) for s in self.support)

    def __call__(self, x) -> int:
        x = Ordinal.of(x)
        if x >= self.domain:
            raise DomainError(f"{format_ordinal(x)} is outside the domain {format_ordinal(self.domain)}")
        i = bisect.bisect_left(self.support, x)
        return int(i < len(self.support) and self.support[i] == x)

    def to_json(self) -> dict:
        return {
            "domain": ordinal_to_json(self.domain),
            "support": [ordinal_to_json(s) for s in self.support],
        }

    @classmethod
    def from_json(cls, data) -> "IndicatorFn":
        try:
            return cls.make(
                ordinal_from_json(data["domain"]),
                [ordinal_from_json(s) for s in data.get("support", [])],
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed IndicatorFn JSON: {data!r}") from exc

    def __str__(self):
        support = ", ".join(format_ordinal(s) for s in self.support)
        return f"IndicatorFn({format_ordinal(self.domain)}; support={{{support}}})"


def make_stepfn(domain, initial, changes: Iterable = ()) -> StepFn:
    """Validate and canonicalize ``(domain, initial, changes)``.

    ``changes`` may come in any order but must be duplicate-free, and every
    entry must be a successor ordinal strictly below ``domain``.
    """
    domain = Ordinal.of(domain)
    if not domain:
        raise DomainError("the empty ordinal 0 carries no functions")
    initial = _bit(initial)
    seen = set()
    points = []
    for c in changes:
        c = Ordinal.of(c)
        name = format_ordinal(c)
        if c in seen:
            raise ValidationError(f"duplicate change point {name}")
        kind = classify(c)
        if kind is Kind.ZERO:
            raise ValidationError("change point 0 is implicit and may not be listed")
        if kind is Kind.LIMIT:
            raise ValidationError(f"change point {name} is a limit ordinal; continuous functions cannot flip there")
        if c >= domain:
            raise ValidationError(f"change point {name} is not below the domain {format_ordinal(domain)}")
        seen.add(c)
        points.append(c)
    points.sort()
    return StepFn(domain, initial, tuple(points))


def zero_fn(domain) -> StepFn:
    return make_stepfn(domain, 0, ())


def eval_fn(f: StepFn, x) -> int:
    x = Ordinal.of(x)
    if x >= f.domain:
        raise DomainError(f"{format_ordinal(x)} is outside the domain {format_ordinal(f.domain)}")
    return f.initial ^ (bisect.bisect_right(f.changes, x) & 1)


def xor_add(f: StepFn, g: StepFn) -> StepFn:
    """Pointwise sum mod 2."""
    if f.domain != g.domain:
        raise DomainError(
            f"domain mismatch: {format_ordinal(f.domain)} vs {format_ordinal(g.domain)}"
        )
    changes = tuple(sorted(set(f.changes).symmetric_difference(g.changes)))
    return StepFn(f.domain, f.initial ^ g.initial, changes)


def determining_sequence(f: StepFn) -> Tuple[int, Tuple[Ordinal, ...]]:
    """``(f(0), (0, i_2, ..., i_n))`` with the leading 0 made explicit."""
    return f.initial, (ZERO,) + f.changes


def probe_points(domain, pool: Iterable = (), include_top: bool = False) -> List[Ordinal]:
    """Standard probe set for a change-point pool.

    Contains 0, 1, each pool point with its predecessor and successor,
    the limits w, w*2 and w^2, and for a successor domain its largest
    point. Everything is kept strictly below ``domain``; with
    ``include_top`` the domain itself is added as well.
    """
    domain = Ordinal.of(domain)
    points = {ZERO, Ordinal.of(1), OMEGA, OMEGA + OMEGA, omega_power(2)}
    for p in pool:
        p = Ordinal.of(p)
        points.add(p)
        points.add(successor(p))
        if classify(p) is Kind.SUCCESSOR:
            points.add(predecessor(p))
    if classify(domain) is Kind.SUCCESSOR:
        points.add(predecessor(domain))
    out = sorted(p for p in points if p < domain)
    if include_top:
        out.append(domain)
    return out


def reconstruct_from_oracle(
    domain,
    probe: Callable[[Ordinal], int],
    pool: Iterable,
    probe_bound=None,
) -> StepFn:
    """Rebuild a StepFn from its values alone.

    The candidate change points are the isolated points of ``pool``. Each
    next change point is the least candidate where ``probe`` differs from
    its value at the previous change point, exactly as in the definition of
    a determining sequence. ``probe`` is assumed constant on
    ``[probe_bound, domain)``; the default bound is one past the largest
    candidate.

    The result is then checked against ``probe`` on the probe set of the
    pool (candidates, their predecessors and successors, the standard
    limits, ``probe_bound``). Any disagreement means the probe is not
    explained by a finite change set inside the pool, and
    :class:`ReconstructionError` names the first witness point.
    """
    domain = Ordinal.of(domain)
    if not domain:
        raise DomainError("the empty ordinal 0 carries no functions")
    candidates = sorted({Ordinal.of(p) for p in pool if Ordinal.of(p) < domain})
    if probe_bound is None:
        probe_bound = successor(candidates[-1]) if candidates else Ordinal.of(1)
    probe_bound = Ordinal.of(probe_bound)

    initial = _bit(probe(ZERO))
    current = initial
    changes = []
    for c in candidates:
        if c >= probe_bound:
            break
        if not c or not is_isolated(c):
            continue
        value = _bit(probe(c))
        if value != current:
            changes.append(c)
            current = value

    f = StepFn(domain, initial, tuple(changes))
    check = set(probe_points(domain, candidates))
    if probe_bound < domain:
        check.add(probe_bound)
        if successor(probe_bound) < domain:
            check.add(successor(probe_bound))
    for x in sorted(check):
        if _bit(probe(x)) != eval_fn(f, x):
            raise ReconstructionError(
                f"probe is not finitely determined within the pool: it disagrees at {format_ordinal(x)}"
            )
    return f


def from_support(domain, support: Iterable) -> StepFn:
    """StepFn form of the indicator of a finite set of isolated points.

    Each support point ``s`` toggles the function on at ``s`` and off at
    ``s + 1``; adjacent toggles cancel. No off-toggle is emitted when
    ``s + 1`` is the domain itself.
    """
    domain = Ordinal.of(domain)
    toggles = set()
    initial = 0
    for s in {Ordinal.of(p) for p in support}:
        if not is_isolated(s):
            raise ValidationError(f"support point {format_ordinal(s)} is not isolated")
        if s >= domain:
            raise ValidationError(f"support point {format_ordinal(s)} is outside the domain {format_ordinal(domain)}")
        for t in (s, successor(s)):
            if not t:
                initial ^= 1
            elif t < domain:
                toggles ^= {t}
    return make_stepfn(domain, initial, toggles)
