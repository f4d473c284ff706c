"""Symbolic ordinals of the form w1*m + alpha with alpha below epsilon_0.

An :class:`Ordinal` stores the coefficient ``m`` of omega_1 and the Cantor
normal form of the countable tail ``alpha`` as a tuple of
``(exponent, coefficient)`` pairs with strictly decreasing exponents.
Values are always canonical, so equality and hashing are structural.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, Sequence, Tuple, Union

from cpord.errors import DomainError, OrdinalSyntaxError, ValidationError

__all__ = [
    "Ordinal",
    "Kind",
    "CofinalityClass",
    "ZERO",
    "ONE",
    "OMEGA",
    "OMEGA1",
    "compare",
    "add",
    "successor",
    "predecessor",
    "classify",
    "is_isolated",
    "cofinality_class",
    "omega_power",
    "parse_ordinal",
    "format_ordinal",
    "ordinal_to_json",
    "ordinal_from_json",
]

Term = Tuple["Ordinal", int]
OrdinalLike = Union["Ordinal", int]


class Kind(enum.Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


class CofinalityClass(enum.Enum):
    ZERO = "Zero"
    SUCCESSOR = "Successor"
    COF_OMEGA = "CofOmega"
    COF_OMEGA1 = "CofOmega1"


class Ordinal:
    """An ordinal ``w1*omega1_coeff + sum(w^e * c for e, c in cnf_tail)``."""

    __slots__ = ("omega1_coeff", "cnf_tail", "_key")

    def __init__(self, omega1_coeff: int = 0, cnf_tail: Iterable[Term] = ()):
        if not isinstance(omega1_coeff, int) or omega1_coeff < 0:
            raise ValidationError(f"omega1 coefficient must be a natural number, got {omega1_coeff!r}")
        tail = tuple((e, c) for e, c in cnf_tail)
        prev = None
        for e, c in tail:
            if not isinstance(e, Ordinal):
                raise ValidationError(f"exponent must be an Ordinal, got {e!r}")
            if e.omega1_coeff:
                raise ValidationError("uncountable exponent not supported")
            if not isinstance(c, int) or c < 1:
                raise ValidationError(f"coefficient must be a positive integer, got {c!r}")
            if prev is not None and not e._key < prev._key:
                raise ValidationError("exponents must be strictly decreasing")
            prev = e
        object.__setattr__(self, "omega1_coeff", omega1_coeff)
        object.__setattr__(self, "cnf_tail", tail)
        # Python tuple ordering on this key coincides with ordinal order.
        object.__setattr__(self, "_key", (omega1_coeff, tuple((e._key, c) for e, c in tail)))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    def __reduce__(self):
        return (Ordinal, (self.omega1_coeff, self.cnf_tail))

    @classmethod
    def of(cls, value: OrdinalLike) -> "Ordinal":
        if type(value) is Ordinal:
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot convert {value!r} to Ordinal")
        if value < 0:
            raise DomainError("ordinals are non-negative")
        return cls(0, ((ZERO, value),)) if value else ZERO

    # ordering -----------------------------------------------------------

    def __eq__(self, other):
        if type(other) is Ordinal:
            return self._key == other._key
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        if type(other) is Ordinal:
            return self._key < other._key
        other = _coerce(other)
        return NotImplemented if other is None else self._key < other._key

    def __le__(self, other):
        if type(other) is Ordinal:
            return self._key <= other._key
        other = _coerce(other)
        return NotImplemented if other is None else self._key <= other._key

    def __gt__(self, other):
        if type(other) is Ordinal:
            return self._key > other._key
        other = _coerce(other)
        return NotImplemented if other is None else self._key > other._key

    def __ge__(self, other):
        if type(other) is Ordinal:
            return self._key >= other._key
        other = _coerce(other)
        return NotImplemented if other is None else self._key >= other._key

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else add(self, other)

    def __radd__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else add(other, self)

    def __pow__(self, exponent):
        # Only w ** e is supported; it is how the tests spell CNF terms.
        if self != OMEGA:
            raise DomainError("only omega ** e is supported")
        return omega_power(Ordinal.of(exponent))

    def __bool__(self):
        return bool(self.omega1_coeff or self.cnf_tail)

    # inspection ---------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return not self.omega1_coeff and all(not e for e, _ in self.cnf_tail)

    def __int__(self):
        if not self.is_finite:
            raise DomainError(f"{format_ordinal(self)} is not finite")
        return self.cnf_tail[0][1] if self.cnf_tail else 0

    @property
    def kind(self) -> Kind:
        return classify(self)

    @property
    def is_isolated(self) -> bool:
        return is_isolated(self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


def _coerce(value):
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Ordinal.of(value)
    return None


ZERO = Ordinal()
ONE = Ordinal(0, ((ZERO, 1),))
OMEGA = Ordinal(0, ((ONE, 1),))
OMEGA1 = Ordinal(1)


def omega_power(exponent: OrdinalLike, coeff: int = 1) -> Ordinal:
    """Return ``w^exponent * coeff`` (``coeff = 0`` gives zero)."""
    exponent = Ordinal.of(exponent)
    if coeff == 0:
        return ZERO
    return Ordinal(0, ((exponent, coeff),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = Ordinal.of(a)._key, Ordinal.of(b)._key
    return (ka > kb) - (ka < kb)


def _add_tails(left: Sequence[Term], right: Sequence[Term]) -> Tuple[Term, ...]:
    if not right:
        return tuple(left)
    lead_exp, lead_coeff = right[0]
    kept = []
    for e, c in left:
        if e > lead_exp:
            kept.append((e, c))
        elif e == lead_exp:
            lead_coeff += c
            break
        else:
            break
    return tuple(kept) + ((lead_exp, lead_coeff),) + tuple(right[1:])


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Ordinal sum ``a + b``."""
    a, b = Ordinal.of(a), Ordinal.of(b)
    if b.omega1_coeff:
        # the countable tail of a is swallowed by w1
        return Ordinal(a.omega1_coeff + b.omega1_coeff, b.cnf_tail)
    return Ordinal(a.omega1_coeff, _add_tails(a.cnf_tail, b.cnf_tail))


def successor(a: OrdinalLike) -> Ordinal:
    return add(a, ONE)


def predecessor(a: OrdinalLike) -> Ordinal:
    a = Ordinal.of(a)
    if classify(a) is not Kind.SUCCESSOR:
        raise DomainError(f"not a successor ordinal: {format_ordinal(a)}")
    *head, (e, c) = a.cnf_tail
    if c > 1:
        head.append((e, c - 1))
    return Ordinal(a.omega1_coeff, head)


def classify(a: OrdinalLike) -> Kind:
    a = Ordinal.of(a)
    if not a:
        return Kind.ZERO
    if a.cnf_tail and not a.cnf_tail[-1][0]:
        return Kind.SUCCESSOR
    return Kind.LIMIT


def is_isolated(a: OrdinalLike) -> bool:
    """Isolated points of an ordinal space are 0 and the successors."""
    return classify(a) is not Kind.LIMIT


def cofinality_class(a: OrdinalLike) -> CofinalityClass:
    a = Ordinal.of(a)
    kind = classify(a)
    if kind is Kind.ZERO:
        return CofinalityClass.ZERO
    if kind is Kind.SUCCESSOR:
        return CofinalityClass.SUCCESSOR
    if not a.cnf_tail:
        return CofinalityClass.COF_OMEGA1
    # the last CNF term w^e has a countable exponent, hence cofinality w
    return CofinalityClass.COF_OMEGA


# text form ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(w1|ω₁|ω1)|(w|ω)|(\d+)|([+*^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text) - len(text[pos:].lstrip())
            raise OrdinalSyntaxError(f"unexpected character {text[stripped]!r}", stripped)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("W1", None, start))
        elif m.group(2):
            tokens.append(("W", None, start))
        elif m.group(3):
            tokens.append(("NAT", int(m.group(3)), start))
        else:
            tokens.append((m.group(4), None, start))
        pos = m.end()
    tokens.append(("END", None, len(text)))
    return tokens


class _Parser:
    # expr  := term ("+" term)*
    # term  := "w1" ("*" nat)? | "w" ("^" atom)? ("*" nat)? | nat | "(" expr ")"
    # atom  := nat | "w" ("^" atom)? | "(" expr ")"

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "END" else repr(tok[0] if tok[1] is None else tok[1])
            raise OrdinalSyntaxError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise OrdinalSyntaxError(f"unexpected token {tok[0] if tok[1] is None else tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] == "+":
            self.take()
            value = add(value, self.term())
        return value

    def coefficient(self):
        if self.peek()[0] == "*":
            self.take()
            return self.take("NAT")[1]
        return 1

    def exponent(self):
        start = self.peek()[2]
        value = self.atom()
        if value.omega1_coeff:
            raise OrdinalSyntaxError("uncountable exponent not supported", start)
        return value

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "NAT":
            self.take()
            return Ordinal.of(val)
        if kind == "W":
            self.take()
            exp = ONE
            if self.peek()[0] == "^":
                self.take()
                exp = self.exponent()
            return omega_power(exp)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if kind == "W1":
            raise OrdinalSyntaxError("uncountable exponent not supported", pos)
        raise OrdinalSyntaxError("expected an ordinal term", pos)

    def term(self):
        kind, val, pos = self.peek()
        if kind == "W1":
            self.take()
            if self.peek()[0] == "^":
                raise OrdinalSyntaxError("powers of w1 are not supported", self.peek()[2])
            return Ordinal(self.coefficient())
        if kind == "W":
            self.take()
            exp = ONE
            if self.peek()[0] == "^":
                self.take()
                exp = self.exponent()
            return omega_power(exp, self.coefficient())
        if kind == "NAT":
            self.take()
            return Ordinal.of(val)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise OrdinalSyntaxError("expected an ordinal term", pos)


def parse_ordinal(text: str) -> Ordinal:
    """Parse an ASCII ordinal expression such as ``"w1*2 + w^w + 3"``.

    Sums are normalized left to right, so ``"1 + w"`` gives ``w``.
    Compound exponents must be parenthesized: ``"w^(w+1)"``.
    """
    return _Parser(text).parse()


def _format_exponent(e: Ordinal) -> str:
    if e.is_finite or e == OMEGA:
        return format_ordinal(e)
    return f"({format_ordinal(e)})"


def format_ordinal(a: OrdinalLike) -> str:
    a = Ordinal.of(a)
    parts = []
    if a.omega1_coeff:
        parts.append("w1" if a.omega1_coeff == 1 else f"w1*{a.omega1_coeff}")
    for e, c in a.cnf_tail:
        if not e:
            parts.append(str(c))
            continue
        base = "w" if e == ONE else f"w^{_format_exponent(e)}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return " + ".join(parts) if parts else "0"


def ordinal_to_json(a: OrdinalLike) -> dict:
    a = Ordinal.of(a)
    return {
        "omega1_coeff": a.omega1_coeff,
        "cnf": [{"exp": ordinal_to_json(e), "coeff": c} for e, c in a.cnf_tail],
    }


def ordinal_from_json(data) -> Ordinal:
    if isinstance(data, int) and not isinstance(data, bool):
        return Ordinal.of(data)
    if isinstance(data, str):
        return parse_ordinal(data)
    try:
        m = data.get("omega1_coeff", 0)
        tail = [(ordinal_from_json(t["exp"]), t["coeff"]) for t in data.get("cnf", [])]
    except (AttributeError, KeyError, TypeError) as exc:
        raise ValidationError(f"malformed ordinal JSON: {data!r}") from exc
    return Ordinal(m, tail)
