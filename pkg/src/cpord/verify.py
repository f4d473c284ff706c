"""Exhaustive and seeded-random model checking of the phi construction.

Every suite enumerates a finite family of step functions whose change
points come from a fixed pool, runs one property on every member (or
every pair), and collects counterexamples into a :class:`VerifyReport`.
Any finite set of functions uses finitely many change points, so each
finite counterexample shows up for a large enough pool.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from functools import partial
from typing import List, Tuple

from cpord.dedekind import (
    Block,
    SubOrder,
    closure_remainder_oracle,
    dedekind_sections,
    gap_characteristic,
    make_suborder,
    remainder,
)
from cpord.errors import ReconstructionError, ValidationError
from cpord.ordinal import (
    OMEGA,
    Kind,
    Ordinal,
    add,
    classify,
    format_ordinal,
    omega_power,
    parse_ordinal,
)
from cpord.phi import phi_apply, phi_preimage_subbasic
from cpord.stepfn import (
    StepFn,
    eval_fn,
    probe_points,
    reconstruct_from_oracle,
    xor_add,
    zero_fn,
)

__all__ = [
    "FamilySpec",
    "VerifyReport",
    "DEFAULT_POOL",
    "DEDEKIND_MENU_V1",
    "enumerate_family",
    "verify_injectivity",
    "verify_homomorphism",
    "verify_continuity_table",
    "verify_uniqueness",
    "verify_group_axioms",
    "verify_dedekind",
    "verify_ordinal_laws",
    "random_ordinal",
    "random_suborder",
    "probe_class",
]

POOL_CAP = 12
PAIR_POOL_CAP = 8

DEFAULT_POOL: Tuple[Ordinal, ...] = tuple(Ordinal.of(n) for n in range(1, 9)) + (
    OMEGA + 1,
    omega_power(2) + 1,
)


@dataclass(frozen=True)
class FamilySpec:
    """All functions on ``domain`` whose change points lie in ``pool``."""

    domain: Ordinal
    pool: Tuple[Ordinal, ...]
    probes: Tuple[Ordinal, ...] = ()
    cap: int = POOL_CAP

    def __post_init__(self):
        domain = Ordinal.of(self.domain)
        pool = tuple(sorted({Ordinal.of(p) for p in self.pool}))
        for p in pool:
            if classify(p) is not Kind.SUCCESSOR:
                raise ValidationError(f"pool point {format_ordinal(p)} must be a nonzero isolated ordinal")
            if p >= domain:
                raise ValidationError(f"pool point {format_ordinal(p)} is not below {format_ordinal(domain)}")
        if len(pool) > self.cap:
            raise ValidationError(f"pool has {len(pool)} points; the cap is {self.cap}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "pool", pool)
        object.__setattr__(self, "probes", tuple(Ordinal.of(p) for p in self.probes))

    @property
    def all_probes(self) -> List[Ordinal]:
        """Probe points up to and including ``domain`` itself."""
        points = set(probe_points(self.domain, self.pool, include_top=True))
        points.update(p for p in self.probes if p <= self.domain)
        return sorted(points)

    def to_json(self) -> dict:
        return {
            "domain": format_ordinal(self.domain),
            "pool": [format_ordinal(p) for p in self.pool],
        }


@dataclass
class VerifyReport:
    suite: str
    cases: int = 0
    failures: List[dict] = field(default_factory=list)
    ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **witness):
        self.failures.append(witness)

    def merge(self, other: "VerifyReport") -> "VerifyReport":
        return VerifyReport(
            self.suite,
            self.cases + other.cases,
            self.failures + other.failures,
            self.ms + other.ms,
        )

    def to_json(self, timing: bool = True) -> dict:
        out = {"suite": self.suite, "cases": self.cases, "failures": self.failures}
        if timing:
            out["ms"] = round(self.ms, 3)
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True)

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} cases={self.cases} failures={len(self.failures)}"]
        for w in self.failures[:20]:
            lines.append("  " + json.dumps(w, sort_keys=True))
        return "\n".join(lines)


class _Timer:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.ms = (time.perf_counter() - self.t0) * 1000.0
        return False


def enumerate_family(spec: FamilySpec) -> List[StepFn]:
    """Both initial bits times every subset of the pool, in a fixed order."""
    out = []
    n = len(spec.pool)
    for initial in (0, 1):
        for mask in range(1 << n):
            changes = tuple(p for k, p in enumerate(spec.pool) if mask >> k & 1)
            out.append(StepFn(spec.domain, initial, changes))
    return out


def _fn_witness(f: StepFn) -> dict:
    return {"initial": f.initial, "changes": [format_ordinal(c) for c in f.changes]}


def _phi(phi, allow_countable_cofinality):
    return phi if phi is not None else partial(phi_apply, allow_countable_cofinality=allow_countable_cofinality)


def probe_class(x: Ordinal, tau: Ordinal) -> str:
    """Which row of the continuity table the point ``x <= tau`` falls in."""
    if x == tau:
        return "top"
    if not x:
        return "zero"
    return "limit" if classify(x) is Kind.LIMIT else "isolated"


def verify_injectivity(spec: FamilySpec, phi=None, allow_countable_cofinality=False) -> VerifyReport:
    phi = _phi(phi, allow_countable_cofinality)
    report = VerifyReport("injectivity")
    with _Timer(report):
        seen = {}
        for f in enumerate_family(spec):
            report.cases += 1
            image = phi(f)
            key = (image.domain, tuple(image.support))
            if key in seen:
                report.fail(
                    f=_fn_witness(seen[key]),
                    g=_fn_witness(f),
                    image=[format_ordinal(s) for s in image.support],
                )
            else:
                seen[key] = f
    return report


def verify_homomorphism(
    spec: FamilySpec, phi=None, allow_countable_cofinality=False, pair_cap=PAIR_POOL_CAP
) -> VerifyReport:
    """``phi(f + g) = phi(f) + phi(g)`` on all ordered pairs, as supports and pointwise."""
    if len(spec.pool) > pair_cap:
        raise ValidationError(f"pair suites take at most {pair_cap} pool points, got {len(spec.pool)}")
    phi = _phi(phi, allow_countable_cofinality)
    report = VerifyReport("homomorphism")
    with _Timer(report):
        family = enumerate_family(spec)
        probes = spec.all_probes
        images = [phi(f) for f in family]
        supports = [frozenset(g.support) for g in images]
        values = [tuple(g(x) for x in probes) for g in images]
        for (i, f), (j, g) in itertools.product(enumerate(family), repeat=2):
            report.cases += 1
            h = phi(xor_add(f, g))
            if frozenset(h.support) != supports[i] ^ supports[j]:
                report.fail(f=_fn_witness(f), g=_fn_witness(g), law="support")
                continue
            for x, a, b in zip(probes, values[i], values[j]):
                if h(x) != a ^ b:
                    report.fail(f=_fn_witness(f), g=_fn_witness(g), law="pointwise", x=format_ordinal(x))
                    break
    return report


def verify_continuity_table(
    spec: FamilySpec, phi=None, preimage=phi_preimage_subbasic, allow_countable_cofinality=False
) -> VerifyReport:
    """``f`` lies in the tabulated preimage of ``{g : g(x) = b}`` iff ``phi(f)(x) = b``."""
    phi = _phi(phi, allow_countable_cofinality)
    tau = spec.domain
    report = VerifyReport("continuity")
    with _Timer(report):
        probes = spec.all_probes
        predicates = {(x, b): preimage(x, b, tau) for x in probes for b in (0, 1)}
        for f in enumerate_family(spec):
            image = phi(f)
            for x in probes:
                value = image(x)
                for b in (0, 1):
                    report.cases += 1
                    member = predicates[x, b].contains(f)
                    if member != (value == b):
                        report.fail(
                            f=_fn_witness(f),
                            x=format_ordinal(x),
                            bit=b,
                            case=probe_class(x, tau),
                            member=member,
                            value=value,
                        )
    return report


def verify_uniqueness(spec: FamilySpec) -> VerifyReport:
    """Values alone determine the canonical form: reconstruction is the identity."""
    report = VerifyReport("uniqueness")
    with _Timer(report):
        for f in enumerate_family(spec):
            report.cases += 1
            try:
                g = reconstruct_from_oracle(spec.domain, partial(eval_fn, f), spec.pool)
            except ReconstructionError as exc:
                report.fail(f=_fn_witness(f), error=str(exc))
                continue
            if g != f:
                report.fail(f=_fn_witness(f), got=_fn_witness(g))
    return report


def verify_group_axioms(spec: FamilySpec, triple_pool: int = 4, add=xor_add) -> VerifyReport:
    """Boolean group laws for ``xor_add`` over the family of ``spec``.

    Identity, self-inverse and commutativity run over the whole family;
    associativity runs over all triples of the subfamily generated by the
    first ``triple_pool`` pool points.
    """
    if len(spec.pool) > PAIR_POOL_CAP:
        raise ValidationError(f"pair suites take at most {PAIR_POOL_CAP} pool points, got {len(spec.pool)}")
    report = VerifyReport("group")
    with _Timer(report):
        family = enumerate_family(spec)
        zero = zero_fn(spec.domain)
        for f in family:
            report.cases += 2
            if add(f, zero) != f or add(zero, f) != f:
                report.fail(law="identity", f=_fn_witness(f))
            if add(f, f) != zero:
                report.fail(law="inverse", f=_fn_witness(f))
        for f, g in itertools.product(family, repeat=2):
            report.cases += 1
            if add(f, g) != add(g, f):
                report.fail(law="commutativity", f=_fn_witness(f), g=_fn_witness(g))
        sub = enumerate_family(FamilySpec(spec.domain, spec.pool[:triple_pool]))
        for f, g, h in itertools.product(sub, repeat=3):
            report.cases += 1
            if add(add(f, g), h) != add(f, add(g, h)):
                report.fail(law="associativity", f=_fn_witness(f), g=_fn_witness(g), h=_fn_witness(h))
    return report


# Dedekind ------------------------------------------------------------------

# Versioned endpoint menu for random suborders; append-only so old seeds
# keep reproducing.
DEDEKIND_MENU_V1: Tuple[Ordinal, ...] = tuple(
    parse_ordinal(t)
    for t in (
        "0", "1", "2", "3", "5",
        "w", "w+1", "w+2", "w*2", "w*2+1", "w*3",
        "w^2", "w^2+1", "w^2+w", "w^2+w+1", "w^2*2", "w^2*2+3",
        "w1", "w1+1", "w1+w", "w1+w+1", "w1+w^2", "w1*2",
    )
)


def random_suborder(rng: random.Random, max_blocks: int = 6, menu=DEDEKIND_MENU_V1):
    """Return ``(raw_blocks, suborder)`` for a random finite union of blocks.

    The raw blocks are pairwise disjoint but possibly adjacent, so the
    canonical form may have fewer blocks than the raw list.
    """
    while True:
        k = rng.randint(1, max_blocks)
        points = sorted(rng.choices(menu, k=2 * k))
        raw = [
            Block(points[2 * i], points[2 * i + 1], rng.random() < 0.5)
            for i in range(k)
        ]
        bound = max(b.bound for b in raw)
        bigger = [m for m in menu if m > bound]
        ambient = rng.choice(bigger) if bigger and rng.random() < 0.3 else bound
        try:
            return raw, make_suborder(ambient, raw)
        except ValidationError:
            continue


def _literal_sections(X: SubOrder) -> List[Ordinal]:
    """Sections found by testing every cut between blocks against the definition."""
    blocks = X.blocks
    n = len(blocks)
    found = []
    for j in range(1, n + 1):
        A, B = blocks[:j], blocks[j:]
        max_a = A[-1].end_included
        min_b = bool(B)
        if j == n:
            is_section = not max_a
        else:
            is_section = not (max_a and min_b)
        if not is_section:
            continue
        # a limit point of a block outside it can only be the end of an open block
        a_closed = not any(not b.end_included and b.end in X for b in A)
        b_closed = not any(not b.end_included and any(b.end in a for a in A) for b in B)
        if a_closed and b_closed:
            found.append(A[-1].bound)
    return found


def verify_dedekind(trials: int = 200, seed: int = 1, max_blocks: int = 6) -> VerifyReport:
    """Remainder by sections vs. remainder by closure, on random suborders."""
    rng = random.Random(seed)
    report = VerifyReport("dedekind")
    with _Timer(report):
        for _ in range(trials):
            raw, X = random_suborder(rng, max_blocks)
            report.cases += 1
            witness = {"set": str(X), "ambient": format_ordinal(X.ambient)}
            rem = remainder(X)
            if rem != closure_remainder_oracle((X.ambient, raw)) or rem != closure_remainder_oracle(X):
                report.fail(law="remainder", **witness)
                continue
            if rem != _literal_sections(X):
                report.fail(law="section-condition", **witness)
                continue
            chars = {tuple(bit for _, bit in gap_characteristic(X, g)) for g in dedekind_sections(X)}
            if len(chars) != len(rem):
                report.fail(law="characteristic-injective", **witness)
    return report


# Ordinal arithmetic --------------------------------------------------------

def random_ordinal(rng: random.Random, depth: int = 2, max_terms: int = 3, max_coeff: int = 4, omega1_max: int = 2) -> Ordinal:
    m = rng.randint(0, omega1_max) if rng.random() < 0.3 else 0
    return Ordinal(m, _random_tail(rng, depth, max_terms, max_coeff))


def _random_tail(rng, depth, max_terms, max_coeff):
    n = rng.randint(0, max_terms)
    if depth <= 0:
        exps = {Ordinal.of(rng.randint(0, 3)) for _ in range(n)}
    else:
        exps = {Ordinal(0, _random_tail(rng, depth - 1, max_terms, max_coeff)) for _ in range(n)}
    return [(e, rng.randint(1, max_coeff)) for e in sorted(exps, reverse=True)]


def verify_ordinal_laws(trials: int = 1000, seed: int = 0) -> VerifyReport:
    """Associativity, strict right monotonicity and parse/format round trip of ``add``."""
    rng = random.Random(seed)
    report = VerifyReport("ordinal-laws")
    with _Timer(report):
        for _ in range(trials):
            a, b, c = (random_ordinal(rng) for _ in range(3))
            report.cases += 3
            if add(add(a, b), c) != add(a, add(b, c)):
                report.fail(law="associativity", a=format_ordinal(a), b=format_ordinal(b), c=format_ordinal(c))
            while b == c:
                c = random_ordinal(rng)
            lo, hi = sorted((b, c))
            if not add(a, lo) < add(a, hi):
                report.fail(law="monotonicity", a=format_ordinal(a), b=format_ordinal(lo), c=format_ordinal(hi))
            if parse_ordinal(format_ordinal(a)) != a:
                report.fail(law="round-trip", a=format_ordinal(a))
    return report
