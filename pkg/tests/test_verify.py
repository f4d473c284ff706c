import pytest

from cpord.errors import ValidationError
from cpord.ordinal import OMEGA, OMEGA1
from cpord.phi import PredicateKind, SubbasicPredicate, phi_apply, phi_preimage_subbasic
from cpord.stepfn import IndicatorFn, StepFn
from cpord.verify import (
    DEFAULT_POOL,
    FamilySpec,
    enumerate_family,
    probe_class,
    random_suborder,
    verify_continuity_table,
    verify_dedekind,
    verify_group_axioms,
    verify_homomorphism,
    verify_injectivity,
    verify_ordinal_laws,
    verify_uniqueness,
)
from cpord.dedekind import closure_remainder_oracle, remainder

W = OMEGA
SMALL = FamilySpec(OMEGA1, (3, 5))
SPEC = FamilySpec(OMEGA1, DEFAULT_POOL)


class TestFamily:
    @pytest.mark.parametrize("pool, size", [((), 2), ((3,), 4), (tuple(range(1, 11)), 2048)])
    def test_size(self, pool, size):
        assert len(enumerate_family(FamilySpec(OMEGA1, pool))) == size

    def test_deterministic_and_distinct(self):
        a = enumerate_family(SMALL)
        assert a == enumerate_family(SMALL)
        assert len(set(a)) == len(a)

    def test_cap(self):
        with pytest.raises(ValidationError, match="cap"):
            FamilySpec(OMEGA1, tuple(range(1, 14)))

    @pytest.mark.parametrize("bad", [0, W, OMEGA1])
    def test_pool_points_valid(self, bad):
        with pytest.raises(ValidationError):
            FamilySpec(OMEGA1, (bad,))

    def test_probes_cover_all_classes(self):
        classes = {probe_class(x, SPEC.domain) for x in SPEC.all_probes}
        assert classes == {"zero", "limit", "isolated", "top"}


class TestSuites:
    def test_injectivity_small(self):
        r = verify_injectivity(SMALL)
        assert r.passed and r.cases == 8

    def test_injectivity_empty_pool(self):
        r = verify_injectivity(FamilySpec(OMEGA1, ()))
        assert r.passed and r.cases == 2

    def test_homomorphism(self):
        r = verify_homomorphism(FamilySpec(OMEGA1, (3, 5, W + 1)))
        assert r.passed and r.cases == 16 * 16

    def test_pair_cap(self):
        with pytest.raises(ValidationError):
            verify_homomorphism(FamilySpec(OMEGA1, tuple(range(1, 10))))

    def test_continuity(self):
        r = verify_continuity_table(SMALL)
        assert r.passed and r.cases == 8 * len(SMALL.all_probes) * 2

    def test_uniqueness(self):
        assert verify_uniqueness(FamilySpec(OMEGA1, (1, 2, W + 1))).passed

    def test_group(self):
        assert verify_group_axioms(FamilySpec(OMEGA1, (1, 2, 3, 4, W + 1))).passed

    def test_dedekind(self):
        r = verify_dedekind(50, seed=3)
        assert r.passed and r.cases == 50

    def test_ordinal_laws(self):
        assert verify_ordinal_laws(100, seed=5).passed

    def test_report_text(self):
        assert verify_injectivity(SMALL).text() == "PASS cases=8 failures=0"


class TestDeterminism:
    def test_same_seed_same_report(self):
        a = verify_dedekind(40, seed=11).dumps(timing=False)
        b = verify_dedekind(40, seed=11).dumps(timing=False)
        assert a == b

    def test_random_suborders_repeat(self):
        import random

        xs = [random_suborder(random.Random(4))[1] for _ in range(2)]
        assert xs[0] == xs[1]

    def test_raw_and_canonical_agree(self):
        import random

        rng = random.Random(9)
        merged = 0
        for _ in range(200):
            raw, X = random_suborder(rng)
            merged += len(raw) != len(X.blocks)
            assert closure_remainder_oracle((X.ambient, raw)) == remainder(X)
        assert merged > 0  # adjacency merges actually occur

    def test_report_json(self):
        data = verify_injectivity(SMALL).to_json()
        assert set(data) == {"suite", "cases", "failures", "ms"}


# mutation sensitivity -------------------------------------------------------

def phi_without_zero_mark(f, allow_countable_cofinality=False):
    return IndicatorFn(f.domain + 1, f.changes)


def phi_marking_omega(f, allow_countable_cofinality=False):
    g = phi_apply(f)
    return IndicatorFn(g.domain, tuple(sorted(set(g.support) | {W}))) if f.initial else g


def phi_marking_top(f, allow_countable_cofinality=False):
    g = phi_apply(f)
    return IndicatorFn(g.domain, g.support + (f.domain,)) if f.changes else g


def phi_dropping_last_change(f, allow_countable_cofinality=False):
    g = phi_apply(f)
    return IndicatorFn(g.domain, g.support[:-1]) if len(f.changes) > 1 else g


def test_injectivity_catches_dropped_zero_mark():
    r = verify_injectivity(FamilySpec(OMEGA1, ()), phi=phi_without_zero_mark)
    assert not r.passed
    (w,) = r.failures
    assert {w["f"]["initial"], w["g"]["initial"]} == {0, 1} and w["image"] == []


@pytest.mark.parametrize("mutant", [phi_marking_omega, phi_marking_top, phi_without_zero_mark])
def test_continuity_catches_phi_mutants(mutant):
    assert not verify_continuity_table(SMALL, phi=mutant).passed


def test_homomorphism_catches_mutant():
    assert not verify_homomorphism(SMALL, phi=phi_dropping_last_change).passed


_FLIP = {
    PredicateKind.ALL: PredicateKind.EMPTY,
    PredicateKind.EMPTY: PredicateKind.ALL,
    PredicateKind.FLIP_AT: PredicateKind.NO_FLIP_AT,
    PredicateKind.NO_FLIP_AT: PredicateKind.FLIP_AT,
}


def mutate_case(case, bit):
    """Continuity table with one of its eight cells negated."""

    def preimage(x, b, tau):
        pred = phi_preimage_subbasic(x, b, tau)
        if probe_class(x, tau) != case or b != bit:
            return pred
        if pred.kind is PredicateKind.VALUE_AT_ZERO:
            return SubbasicPredicate(pred.kind, pred.domain, bit=1 - pred.bit)
        return SubbasicPredicate(_FLIP[pred.kind], pred.domain, point=pred.point)

    return preimage


@pytest.mark.parametrize("case", ["top", "zero", "limit", "isolated"])
@pytest.mark.parametrize("bit", [0, 1])
def test_continuity_catches_each_table_cell(case, bit):
    r = verify_continuity_table(SPEC, preimage=mutate_case(case, bit))
    assert not r.passed
    assert {w["case"] for w in r.failures} == {case}
    assert {w["bit"] for w in r.failures} == {bit}


def test_group_catches_bad_addition():
    def union_add(f, g):
        return StepFn(f.domain, f.initial | g.initial, tuple(sorted(set(f.changes) | set(g.changes))))

    r = verify_group_axioms(FamilySpec(OMEGA1, (1, 2)), add=union_add)
    assert {w["law"] for w in r.failures} >= {"inverse"}
