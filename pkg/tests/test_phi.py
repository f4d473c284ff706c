import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpord.errors import DomainError, NotInImageError
from cpord.ordinal import OMEGA, OMEGA1, ZERO, Ordinal, omega_power
from cpord.phi import (
    PredicateKind,
    image_membership,
    phi_apply,
    phi_apply_stepfn,
    phi_invert,
    phi_preimage_subbasic,
)
from cpord.stepfn import IndicatorFn, StepFn, eval_fn, make_stepfn, probe_points, xor_add, zero_fn

W = OMEGA
TOP = OMEGA1 + 1
POOL = [Ordinal.of(n) for n in (1, 3, 4, 5)] + [W + 1, omega_power(2) + 1]
PROBES = probe_points(OMEGA1, POOL, include_top=True)

stepfns = st.builds(
    lambda i, cs: make_stepfn(OMEGA1, i, cs),
    st.sampled_from([0, 1]),
    st.sets(st.sampled_from(POOL)),
)


def support(*points):
    return tuple(Ordinal.of(p) for p in points)


class TestApply:
    def test_constant_one_marks_zero(self):
        g = phi_apply(make_stepfn(OMEGA1, 1, []))
        assert g.domain == TOP and g.support == support(0)

    def test_initial_zero_marks_changes(self):
        g = phi_apply(make_stepfn(OMEGA1, 0, [3, 5]))
        assert g.support == support(3, 5)
        assert (g(3), g(W), g(OMEGA1)) == (1, 0, 0)

    def test_zero_to_zero(self):
        assert phi_apply(zero_fn(OMEGA1)).support == ()

    @pytest.mark.parametrize("tau", [W, W + 1, omega_power(W), OMEGA1 + W])
    def test_cofinality_gate(self, tau):
        with pytest.raises(DomainError, match="uncountable cofinality"):
            phi_apply(make_stepfn(tau, 0, [3]))

    def test_gate_override(self):
        g = phi_apply(make_stepfn(W, 0, [3]), allow_countable_cofinality=True)
        assert g.domain == W + 1 and g.support == support(3)

    def test_higher_uncountable_tau(self):
        g = phi_apply(make_stepfn(Ordinal(2), 1, [OMEGA1 + 1]))
        assert g.domain == Ordinal(2) + 1 and g.support == (ZERO, OMEGA1 + 1)

    @given(stepfns)
    def test_zero_at_limits_and_top(self, f):
        g = phi_apply(f)
        for x in PROBES:
            if x == OMEGA1 or not x.is_isolated:
                assert g(x) == 0

    @given(stepfns)
    def test_stepfn_form_agrees(self, f):
        g, h = phi_apply(f), phi_apply_stepfn(f)
        for x in PROBES:
            assert g(x) == eval_fn(h, x)

    @given(stepfns)
    def test_support_law(self, f):
        expected = set(f.changes) | ({ZERO} if f.initial else set())
        assert set(phi_apply(f).support) == expected


class TestInvert:
    def test_empty(self):
        assert phi_invert(IndicatorFn.make(TOP, [])) == StepFn(OMEGA1, 0, ())

    def test_two_points(self):
        g = IndicatorFn.make(TOP, [3, 5])
        f = phi_invert(g)
        assert f == StepFn(OMEGA1, 0, support(3, 5))
        assert phi_apply(f) == g

    @pytest.mark.parametrize("point", [W, W + W, OMEGA1])
    def test_not_in_image(self, point):
        with pytest.raises(NotInImageError) as info:
            phi_invert(IndicatorFn.make(TOP, [1, point]))
        assert info.value.witness == point

    def test_top_of_successor_tau(self):
        # tau = 5 (override territory): g(tau) = 1 is outside the image
        with pytest.raises(NotInImageError, match="top point"):
            phi_invert(IndicatorFn.make(6, [5]))

    @given(stepfns)
    def test_round_trip(self, f):
        assert phi_invert(phi_apply(f)) == f


class TestImageMembership:
    def test_realized_points(self):
        g = IndicatorFn.make(TOP, [0, 7, W + 1])
        assert image_membership(g)
        # realized by an explicit preimage
        assert phi_apply(make_stepfn(OMEGA1, 1, [7, W + 1])) == g

    def test_limit(self):
        assert not image_membership(IndicatorFn.make(TOP, [W + W]))

    def test_empty(self):
        assert image_membership(IndicatorFn.make(TOP, []))

    def test_limit_domain(self):
        assert not image_membership(IndicatorFn.make(OMEGA1, []))

    def test_subgroup_closure(self):
        family = [make_stepfn(OMEGA1, i, cs) for i in (0, 1) for r in range(3) for cs in itertools.combinations(POOL[:4], r)]
        images = {phi_apply(f).support for f in family}
        for a, b in itertools.product(images, repeat=2):
            s = tuple(sorted(set(a) ^ set(b)))
            assert image_membership(IndicatorFn(TOP, s))
        assert () in images


class TestPreimage:
    @pytest.mark.parametrize(
        "x, bit, kind",
        [
            (OMEGA1, 0, PredicateKind.ALL),
            (OMEGA1, 1, PredicateKind.EMPTY),
            (0, 0, PredicateKind.VALUE_AT_ZERO),
            (0, 1, PredicateKind.VALUE_AT_ZERO),
            (W, 0, PredicateKind.ALL),
            (W, 1, PredicateKind.EMPTY),
            (5, 0, PredicateKind.NO_FLIP_AT),
            (5, 1, PredicateKind.FLIP_AT),
        ],
    )
    def test_table(self, x, bit, kind):
        pred = phi_preimage_subbasic(x, bit, OMEGA1)
        assert pred.kind is kind
        if kind is PredicateKind.VALUE_AT_ZERO:
            assert pred.bit == bit
        if kind in (PredicateKind.FLIP_AT, PredicateKind.NO_FLIP_AT):
            assert pred.point == x
        assert str(pred) in {"All", "Empty", f"ValueAtZero({bit})", f"FlipAt({x})", f"NoFlipAt({x})"}

    def test_out_of_domain(self):
        with pytest.raises(DomainError):
            phi_preimage_subbasic(OMEGA1 + 1, 0, OMEGA1)

    def test_flip_semantics(self):
        f = make_stepfn(OMEGA1, 0, [5])
        assert phi_preimage_subbasic(5, 1, OMEGA1).contains(f)
        assert not phi_preimage_subbasic(4, 1, OMEGA1).contains(f)
        assert f in phi_preimage_subbasic(4, 0, OMEGA1)

    @given(stepfns)
    def test_soundness(self, f):
        g = phi_apply(f)
        for x in PROBES:
            for b in (0, 1):
                assert phi_preimage_subbasic(x, b, OMEGA1).contains(f) == (g(x) == b)


class TestHomomorphism:
    def test_example(self):
        f = make_stepfn(OMEGA1, 0, [3, 5])
        g = make_stepfn(OMEGA1, 1, [3])
        assert phi_apply(xor_add(f, g)).support == support(0, 5)
        assert set(phi_apply(f).support) ^ set(phi_apply(g).support) == set(support(0, 5))

    @given(stepfns, stepfns)
    def test_pointwise(self, f, g):
        h = phi_apply(xor_add(f, g))
        a, b = phi_apply(f), phi_apply(g)
        for x in PROBES:
            assert h(x) == a(x) ^ b(x)

    @given(stepfns, stepfns)
    def test_injective(self, f, g):
        assert (phi_apply(f) == phi_apply(g)) == (f == g)
