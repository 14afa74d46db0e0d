import random

import pytest
from hypothesis import given, settings, strategies as st

from symbif import (
    CustomDomain,
    DiskDomain,
    InsufficientSpectrum,
    NotAMember,
    RepDescriptor,
    SchemaError,
    SpectrumEntry,
    SystemSpec,
    ValidationError,
    epsilon_gap,
    kernel_reps,
    lambda_membership,
    lambda_set,
    linearization_eigenvalues,
    system_spec_from_json,
)

ALPHA2 = 1.8411837813406593**2  # first rotation-1 disk eigenvalue
ALPHA3 = 3.0542369282271403**2  # first rotation-2 disk eigenvalue


def a9_spec(q1: int, p2: int, mu: int = 0, **kw) -> SystemSpec:
    b1 = {v: m for v, m in ((0, mu), (1, q1)) if m}
    b2 = {1: p2} if p2 else {}
    return SystemSpec(
        p1=q1 + mu, p2=p2, sigma_b1=b1, sigma_b2=b2, mu_b0=mu, domain=DiskDomain(), a9=True, **kw
    )


class TestSystemSpecValidation:
    def test_multiplicity_totals(self):
        with pytest.raises(ValidationError):
            SystemSpec(p1=2, p2=0, sigma_b1={1: 1}, sigma_b2={}, domain=DiskDomain())

    def test_needs_a_component(self):
        with pytest.raises(ValidationError):
            SystemSpec(p1=0, p2=0, sigma_b1={}, sigma_b2={}, domain=DiskDomain())

    def test_mu_bounded_by_zero_multiplicity(self):
        with pytest.raises(ValidationError):
            SystemSpec(p1=1, p2=0, sigma_b1={1: 1}, sigma_b2={}, mu_b0=1, domain=DiskDomain())

    def test_a9_block_shape_enforced(self):
        with pytest.raises(ValidationError):
            SystemSpec(p1=1, p2=0, sigma_b1={2: 1}, sigma_b2={}, domain=DiskDomain(), a9=True)
        with pytest.raises(ValidationError):
            SystemSpec(p1=1, p2=1, sigma_b1={1: 1}, sigma_b2={-1: 1}, domain=DiskDomain(), a9=True)
        spec = a9_spec(q1=2, p2=1, mu=1)
        assert spec.q1 == 2

    def test_negative_multiplicity(self):
        with pytest.raises(ValidationError):
            SystemSpec(p1=1, p2=0, sigma_b1={1: -1}, sigma_b2={}, domain=DiskDomain())

    def test_morse_counts(self):
        spec = SystemSpec(
            p1=3, p2=2, sigma_b1={1: 1, -2: 1, 0: 1}, sigma_b2={3: 1, -1: 1}, domain=DiskDomain()
        )
        assert spec.morse_plus() == 2
        assert spec.morse_minus() == 2


class TestSystemSpecJson:
    DOC = {
        "p1": 2,
        "p2": 0,
        "b1": [{"value": 1, "mult": 2}],
        "b2": [],
        "mu_b0": 0,
        "domain": {"type": "disk"},
        "a9": True,
    }

    def test_round_trip(self):
        spec = system_spec_from_json(self.DOC)
        assert spec.to_json() == self.DOC

    def test_unknown_key(self):
        with pytest.raises(SchemaError):
            system_spec_from_json({**self.DOC, "extra": 1})

    def test_bad_block_entry(self):
        with pytest.raises(SchemaError):
            system_spec_from_json({**self.DOC, "b1": [{"mult": 2}]})

    def test_ball_domain_round_trip(self):
        doc = {
            "p1": 2,
            "p2": 0,
            "b1": [{"value": 1, "mult": 2}],
            "b2": [],
            "mu_b0": 0,
            "domain": {
                "type": "ball",
                "dim": 4,
                "entries": [
                    {"eigenvalue": 0.0, "rep": {"trivial": 1, "irr": {}}},
                    {"eigenvalue": 7.0, "rep": {"trivial": 0, "irr": {"1": 1}}},
                ],
            },
            "a9": True,
        }
        spec = system_spec_from_json(doc)
        redone = system_spec_from_json(spec.to_json())
        assert redone.domain.dim == 4
        assert redone.domain.entries == spec.domain.entries
        assert redone.to_json() == spec.to_json()

    def test_custom_domain(self):
        doc = {
            "p1": 1,
            "p2": 0,
            "b1": [{"value": 2.0, "mult": 1}],
            "b2": [],
            "mu_b0": 0,
            "domain": {
                "type": "custom",
                "entries": [
                    {"eigenvalue": 0.0, "rep": {"trivial": 1, "irr": {}}},
                    {"eigenvalue": 4.0, "rep": {"trivial": 0, "irr": {"1": 1}}},
                ],
            },
            "a9": False,
        }
        spec = system_spec_from_json(doc)
        assert isinstance(spec.domain, CustomDomain)
        assert lambda_set(spec, (0.0, 2.0)) == [0.0, 2.0]
        with pytest.raises(InsufficientSpectrum):
            lambda_set(spec, (0.0, 4.0))  # needs alpha up to 8, spectrum stops at 4


class TestLambdaSet:
    def test_a9_positive_regime(self):
        spec = a9_spec(q1=2, p2=0)
        members = lambda_set(spec, (0.0, 15.0))
        assert len(members) == 4
        assert members[0] == 0.0
        assert abs(members[1] - 3.38996) < 1e-4
        assert abs(members[2] - 9.32836) < 1e-4
        assert abs(members[3] - 14.68197) < 1e-4

    def test_a9_negative_regime(self):
        spec = a9_spec(q1=0, p2=1, mu=0)
        members = lambda_set(spec, (-10.0, 0.0))
        assert len(members) == 3
        assert abs(members[0] + 9.32836) < 1e-4
        assert abs(members[1] + 3.38996) < 1e-4
        assert members[2] == 0.0

    def test_empty_blocks_give_empty_set(self):
        spec = SystemSpec(p1=1, p2=0, sigma_b1={0: 1}, sigma_b2={}, mu_b0=1, domain=DiskDomain())
        assert lambda_set(spec, (-100.0, 100.0)) == []

    def test_scaling_by_b(self):
        spec = SystemSpec(p1=1, p2=0, sigma_b1={2: 1}, sigma_b2={}, domain=DiskDomain())
        members = lambda_set(spec, (0.1, 3.0))
        assert abs(members[0] - ALPHA2 / 2) < 1e-6

    def test_negative_b_mirrors(self):
        spec = SystemSpec(p1=1, p2=0, sigma_b1={-1: 1}, sigma_b2={}, domain=DiskDomain())
        members = lambda_set(spec, (-10.0, -0.1))
        assert abs(members[-1] + ALPHA2) < 1e-6

    def test_window_endpoints_inclusive(self):
        spec = a9_spec(q1=1, p2=0)
        members = lambda_set(spec, (0.0, 0.0))
        assert members == [0.0]

    def test_dedup_of_coincident_members(self):
        # b and 2b produce the same lambda for alpha and 2*alpha in a made-up spectrum
        entries = [
            SpectrumEntry(0.0, RepDescriptor.trivial(1)),
            SpectrumEntry(2.0, RepDescriptor.irr(1)),
            SpectrumEntry(4.0, RepDescriptor.irr(2)),
        ]
        spec = SystemSpec(
            p1=2, p2=0, sigma_b1={1: 1, 2: 1}, sigma_b2={}, domain=CustomDomain(entries)
        )
        members = lambda_set(spec, (0.0, 2.0))
        assert members == [0.0, 1.0, 2.0]  # lambda = 2 arises twice, reported once

    def test_insufficient_spectrum_from_bound(self):
        spec = SystemSpec(
            p1=1, p2=0, sigma_b1={1: 1}, sigma_b2={}, domain=DiskDomain(bound=20.0)
        )
        with pytest.raises(InsufficientSpectrum):
            lambda_set(spec, (0.0, 100.0))

    def test_insufficient_spectrum_from_custom(self):
        entries = [SpectrumEntry(0.0, RepDescriptor.trivial(1)), SpectrumEntry(5.0, RepDescriptor.irr(1))]
        spec = SystemSpec(p1=1, p2=0, sigma_b1={1: 1}, sigma_b2={}, domain=CustomDomain(entries))
        with pytest.raises(InsufficientSpectrum):
            lambda_set(spec, (0.0, 50.0))


class TestKernelReps:
    def test_outside_lambda_is_zero(self):
        spec = a9_spec(q1=2, p2=0)
        kr = kernel_reps(spec, 1.2345)
        assert kr.is_zero()

    def test_positive_match(self):
        spec = a9_spec(q1=2, p2=0)
        kr = kernel_reps(spec, ALPHA2)
        assert kr.v1 == RepDescriptor.irr(1, 2)
        assert kr.v2.is_zero()

    def test_negative_match(self):
        spec = a9_spec(q1=0, p2=3)
        kr = kernel_reps(spec, -ALPHA2)
        assert kr.v1.is_zero()
        assert kr.v2 == RepDescriptor.irr(1, 3)

    def test_zero_parameter_collects_constants(self):
        spec = a9_spec(q1=2, p2=1)
        kr = kernel_reps(spec, 0.0)
        assert kr.v1 == RepDescriptor.trivial(2)
        assert kr.v2 == RepDescriptor.trivial(1)

    def test_total_dim_matches_vanishing_multiplicity(self):
        spec = SystemSpec(
            p1=2, p2=1, sigma_b1={1: 1, -1: 1}, sigma_b2={2: 1}, domain=DiskDomain()
        )
        for lam in (ALPHA2, -ALPHA2, ALPHA3 / 2 * -1, 0.5):
            kr = kernel_reps(spec, lam)
            lin = linearization_eigenvalues(spec, lam, 8)
            vanishing = sum(r.multiplicity for r in lin if r.vanishes)
            assert kr.total_dim() == vanishing


class TestLinearization:
    def test_lambda_zero_b1_values_nonnegative(self):
        spec = a9_spec(q1=2, p2=0)
        for rec in linearization_eigenvalues(spec, 0.0, 6):
            if rec.block == "B1" and rec.b == 1:
                alpha = rec.entry.eigenvalue
                assert rec.value == pytest.approx(alpha / (1 + alpha))
                assert rec.value >= 0

    def test_kernel_at_matched_eigenvalue(self):
        spec = SystemSpec(p1=3, p2=0, sigma_b1={1: 3}, sigma_b2={}, domain=DiskDomain())
        recs = [r for r in linearization_eigenvalues(spec, ALPHA2, 6) if r.vanishes]
        assert len(recs) == 1
        assert recs[0].multiplicity == 2 * 3  # eigenspace dim 2 times mu_B1(1) = 3
        assert abs(recs[0].value) < 1e-7

    def test_b2_block_negative_for_positive_lambda(self):
        spec = SystemSpec(p1=0, p2=2, sigma_b1={}, sigma_b2={1: 1, 3: 1}, domain=DiskDomain())
        for rec in linearization_eigenvalues(spec, 2.5, 5):
            assert rec.block == "B2"
            assert rec.value < 0

    def test_structural_flags(self):
        spec = SystemSpec(p1=2, p2=0, sigma_b1={0: 1, 1: 1}, sigma_b2={}, mu_b0=1, domain=DiskDomain())
        recs = linearization_eigenvalues(spec, 0.7, 4)
        structural = [r for r in recs if r.structural]
        assert len(structural) == 1
        assert structural[0].b == 0 and structural[0].entry.eigenvalue == 0.0
        assert structural[0].value == 0.0

    def test_k_max_validation(self):
        spec = a9_spec(q1=1, p2=0)
        with pytest.raises(ValidationError):
            linearization_eigenvalues(spec, 0.0, 0)

    def test_insufficient_for_supplied_domain(self):
        entries = [SpectrumEntry(0.0, RepDescriptor.trivial(1))]
        spec = SystemSpec(p1=1, p2=0, sigma_b1={1: 1}, sigma_b2={}, domain=CustomDomain(entries))
        with pytest.raises(InsufficientSpectrum):
            linearization_eigenvalues(spec, 0.0, 2)


class TestThreeWayEquivalence:
    def test_membership_kernel_linearization_agree(self):
        spec = SystemSpec(
            p1=3,
            p2=1,
            sigma_b1={1: 1, -0.5: 1, 0: 1},
            sigma_b2={2: 1},
            mu_b0=1,
            domain=DiskDomain(),
        )
        members = lambda_set(spec, (-12.0, 12.0))
        rng = random.Random(20240817)
        sampled = [rng.uniform(-12.0, 12.0) for _ in range(200)] + members
        k_max = len(spec.domain.entries_up_to(30.0))
        for lam in sampled:
            in_lambda = lambda_membership(spec, lam)
            kernel_nonzero = not kernel_reps(spec, lam).is_zero()
            lin = linearization_eigenvalues(spec, lam, k_max)
            has_vanishing = any(r.vanishes for r in lin)
            assert in_lambda == kernel_nonzero == has_vanishing, lam
            for r in lin:
                if r.vanishes:
                    assert abs(r.value) < 5e-7
                if r.structural:
                    assert r.value == 0.0


class TestWindowMonotonicity:
    @given(
        st.floats(-15.0, 15.0),
        st.floats(0.0, 10.0),
        st.floats(0.0, 3.0),
        st.floats(0.0, 3.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_smaller_window_is_subset(self, lo, width, pad_lo, pad_hi):
        spec = SystemSpec(
            p1=2, p2=1, sigma_b1={1: 1, -0.5: 1}, sigma_b2={2: 1}, domain=DiskDomain()
        )
        inner = (lo, lo + width)
        outer = (lo - pad_lo, lo + width + pad_hi)
        small = lambda_set(spec, inner)
        big = lambda_set(spec, outer)
        # identical floats: members are computed from the same lattice roots
        assert set(small) <= set(big)


class TestCustomSpectrumIdempotence:
    @given(
        st.lists(
            st.tuples(st.floats(0.5, 50.0), st.integers(1, 4), st.integers(1, 3)),
            min_size=0,
            max_size=6,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_reingestion_is_identity(self, raw):
        docs = [{"eigenvalue": 0.0, "rep": {"trivial": 1, "irr": {}}}]
        for ev, label, mult in sorted(raw):
            docs.append({"eigenvalue": ev, "rep": {"trivial": 0, "irr": {str(label): mult}}})
        from symbif import load_custom_spectrum

        entries = load_custom_spectrum({"domain": "custom", "entries": docs})
        again = load_custom_spectrum(
            {"domain": "custom", "entries": [e.to_json() for e in entries]}
        )
        assert again == entries


class TestEpsilonGap:
    def test_half_min_gap(self):
        members = [0.0, 3.38996, 9.32836]
        assert epsilon_gap(3.38996, members) == pytest.approx(1.69498)

    def test_singleton_fallback(self):
        assert epsilon_gap(0.0, [0.0]) == 1.0

    def test_not_a_member(self):
        with pytest.raises(NotAMember):
            epsilon_gap(1.0, [0.0, 2.0])

    def test_tolerant_membership(self):
        members = [0.0, 2.0]
        assert epsilon_gap(2.0 + 1e-12, members) == pytest.approx(1.0)
