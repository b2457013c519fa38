"""Tests for the product-quotient spectra, distinctness and heat traces."""

import math
from fractions import Fraction as F
from itertools import combinations

import pytest

from geomspec.errors import UnsupportedMultiplicityError, UsageError
from geomspec.invariants import Regime, heat_invariants
from geomspec.spectra import (
    QuotientSpec,
    distinctness_report,
    eigenvalue_F,
    eigenvalue_F_exact,
    eigenvalue_set,
    equal_volume_family,
    fundamental_tone,
    quotient_volume,
    spectrum_contains,
    spectrum_csv_rows,
    truncated_heat_trace,
)


def harmonic_dimension_bruteforce(m: int) -> int:
    """dim of degree-m harmonic polynomials in 3 variables, by row reduction.

    Builds the Laplacian as an exact matrix from degree-m monomials to
    degree-(m-2) monomials and returns the kernel dimension.
    """
    def monomials(d):
        return [(a, b, d - a - b) for a in range(d + 1) for b in range(d - a + 1)]

    source = monomials(m)
    if m < 2:
        return len(source)
    target = {mon: i for i, mon in enumerate(monomials(m - 2))}
    # rows: target monomials, cols: source monomials
    rows = [[F(0)] * len(source) for _ in target]
    for j, (a, b, c) in enumerate(source):
        if a >= 2:
            rows[target[(a - 2, b, c)]][j] += a * (a - 1)
        if b >= 2:
            rows[target[(a, b - 2, c)]][j] += b * (b - 1)
        if c >= 2:
            rows[target[(a, b, c - 2)]][j] += c * (c - 1)
    # exact Gaussian elimination for the rank
    rank = 0
    pivot_col = 0
    n_rows = len(rows)
    while rank < n_rows and pivot_col < len(source):
        pivot = next((r for r in range(rank, n_rows) if rows[r][pivot_col] != 0), None)
        if pivot is None:
            pivot_col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][pivot_col]
        for r in range(rank + 1, n_rows):
            factor = rows[r][pivot_col] / lead
            if factor:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        pivot_col += 1
    return len(source) - rank


class TestSphereMultiplicityOracle:
    def test_harmonic_dimensions(self):
        for m in range(6):
            assert harmonic_dimension_bruteforce(m) == 2 * m + 1


class TestVolumes:
    def test_examples(self):
        assert math.isclose(quotient_volume(QuotientSpec(1, F(1), 1.0)), 4 * math.pi)
        assert math.isclose(quotient_volume(QuotientSpec(4, F(1), 1.0)), 2 * math.pi)
        assert math.isclose(quotient_volume(QuotientSpec(3, F(2), 1.0)), 2 * math.pi)

    def test_validation(self):
        with pytest.raises(UsageError):
            QuotientSpec(5, F(1), 1.0)
        with pytest.raises(UsageError):
            QuotientSpec(1, F(-1), 1.0)
        with pytest.raises(UsageError):
            QuotientSpec(1, F(1), 0.0)


class TestEigenvalueF:
    def test_examples(self):
        assert eigenvalue_F(1, 0, 1, 123.456) == 2.0
        assert eigenvalue_F(0, 0, 1, 1.0) == 0.0
        assert math.isclose(eigenvalue_F(1, 1, 1, math.pi), 3.0)

    def test_exact(self):
        assert eigenvalue_F_exact(4, 1, 1, 2) == 22
        assert eigenvalue_F_exact(1, 1, F(1, 2), F(1, 3)) == F(4, 3)


class TestEigenvalueSets:
    def test_family3_two_smallest_generic(self):
        # generic v with pi^2/v^2 > 2: smallest positive pair is {2, pi^2/v^2}
        values = [x for x in eigenvalue_set(QuotientSpec(3, F(1), 1.0), 30).values() if x > 0]
        assert math.isclose(values[0], 2.0)
        assert math.isclose(values[1], 6.0)
        assert any(math.isclose(v, math.pi**2) for v in values)

    def test_family2_smallest_subset(self):
        # the smallest positive element is one of 4q, 2k + q, 6k
        for ratio in (F(1, 3), F(2), F(11, 2), F(9)):
            spec = QuotientSpec.with_ratio(2, 1, ratio)
            tone = fundamental_tone(spec)
            assert tone in {4 * ratio, 2 + ratio, F(6)}

    def test_family1_resonant_tone(self):
        spec = QuotientSpec.with_ratio(1, 1, F(1, 4))  # v = 2 pi
        assert fundamental_tone(spec) == 1

    def test_generic_tones(self):
        assert fundamental_tone(QuotientSpec(1, F(1), 1.0)) == 2.0
        assert fundamental_tone(QuotientSpec(3, F(1), 1.0)) == 2.0
        # family 4 constrains the circle mode to even n, so at translation
        # length pi the tone is F(0,2) = 4; the doubled quotient hits 1
        assert math.isclose(float(fundamental_tone(QuotientSpec(4, F(1), math.pi))), 4.0)
        assert math.isclose(
            float(fundamental_tone(QuotientSpec(4, F(1), 2 * math.pi))), 1.0
        )

    def test_parity_constraints(self):
        spec = QuotientSpec.with_ratio(2, 1, F(1))
        for entry in eigenvalue_set(spec, 20).entries:
            for m, n in entry.pairs:
                assert (m - n) % 2 == 0
        spec4 = QuotientSpec.with_ratio(4, 1, F(1))
        for entry in eigenvalue_set(spec4, 20).entries:
            for m, n in entry.pairs:
                assert m % 2 == 0 and n % 2 == 0

    def test_multiplicities(self):
        spec = QuotientSpec.with_ratio(1, 1, F(1, 4))
        entries = {e.value: e.multiplicity for e in eigenvalue_set(spec, 3).entries}
        assert entries[F(0)] == 1       # constants
        assert entries[F(1)] == 2       # circle mode n=2 only
        assert entries[F(2)] == 3       # sphere m=1 only
        assert entries[F(3)] == 6       # (m,n)=(1,2): 3*2
        no_mult = eigenvalue_set(QuotientSpec.with_ratio(3, 1, F(1)), 5).entries
        assert all(e.multiplicity is None for e in no_mult)

    def test_value_merging_resonance(self):
        # ratio 2 makes F(0,1) = F(1,0) = 2 collide in family 3
        spec = QuotientSpec.with_ratio(3, 1, F(2))
        entry = next(e for e in eigenvalue_set(spec, 4).entries if e.value == 2)
        assert set(entry.pairs) == {(0, 1), (1, 0)}

    def test_set_inclusions(self):
        for ratio in (F(3, 2), F(1, 3), F(5)):
            e1 = set(eigenvalue_set(QuotientSpec.with_ratio(1, 1, ratio), 40).values())
            e2 = set(eigenvalue_set(QuotientSpec.with_ratio(2, 1, ratio), 40).values())
            e3 = set(eigenvalue_set(QuotientSpec.with_ratio(3, 1, ratio), 40).values())
            e4 = set(eigenvalue_set(QuotientSpec.with_ratio(4, 1, ratio), 40).values())
            assert e4 <= e2 <= e3
            assert e1 <= e3

    def test_double_cover_consistency(self):
        # the family-1 quotient at doubled length covers the family-3 one
        for ratio in (F(3, 2), F(7)):
            e1_2v = set(
                eigenvalue_set(QuotientSpec.with_ratio(1, 1, ratio / 4), 40).values()
            )
            e3 = set(eigenvalue_set(QuotientSpec.with_ratio(3, 1, ratio), 40).values())
            assert e1_2v <= e3


class TestDistinctness:
    def test_resonance_witness_pair12(self):
        report = distinctness_report(1, ratio=F(1, 2))  # 2 = 4 pi^2 / v^2
        w = next(x for x in report.witnesses if x.families == (1, 2))
        assert w.witness == F(5, 2) and w.member_of == 2

    def test_paper_witnesses_by_membership(self):
        specs2 = equal_volume_family(1, ratio=F(2))  # 2 = pi^2 / v^2
        assert spectrum_contains(specs2[3], F(22))
        assert not spectrum_contains(specs2[0], F(22))
        assert spectrum_contains(specs2[2], F(10))
        assert not spectrum_contains(specs2[3], F(10))
        specs6 = equal_volume_family(1, ratio=F(6))  # 6 = pi^2 / v^2
        assert spectrum_contains(specs6[1], F(36))
        assert not spectrum_contains(specs6[3], F(36))

    def test_all_resonances_succeed(self):
        for ratio in (F(1, 2), F(2), F(6)):
            report = distinctness_report(1, ratio=ratio)
            assert report.ok and len(report.witnesses) == 6

    def test_generic_floats(self):
        for v in (0.21, 0.9, 2.2, 7.7):
            report = distinctness_report(1, v=v)
            assert report.ok
            for w in report.witnesses:
                assert w.witness >= 0

    def test_witness_is_in_exactly_one_set(self):
        specs = equal_volume_family(1, ratio=F(5, 3))
        report = distinctness_report(1, ratio=F(5, 3))
        by_family = {s.family: s for s in specs}
        for w in report.witnesses:
            inside = by_family[w.member_of]
            other_family = w.families[0] if w.families[1] == w.member_of else w.families[1]
            outside = by_family[other_family]
            assert spectrum_contains(inside, w.witness)
            assert not spectrum_contains(outside, w.witness)

    def test_scaled_curvature(self):
        report = distinctness_report(F(2), ratio=F(3))
        assert report.ok


class TestHeatTrace:
    def test_large_time_limit(self):
        spec = QuotientSpec.with_ratio(1, 1, F(1, 4))
        assert math.isclose(truncated_heat_trace(spec, 60.0), 1.0, rel_tol=1e-12)

    def test_refusal_for_set_only_families(self):
        for family in (2, 3):
            with pytest.raises(UnsupportedMultiplicityError):
                truncated_heat_trace(QuotientSpec(family, F(1), 1.0), 0.1)

    def test_matches_expansion(self):
        for family, vol in ((1, 8 * math.pi**2), (4, 4 * math.pi**2)):
            spec = QuotientSpec.with_ratio(family, 1, F(1, 4))  # v = 2 pi
            assert math.isclose(quotient_volume(spec), vol, rel_tol=1e-12)
            h = heat_invariants((1, 1, 0), 1, Regime.LOCALLY_SYMMETRIC)
            coeffs = [float(h.a0), float(h.a1), float(h.a2), float(h.a3)]
            t = 0.05
            expansion = (4 * math.pi * t) ** -1.5 * vol * sum(
                c * t**m for m, c in enumerate(coeffs)
            )
            trace = truncated_heat_trace(spec, t)
            assert abs(trace / expansion - 1) < 1e-3

    def test_trace_decreases_in_time(self):
        spec = QuotientSpec.with_ratio(4, 1, F(1, 4))
        values = [truncated_heat_trace(spec, t) for t in (0.05, 0.1, 0.2, 1.0)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_time_validation(self):
        with pytest.raises(UsageError):
            truncated_heat_trace(QuotientSpec(1, F(1), 1.0), 0.0)


class TestCsvExport:
    def test_rows(self):
        spec = QuotientSpec.with_ratio(1, 1, F(1, 4))
        rows = spectrum_csv_rows(eigenvalue_set(spec, 2))
        assert rows[0] == "m,n,eigenvalue,multiplicity"
        assert rows[1] == "0,0,0,1"
        assert "0,2,1,2" in rows

    def test_blank_multiplicity(self):
        spec = QuotientSpec.with_ratio(3, 1, F(1))
        rows = spectrum_csv_rows(eigenvalue_set(spec, 2))
        assert rows[1].endswith(",")
