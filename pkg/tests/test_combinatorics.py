"""
Unit tests for generating functions and asymptotics
"""

import csv
import io
import math
import sys
from pathlib import Path

import pytest
import sympy as sp

sys.path.insert(0, str(Path(__file__).parent.parent))

from analysis.combinatorics import (LOG2_FOUR_THIRDS, asymptotic_coefficient,
                                    asymptotics, asymptotics_csv, closed_form_l,
                                    closed_form_p, closed_form_r,
                                    coefficient_asymptotic_agreement, coefficients,
                                    delta, delta_prime, enumerate_all, radii,
                                    ratio_limit, series_csv, series_sqrt)
from core.derive import p_upper
from core.errors import CoefficientGuardError, EnumerationGuardError


class TestCoefficients:
    """Exact recurrences"""

    def test_anchor_k2(self):
        assert coefficients(2, 3).r == (0, 3, 3, 30)

    def test_anchor_k1(self):
        table = coefficients(1, 4)
        assert table.r == (0, 2, 2, 14, 38)
        assert table.l[3] == 13
        assert table.p[3] == 14

    def test_initial_terms(self):
        for k in (1, 3, 7):
            table = coefficients(k, 2)
            assert (table.r[0], table.l[0], table.p[0]) == (0, 0, 0)
            assert (table.r[1], table.l[1], table.p[1]) == (k + 1, k, k)

    def test_guard(self):
        with pytest.raises(CoefficientGuardError):
            coefficients(1, 10, max_n=5)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            coefficients(0, 5)

    @pytest.mark.parametrize("k", [1, 2])
    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_enumeration(self, k, n):
        table = coefficients(k, n)
        exprs = list(enumerate_all(k, n))
        assert len(exprs) == table.r[n]
        assert sum(e.width for e in exprs) == table.l[n]
        assert sum(p_upper(e) for e in exprs) == table.p[n]

    @pytest.mark.slow
    @pytest.mark.parametrize("k", [1, 2])
    @pytest.mark.parametrize("n", [7, 8, 9])
    def test_matches_enumeration_large(self, k, n):
        table = coefficients(k, n)
        count = width = bound = 0
        for e in enumerate_all(k, n):
            count += 1
            width += e.width
            bound += p_upper(e)
        assert (count, width, bound) == (table.r[n], table.l[n], table.p[n])


class TestEnumeration:
    """Exhaustive generation"""

    def test_small(self):
        assert sorted(str(e) for e in enumerate_all(1, 1)) == ["@", "a"]
        assert sorted(str(e) for e in enumerate_all(1, 2)) == ["@*", "a*"]

    def test_distinct(self):
        exprs = list(enumerate_all(2, 5))
        assert len(exprs) == len(set(exprs))
        assert all(e.size == 5 for e in exprs)

    def test_guard(self):
        with pytest.raises(EnumerationGuardError):
            list(enumerate_all(2, 9, guard=10))


class TestClosedForms:
    """Series of the closed forms against the recurrences"""

    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_r(self, k):
        assert closed_form_r(k, 60) == coefficients(k, 60).r

    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_l(self, k):
        assert closed_form_l(k, 40) == coefficients(k, 40).l

    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_p(self, k):
        assert closed_form_p(k, 40) == coefficients(k, 40).p

    @pytest.mark.slow
    def test_r_long(self):
        assert closed_form_r(3, 200) == coefficients(3, 200).r

    def test_series_sqrt(self):
        # (1 + z)^2 = 1 + 2z + z^2
        assert series_sqrt([1, 2, 1], 4) == [1, 1, 0, 0, 0]

    def test_series_sqrt_needs_unit(self):
        with pytest.raises(ValueError):
            series_sqrt([4, 1], 2)

    def test_against_sympy(self):
        z = sp.symbols("z")
        k = 2
        delta_k = 1 - 2 * z - (11 + 12 * k) * z ** 2
        expansion = sp.series((1 - z - sp.sqrt(delta_k)) / (6 * z), z, 0, 8).removeO()
        expected = [int(expansion.coeff(z, n)) for n in range(8)]
        assert list(coefficients(k, 7).r) == expected


class TestRadii:
    """Dominant singularities"""

    def test_rho_two(self):
        rho, _ = radii(2)
        assert abs(rho - 1 / 7) < 1e-12

    def test_rho_prime_one(self):
        _, rho_prime = radii(1)
        assert abs(rho_prime - (-1 + 2 * math.sqrt(7)) / 27) < 1e-15

    @pytest.mark.parametrize("k", [1, 2, 10, 1000])
    def test_roots(self, k):
        rho, rho_prime = radii(k)
        assert 0 < rho_prime < rho < 1
        assert abs(delta(k, rho)) < 1e-12
        assert abs(delta_prime(k, rho_prime)) < 1e-12


class TestAsymptotics:
    """Closed asymptotic forms"""

    def test_limit_at_scale(self):
        report = asymptotics(1e6, 1e8)
        assert abs(report.ratio - LOG2_FOUR_THIRDS) < 0.01
        assert abs(report.per_letter - 4 / 3) < 0.02
        assert math.isfinite(report.avL) and math.isfinite(report.avP_log2)

    def test_monotone_in_k(self):
        ratios = [asymptotics(k, 1e8).ratio for k in (1e2, 1e4, 1e6)]
        assert ratios[0] > ratios[1] > ratios[2] > LOG2_FOUR_THIRDS

    def test_ratio_limit(self):
        for k in (1, 10, 1000):
            assert abs(asymptotics(k, 1e8).ratio - ratio_limit(k)) < 1e-6
        limits = [ratio_limit(k) for k in (1, 10, 100, 1e4, 1e6)]
        assert limits == sorted(limits, reverse=True)
        assert limits[-1] > LOG2_FOUR_THIRDS

    def test_avl_linear(self):
        slope_1 = asymptotics(2, 1e6).avL / 1e6
        slope_2 = asymptotics(2, 2e6).avL / 2e6
        assert abs(slope_1 / slope_2 - 1) < 1e-5

    def test_avp_overflow(self):
        assert asymptotics(2, 1e8).avP == math.inf
        assert math.isfinite(asymptotics(2, 10).avP)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            asymptotics(0, 10)


class TestAgreement:
    """Exact coefficients against the asymptotic estimates"""

    def test_shrinks(self):
        assert coefficient_asymptotic_agreement(2, 500)["r"] < \
            coefficient_asymptotic_agreement(2, 50)["r"]

    def test_close_at_200(self):
        errors = coefficient_asymptotic_agreement(1, 200)
        assert errors["r"] < 0.05
        assert errors["l"] < 0.05
        assert errors["p"] < 0.05

    def test_smoke(self):
        errors = coefficient_asymptotic_agreement(2, 10)
        assert all(math.isfinite(v) for v in errors.values())

    def test_coefficient_value(self):
        assert math.isfinite(asymptotic_coefficient("r", 2, 10))
        assert asymptotic_coefficient("r", 2, 1e6) == math.inf
        with pytest.raises(ValueError):
            asymptotic_coefficient("q", 2, 10)


class TestCsv:
    """CSV emission"""

    def test_series(self):
        rows = list(csv.reader(io.StringIO(series_csv(coefficients(2, 3)))))
        assert rows[0] == ["n", "k", "r", "l", "p"]
        assert rows[-1] == ["3", "2", "30", "38", "42"]

    def test_asymptotics(self):
        rows = list(csv.reader(io.StringIO(asymptotics_csv([asymptotics(2, 100)]))))
        assert rows[0] == ["k", "n", "rho", "rho_prime", "avL", "avP_log2", "ratio", "per_letter"]
        assert rows[1][:2] == ["2", "100"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
