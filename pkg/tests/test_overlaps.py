import itertools
import math

import numpy as np
import pytest

from auxfield.afm import AuxiliaryKind
from auxfield.errors import DomainError, GridMismatch
from auxfield.exact import (HydrogenScale, OscillatorScale, QuantumNumbers,
                            hydrogen_radial, oscillator_radial)
from auxfield.overlaps import (afm_pair_overlap, numeric_overlap,
                               overlap_hydrogen_dilated,
                               overlap_oscillator_dilated, sample_radial)

A_GRID = (0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0)


class TestAnalyticProperties:
    def test_identity_at_unit_dilation(self):
        for n, npr, l in itertools.product(range(4), range(4), range(3)):
            want = 1.0 if n == npr else 0.0
            assert overlap_hydrogen_dilated(n, npr, l, 1.0) == pytest.approx(
                want, abs=1e-12)
            assert overlap_oscillator_dilated(n, npr, l, 1.0) == pytest.approx(
                want, abs=1e-12)

    def test_bounded_and_symmetric(self):
        for n, npr, l in itertools.product(range(6), range(6), range(4)):
            for a in A_GRID:
                for f in (overlap_hydrogen_dilated, overlap_oscillator_dilated):
                    val = f(n, npr, l, a)
                    assert abs(val) <= 1.0 + 1e-12
                    swapped = f(npr, n, l, 1.0 / a)
                    assert swapped == pytest.approx(val, abs=1e-10)

    def test_vanishing_at_extreme_dilation(self):
        for n, npr, l in itertools.product(range(6), range(6), range(4)):
            for a in (1e-4, 1e4):
                assert abs(overlap_hydrogen_dilated(n, npr, l, a)) < 1e-3
                assert abs(overlap_oscillator_dilated(n, npr, l, a)) < 1e-3

    def test_limit_toward_unit_dilation(self):
        for n, npr, l in [(0, 0, 0), (1, 1, 2), (0, 1, 0), (2, 3, 1)]:
            want = 1.0 if n == npr else 0.0
            val = overlap_hydrogen_dilated(n, npr, l, 1.0 + 1e-8)
            assert val == pytest.approx(want, abs=1e-6)
            val = overlap_oscillator_dilated(n, npr, l, 1.0 - 1e-8)
            assert val == pytest.approx(want, abs=1e-6)

    def test_removable_singularity(self):
        # Q(a) = 0 at a = N'/N must evaluate finitely and continuously
        for n, npr, l in [(0, 1, 0), (1, 3, 0), (2, 3, 1), (0, 2, 2)]:
            a0 = (npr + l + 1) / (n + l + 1)
            center = overlap_hydrogen_dilated(n, npr, l, a0)
            nearby = overlap_hydrogen_dilated(n, npr, l, a0 * (1 + 1e-9))
            assert math.isfinite(center)
            assert center == pytest.approx(nearby, abs=1e-7)

    def test_squared_overlap_exchange_invariance(self):
        for n, npr, l in itertools.product(range(4), range(4), range(2)):
            for a in (0.7, 1.9):
                f1 = overlap_hydrogen_dilated(n, npr, l, a) ** 2
                f2 = overlap_hydrogen_dilated(npr, n, l, 1.0 / a) ** 2
                assert f1 == pytest.approx(f2, rel=1e-9, abs=1e-14)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            overlap_hydrogen_dilated(0, 1, 0, -1.0)
        with pytest.raises(DomainError):
            overlap_oscillator_dilated(0, 1, 0, 0.0)


class TestPublishedValues:
    def test_hydrogen_entries(self):
        val = overlap_hydrogen_dilated(0, 1, 0, 2.0 ** (4 / 3)) ** 2
        assert val == pytest.approx(0.43, abs=0.01)
        val = overlap_hydrogen_dilated(0, 1, 5, (7 / 6) ** (4 / 3)) ** 2
        assert val == pytest.approx(0.13, abs=0.01)

    def test_oscillator_entries(self):
        val = overlap_oscillator_dilated(0, 1, 0, (3 / 7) ** (1 / 6)) ** 2
        assert val == pytest.approx(0.029, abs=0.001)
        val = afm_pair_overlap(AuxiliaryKind.QUADRATIC, 1, 3, 0) ** 2
        assert val == pytest.approx(0.0031, abs=0.0001)

    def test_pair_helper(self):
        for l in range(4):
            assert afm_pair_overlap(AuxiliaryKind.COULOMB, 0, 0, l) == pytest.approx(
                1.0, abs=1e-13)
        assert afm_pair_overlap(AuxiliaryKind.COULOMB, 2, 3, 0) ** 2 == pytest.approx(
            0.43, abs=0.01)
        assert afm_pair_overlap(AuxiliaryKind.QUADRATIC, 0, 2, 1) ** 2 == pytest.approx(
            0.0026, abs=0.0001)


class TestNumericAgreement:
    @pytest.mark.parametrize("n,npr,l,a", [
        (0, 1, 0, 2.0 ** (4 / 3)), (1, 2, 1, 1.3), (3, 4, 2, 0.7), (2, 2, 0, 1.5)])
    def test_hydrogen_formula_vs_quadrature(self, n, npr, l, a):
        eta = 1.1
        q1, q2 = QuantumNumbers(n, l), QuantumNumbers(npr, l)
        r1, _ = hydrogen_radial(HydrogenScale(eta), q1)
        r2, _ = hydrogen_radial(HydrogenScale(eta * a), q2)
        gam_min = eta * min(1.0, a) / (max(n, npr) + l + 1)
        grid = np.linspace(0.0, (45 + 15 * max(n, npr)) / gam_min, 24001)
        num = numeric_overlap(sample_radial(r1, grid, q=q1),
                              sample_radial(r2, grid, q=q2))
        assert num == pytest.approx(overlap_hydrogen_dilated(n, npr, l, a),
                                    abs=1e-7)

    @pytest.mark.parametrize("n,npr,l,a", [
        (0, 1, 0, (3 / 7) ** (1 / 6)), (1, 3, 0, 1.2), (2, 4, 3, 0.8)])
    def test_oscillator_formula_vs_quadrature(self, n, npr, l, a):
        lam = 0.9
        q1, q2 = QuantumNumbers(n, l), QuantumNumbers(npr, l)
        r1, _ = oscillator_radial(OscillatorScale(lam), q1)
        r2, _ = oscillator_radial(OscillatorScale(lam * a), q2)
        grid = np.linspace(0.0, 15.0 / (lam * min(1.0, a)), 24001)
        num = numeric_overlap(sample_radial(r1, grid, q=q1),
                              sample_radial(r2, grid, q=q2))
        assert num == pytest.approx(overlap_oscillator_dilated(n, npr, l, a),
                                    abs=1e-7)


class TestNumericOverlap:
    def test_self_overlap(self):
        r1, _ = hydrogen_radial(HydrogenScale(1.0), QuantumNumbers(1, 0))
        grid = np.linspace(0.0, 80.0, 16001)
        f = sample_radial(r1, grid, q=QuantumNumbers(1, 0))
        assert numeric_overlap(f, f) == pytest.approx(1.0, abs=1e-8)

    def test_distinct_grids_interpolated(self):
        q = QuantumNumbers(0, 0)
        r1, _ = hydrogen_radial(HydrogenScale(1.0), q)
        f = sample_radial(r1, np.linspace(0.0, 60.0, 9001), q=q)
        g = sample_radial(r1, np.linspace(0.0, 55.0, 7001), q=q)
        assert numeric_overlap(f, g) == pytest.approx(1.0, abs=1e-8)

    def test_grid_mismatch(self):
        q = QuantumNumbers(0, 0)
        r1, _ = hydrogen_radial(HydrogenScale(1.0), q)
        f = sample_radial(r1, np.linspace(0.0, 60.0, 9001), q=q)
        g = sample_radial(r1, np.linspace(0.0, 1.0, 101), q=q)
        with pytest.raises(GridMismatch):
            numeric_overlap(f, g)
