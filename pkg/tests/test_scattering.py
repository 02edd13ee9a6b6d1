"""Scattering geometry: orbital coefficients and lin-perp-lin sums."""

from fractions import Fraction

import pytest

from ionqec.angular import HalfInteger
from ionqec.scattering import (Manifold, beam_x, beam_y, element_coeff,
                               geometric_coefficients, manifold_states,
                               orbital_coefficients)


def test_orbital_coefficients_exact():
    k1, a1 = orbital_coefficients(Manifold.S12)
    kq, aq = orbital_coefficients(Manifold.D52)
    _, a2 = orbital_coefficients(Manifold.D32)
    assert k1 == Fraction(1, 3)
    assert kq == Fraction(1, 5)
    assert a1 == Fraction(1, 3)
    assert a2 == Fraction(1, 30)
    assert aq == Fraction(3, 10)


def test_orbital_coefficients_reject_excited_manifolds():
    with pytest.raises(ValueError):
        orbital_coefficients(Manifold.P32)


def test_beam_polarizations_are_unit_and_orthogonal():
    bx, by = beam_x(), beam_y()
    for beam in (bx, by):
        norm = sum(float(c.abs2()) for c in beam)
        assert norm == pytest.approx(1.0, abs=1e-14)
    dot = sum(complex(a) * complex(b).conjugate() for a, b in zip(bx, by))
    assert abs(dot) < 1e-14


def test_manifold_state_count():
    # (2J+1)(2I+1) hyperfine states per manifold
    for manifold in Manifold:
        for twice_i in (1, 7):
            states = manifold_states(manifold, HalfInteger(twice_i))
            expect = (int(2 * manifold.J) + 1) * (twice_i + 1)
            assert len(states) == expect


def test_dipole_sum_rule():
    """Summed squared elements out of any P3/2 state into one manifold
    equal the manifold's alpha coefficient (decay-branching sum rule)."""
    I = HalfInteger(1)
    for final, alpha in ((Manifold.S12, Fraction(1, 3)),
                         (Manifold.D32, Fraction(1, 30)),
                         (Manifold.D52, Fraction(3, 10))):
        for src in manifold_states(Manifold.P32, I):
            total = Fraction(0)
            for dst in manifold_states(final, I):
                c = element_coeff(dst, src, dst.M - src.M)
                total += (c * c).as_rational()
            assert total == alpha, (final, src)


BA_COEFFS = {"c0": 1 / 10, "cz": 0.0, "cxy": 1 / 75, "c1": 2 / 5,
             "c2": 2 / 5, "cl": 1 / 3}
CA_COEFFS = {"c0": (7 / 220) ** 0.5, "cz": 0.003526, "cxy": 7 / 165,
             "c1": 29 / 55, "c2": 29 / 55, "cl": 0.390413}


def test_geometric_coefficients_ba():
    got = geometric_coefficients(Fraction(1, 2), 2).as_floats()
    for key, val in BA_COEFFS.items():
        assert got[key] == pytest.approx(val, abs=1e-12), key


def test_geometric_coefficients_ca():
    got = geometric_coefficients(Fraction(7, 2), 5).as_floats()
    for key, val in CA_COEFFS.items():
        assert got[key] == pytest.approx(val, abs=2e-6), key


def test_geometric_coefficients_reject_bad_f0():
    with pytest.raises(ValueError):
        geometric_coefficients(Fraction(1, 2), 3)
