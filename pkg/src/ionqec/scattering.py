"""Kramers-Heisenberg scattering amplitudes and geometric coefficients.

Everything here is evaluated in exact surd arithmetic. The beams driving the
two-photon transition are linearly polarized, mutually perpendicular, and both
perpendicular to the quantization axis, so each beam carries only sigma+ and
sigma- components. This configuration is validated (not assumed) by the tests
that reproduce the 1/3 prefactor of the ground-qubit Rabi frequency and the
exact geometric-coefficient table of the metastable qubits.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .angular import ComplexSurd, HalfInteger, Surd, wigner_3j, wigner_6j

_HALF = Fraction(1, 2)


class Manifold(Enum):
    """Fine-structure manifolds (L, J) that appear in the model."""

    S12 = (0, _HALF)
    D32 = (2, Fraction(3, 2))
    D52 = (2, Fraction(5, 2))
    P12 = (1, _HALF)
    P32 = (1, Fraction(3, 2))

    @property
    def L(self) -> Fraction:
        return Fraction(self.value[0])

    @property
    def J(self) -> Fraction:
        return self.value[1]


@dataclass(frozen=True)
class HyperfineState:
    """|L, J; F, M> with fixed nuclear spin I."""

    manifold: Manifold
    I: HalfInteger
    F: HalfInteger
    M: HalfInteger


def manifold_states(manifold: Manifold, I: HalfInteger) -> list[HyperfineState]:
    J = HalfInteger.of(manifold.J)
    out = []
    fmin = abs(J.twice - I.twice)
    fmax = J.twice + I.twice
    for f2 in range(fmin, fmax + 1, 2):
        for m2 in range(-f2, f2 + 1, 2):
            out.append(HyperfineState(manifold, I, HalfInteger(f2), HalfInteger(m2)))
    return out


def _sign_from_twice(exponent_twice: int) -> int:
    if exponent_twice % 2:
        raise ValueError("phase exponent is not an integer")
    return -1 if (exponent_twice // 2) % 2 else 1


@lru_cache(maxsize=100_000)
def _element_coeff_cached(
    ma: Manifold, mb: Manifold, i2: int, fa2: int, Ma2: int, fb2: int, Mb2: int, s2: int
) -> Surd:
    I = HalfInteger(i2)
    Fa, Ma = HalfInteger(fa2), HalfInteger(Ma2)
    Fb, Mb = HalfInteger(fb2), HalfInteger(Mb2)
    Ja, Jb = HalfInteger.of(ma.J), HalfInteger.of(mb.J)
    La, Lb = HalfInteger.of(ma.L), HalfInteger.of(mb.L)
    s = HalfInteger(s2)
    # Hyperfine -> fine-structure reduction.
    three = wigner_3j(Fa, 1, Fb, -Ma, s, Mb)
    if three.sign == 0:
        return Surd()
    six_hf = wigner_6j(Ja, Fa, I, Fb, Jb, 1)
    if six_hf.sign == 0:
        return Surd()
    # Fine-structure -> orbital reduction (electron spin 1/2).
    six_fs = wigner_6j(La, Ja, Fraction(1, 2), Jb, Lb, 1)
    if six_fs.sign == 0:
        return Surd()
    phase = _sign_from_twice(Fa.twice - Ma.twice + Ja.twice + I.twice + Fb.twice + 2)
    phase *= _sign_from_twice(La.twice + 1 + Jb.twice + 2)
    dims = Fraction((fa2 + 1) * (fb2 + 1) * (Ja.twice + 1) * (Jb.twice + 1))
    return (
        Surd.sqrt_of(dims)
        * three.as_surd()
        * six_hf.as_surd()
        * six_fs.as_surd()
        * phase
    )


def element_coeff(a: HyperfineState, b: HyperfineState, s: HalfInteger) -> Surd:
    """<a| T^(1)_s(d) |b> divided by the orbital element <L_a || T || L_b>.

    Exact real coefficient from the two sequential Wigner-Eckart reductions.
    """
    if a.I != b.I:
        raise ValueError("nuclear spin mismatch")
    if abs(s.twice) > 2:
        return Surd()
    return _element_coeff_cached(
        a.manifold, b.manifold, a.I.twice, a.F.twice, a.M.twice, b.F.twice, b.M.twice, s.twice
    )


def orbital_coefficients(manifold: Manifold) -> tuple[Fraction | None, Fraction]:
    """The (k, alpha) coefficients of a manifold, computed from 3j/6j algebra.

    k relates the maximal (stretch-state) dipole element of a qubit manifold
    to the orbital element and is defined only for the qubit manifolds S12
    and D52; alpha relates the summed decay strength from P3/2 into the
    manifold to the orbital element. Both are exact rationals.
    """
    if manifold not in (Manifold.S12, Manifold.D32, Manifold.D52):
        raise ValueError(f"{manifold} is not a final/qubit manifold")
    Jf = HalfInteger.of(manifold.J)
    Lf = HalfInteger.of(manifold.L)
    six = wigner_6j(1, Fraction(3, 2), _HALF, Jf, Lf, 1)
    alpha = (Jf.twice + 1) * six.radicand

    if manifold is Manifold.D32:
        return None, alpha

    # Stretch-state element for any valid half-integer I (I-independent).
    I = HalfInteger(1)
    Jq = Jf
    excited = HyperfineState(
        Manifold.P32, I, HalfInteger(3 + I.twice), HalfInteger(3 + I.twice)
    )
    ground = HyperfineState(
        manifold, I, HalfInteger(Jq.twice + I.twice), HalfInteger(Jq.twice + I.twice)
    )
    s = HalfInteger(3 - Jq.twice)
    c = element_coeff(excited, ground, s)
    k = (c * c).as_rational()
    return k, alpha


# Beam polarizations: two linear polarizations, mutually perpendicular and
# both perpendicular to the quantization axis (x-hat and y-hat). Spherical
# components (b_-1, b_0, b_+1) with e_+1 = -(x+iy)/sqrt(2), e_-1 = (x-iy)/sqrt(2).
_INV_SQRT2 = Surd.sqrt_of(_HALF)


def beam_x() -> tuple[ComplexSurd, ComplexSurd, ComplexSurd]:
    return (
        ComplexSurd(_INV_SQRT2, Surd()),
        ComplexSurd(),
        ComplexSurd(-_INV_SQRT2, Surd()),
    )


def beam_y() -> tuple[ComplexSurd, ComplexSurd, ComplexSurd]:
    return (
        ComplexSurd(Surd(), _INV_SQRT2),
        ComplexSurd(),
        ComplexSurd(Surd(), _INV_SQRT2),
    )


_LAMBDAS = (HalfInteger(-2), HalfInteger(0), HalfInteger(2))


def path_sum(
    i: HyperfineState, j: HyperfineState, excited: Manifold, lam: HalfInteger
) -> Surd:
    """Sum over excited hyperfine states of c_em(j<-J) * c_abs(J<-i).

    The absorbed polarization component is lam; the intermediate magnetic
    number is fixed to M_i + lam and the emitted component to M_j - M_J.
    """
    total = Surd()
    MJ = i.M + lam
    for J in manifold_states(excited, i.I):
        if J.M != MJ:
            continue
        c_abs = element_coeff(J, i, lam)
        if not c_abs:
            continue
        c_em = element_coeff(j, J, j.M - J.M)
        if not c_em:
            continue
        total = total + c_em * c_abs
    return total


def scattering_amplitude(
    i: HyperfineState,
    j: HyperfineState,
    J: HyperfineState,
    lam: HalfInteger,
    b_lambda: ComplexSurd,
    detuning: float,
) -> complex:
    """Single-path scattering amplitude from |i> to |j> via excited |J>.

    Dimensionless apart from the 1/detuning factor; the dipole elements are
    expressed in units of the stretch elements of the initial and final
    manifolds, so the amplitude is -b_lambda * c_em * c_abs / (detuning * mu_f * mu_q).
    """
    if detuning == 0:
        raise ValueError("zero detuning makes the amplitude singular")
    if J.M != i.M + lam:
        return 0j
    kq, _ = orbital_coefficients(i.manifold)
    kf_af = _stretch_norm(j.manifold)
    c_abs = element_coeff(J, i, lam)
    c_em = element_coeff(j, J, j.M - J.M)
    norm = float(Surd.sqrt_of(kq * kf_af))
    amp = complex(b_lambda * (c_em * c_abs)) * (-1.0)
    return amp / (detuning * norm)


def _stretch_norm(manifold: Manifold) -> Fraction:
    """Squared stretch-element normalization used for final manifolds.

    For qubit manifolds this is k; for D3/2 (never a qubit) the analogous
    stretch coefficient is computed the same way from the P3/2 stretch state.
    """
    if manifold in (Manifold.S12, Manifold.D52):
        return orbital_coefficients(manifold)[0]
    I = HalfInteger(1)
    Jf = HalfInteger.of(manifold.J)
    excited = HyperfineState(
        Manifold.P32, I, HalfInteger(3 + I.twice), HalfInteger(3 + I.twice)
    )
    final = HyperfineState(
        manifold, I, HalfInteger(Jf.twice + I.twice), HalfInteger(Jf.twice + I.twice)
    )
    c = element_coeff(excited, final, HalfInteger(3 - Jf.twice))
    return (c * c).as_rational()


def _qubit_states(
    manifold: Manifold, I: HalfInteger, F0: int
) -> tuple[HyperfineState, HyperfineState]:
    zero = HyperfineState(manifold, I, HalfInteger(2 * F0), HalfInteger(0))
    one = HyperfineState(manifold, I, HalfInteger(2 * F0 + 2), HalfInteger(0))
    return zero, one


def _beam_weighted_rate(
    i: HyperfineState, j: HyperfineState, excited: Manifold
) -> Surd:
    """Polarization-summed |amplitude|^2 per beam for one scattering channel.

    Emitted photons of different spherical components are orthogonal, so
    different absorbed components add incoherently. Rates are quoted per
    beam with |b_lam|^2 = 1/2 for lam = +-1; both beams contribute the same
    geometric factor, matching the per-beam coupling g in the rate formulas.
    """
    total = Surd()
    for lam in (_LAMBDAS[0], _LAMBDAS[2]):
        s = path_sum(i, j, excited, lam)
        total = total + s * s * _HALF
    return total


def _rayleigh_difference_rate(
    zero: HyperfineState, one: HyperfineState, excited: Manifold
) -> Surd:
    total = Surd()
    for lam in (_LAMBDAS[0], _LAMBDAS[2]):
        d = path_sum(one, one, excited, lam) - path_sum(zero, zero, excited, lam)
        total = total + d * d * _HALF
    return total


def raman_rabi_coefficient(
    qubit_manifold: Manifold, I: HalfInteger, F0: int, excited: Manifold
) -> Surd:
    """Coefficient C_e of the two-photon Rabi frequency via manifold e.

    Omega = (g_q^2 / k_q) * |sum_e C_e / Delta_e| for the lin-perp-lin beams;
    the cross-beam product b2*_lam b1_lam = -+ i/2 selects the vector
    (lam = +1 minus lam = -1) combination.
    """
    zero, one = _qubit_states(qubit_manifold, I, F0)
    s_plus = path_sum(zero, one, excited, _LAMBDAS[2])
    s_minus = path_sum(zero, one, excited, _LAMBDAS[0])
    return (s_plus - s_minus) * _HALF


@dataclass(frozen=True)
class GeometricCoefficients:
    """The six lin-perp-lin geometric coefficients of a metastable qubit."""

    c0: Surd
    cz: Surd
    cxy: Surd
    c1: Surd
    c2: Surd
    cl: Surd

    def as_floats(self) -> dict:
        return {
            "c0": float(self.c0),
            "cz": float(self.cz),
            "cxy": float(self.cxy),
            "c1": float(self.c1),
            "c2": float(self.c2),
            "cl": float(self.cl),
        }


def geometric_coefficients(I, F0: int) -> GeometricCoefficients:
    """Exact geometric coefficients of the D5/2 metastable qubit.

    Evaluates the polarization-summed Kramers-Heisenberg sums for the
    lin-perp-lin beam pair and normalizes each scattering channel by the
    alpha coefficient of its final manifold, so that the scattering rates
    take the form Gamma = c * r'_f * gamma * (g_m / Delta_m)^2.
    """
    I = HalfInteger.of(I)
    fmin = abs(HalfInteger.of(Fraction(5, 2)).twice - I.twice)
    fmax = HalfInteger.of(Fraction(5, 2)).twice + I.twice
    if not (fmin <= 2 * F0 < fmax):
        raise ValueError(f"F0={F0} is not a valid clock-qubit choice for I={I}")

    q = Manifold.D52
    e = Manifold.P32
    kq, alpha_q = orbital_coefficients(q)
    _, alpha_1 = orbital_coefficients(Manifold.S12)
    _, alpha_2 = orbital_coefficients(Manifold.D32)
    zero, one = _qubit_states(q, I, F0)

    inv_kq = 1 / kq
    cz = _rayleigh_difference_rate(zero, one, e) * inv_kq * (1 / alpha_q)
    cxy = (
        _beam_weighted_rate(zero, one, e) + _beam_weighted_rate(one, zero, e)
    ) * inv_kq * (1 / alpha_q)

    def leak_sum(final: Manifold, alpha: Fraction, exclude_qubit: bool) -> Surd:
        total = Surd()
        for j in manifold_states(final, I):
            if exclude_qubit and j in (zero, one):
                continue
            total = total + _beam_weighted_rate(zero, j, e) + _beam_weighted_rate(one, j, e)
        return total * inv_kq * (1 / alpha)

    c1 = leak_sum(Manifold.S12, alpha_1, False)
    c2 = leak_sum(Manifold.D32, alpha_2, False)
    cl = leak_sum(Manifold.D52, alpha_q, True)
    c0_surd = raman_rabi_coefficient(q, I, F0, e) * inv_kq
    # c0 enters only through its magnitude (it multiplies g^2/|Delta|).
    c0 = c0_surd if float(c0_surd) >= 0 else -c0_surd
    return GeometricCoefficients(c0=c0, cz=cz, cxy=cxy, c1=c1, c2=c2, cl=cl)
