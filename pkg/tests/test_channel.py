"""CNOT fault-channel composition and decomposition invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ionqec.channel import (PARTNER_FLIP, Z_MIX_R, cnot_channel,
                            depolarizing_cnot_channel, erasure_cnot_channel,
                            theta_profile)
from ionqec.rates import ErrorBudget, QubitKind, error_budget
from ionqec.species import species_params

BA = species_params("Ba133")
CA = species_params("Ca43")


def _budget(kind, p_xy, p_z, p_leak, p_erasure):
    return ErrorBudget(kind, 1.0, p_xy, p_z, p_leak, p_erasure)


small = st.floats(min_value=0.0, max_value=0.02)


def test_mid_gate_fault_constants():
    # time-averaged conditional flip probabilities of the interrupted gate
    assert Z_MIX_R == pytest.approx(0.1349, abs=1e-4)
    assert PARTNER_FLIP == pytest.approx(0.2078, abs=1e-4)


def test_theta_profile_endpoints():
    # full MS gate accumulates an XX angle of pi/4
    assert theta_profile(0.0) == pytest.approx(0.0, abs=1e-12)
    assert theta_profile(1.0) == pytest.approx(np.pi / 4, abs=1e-12)
    with pytest.raises(ValueError):
        theta_profile(1.5)


@settings(deadline=None, max_examples=60)
@given(small, small, small, small, small, small)
def test_total_probability_conservation(xy_c, z_c, lk_c, xy_t, z_t, lk_t):
    bc = _budget(QubitKind.GROUND, xy_c, z_c, lk_c + z_c, 0.0)
    bt = _budget(QubitKind.METASTABLE, xy_t, z_t, lk_t, lk_t / 2)
    ch = cnot_channel(bc, bt)
    fault_c = bc.p_total - bc.p_erasure
    fault_t = bt.p_total - bt.p_erasure
    # erasure of either qubit heralds; everything else composes independently
    expect_erase = 1 - (1 - bc.p_erasure) * (1 - bt.p_erasure)
    assert ch.heralded_erasure_prob == pytest.approx(expect_erase, abs=1e-12)
    # non-erasure faults: 1 - prod(no fault) approximately, up to the
    # erasure overlap removed from each marginal
    total = ch.total_fault_prob
    assert 0.0 <= total <= 1.0
    elementary = sum(p for _, _, p in ch.elementary_faults())
    # leak branches drop their identity realization 0.25*(1-f) each
    identity = 0.25 * (1 - PARTNER_FLIP) * (
        ch.undetected_leak_control + ch.undetected_leak_target)
    assert elementary == pytest.approx(
        sum(map(sum, ch.pauli_table))
        + ch.undetected_leak_control + ch.undetected_leak_target - identity,
        abs=1e-12)


def test_physical_channel_marginals_ba():
    # Ca has cz > 0, exercising the Z-scatter branch as well
    bud = error_budget(CA, QubitKind.METASTABLE, 0.1 * CA.omega_F)
    ch = cnot_channel(bud, bud)
    tab = np.array(ch.pauli_table)
    assert tab[0, 0] == 0.0
    assert np.all(tab >= 0)
    # control Z-scatter mixes X/Y on the control with ratio r
    named = ch.named_table()
    pz = bud.p_z
    no_t = 1.0 - bud.p_total
    assert named["YI"] / (named["YI"] + named["XI"]) == pytest.approx(
        Z_MIX_R / 0.5, rel=1e-4)
    assert named["XI"] == pytest.approx(pz * (0.5 - Z_MIX_R) * no_t,
                                        rel=1e-4)
    # target X-scatter gives I (x) X; control X-scatter gives Z (x) I
    assert named["ZI"] == pytest.approx(bud.p_xy * no_t, rel=1e-9)
    assert named["IX"] == pytest.approx(bud.p_xy * no_t, rel=1e-9)


def test_erasure_outcomes_uniform():
    ch = erasure_cnot_channel(0.02)
    outs = ch.erasure_outcomes()
    assert len(outs) == 16
    assert all(p == pytest.approx(0.02 / 16) for _, _, p in outs)
    assert sum(p for _, _, p in outs) == pytest.approx(0.02)


def test_depolarizing_channel_uniform():
    ch = depolarizing_cnot_channel(0.015)
    named = ch.named_table()
    assert len(named) == 15
    assert all(v == pytest.approx(0.015 / 15) for v in named.values())
    assert ch.heralded_erasure_prob == 0.0
    assert ch.total_fault_prob == pytest.approx(0.015)


def test_leak_partner_flip_split():
    bc = _budget(QubitKind.METASTABLE, 0.0, 0.0, 0.01, 0.0)
    bt = _budget(QubitKind.GROUND, 0.0, 0.0, 0.0, 0.0)
    ch = cnot_channel(bc, bt)
    assert ch.undetected_leak_control == pytest.approx(0.01)
    faults = ch.elementary_faults()
    # leaked control is depolarized; target flips X with PARTNER_FLIP
    flip = sum(p for c, t, p in faults if t == 1)
    stay = sum(p for c, t, p in faults if t == 0)
    assert flip == pytest.approx(0.01 * PARTNER_FLIP, rel=1e-9)
    # the (I, I) outcome is excluded from elementary faults
    assert stay == pytest.approx(0.01 * (1 - PARTNER_FLIP) * 0.75, rel=1e-9)


def test_invalid_probability_rejected():
    with pytest.raises(ValueError):
        depolarizing_cnot_channel(1.5)
    with pytest.raises(ValueError):
        erasure_cnot_channel(-0.1)
