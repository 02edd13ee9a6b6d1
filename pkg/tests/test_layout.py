"""Rotated surface-code layout invariants."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ionqec.layout import build_layout

odd_d = st.integers(min_value=1, max_value=6).map(lambda k: 2 * k + 1)


def test_rejects_bad_distance():
    for d in (1, 2, 4):
        with pytest.raises(ValueError):
            build_layout(d)


@given(odd_d)
def test_counts(d):
    lay = build_layout(d)
    assert len(lay.data_qubits) == d * d
    assert len(lay.z_plaquettes) == (d * d - 1) // 2
    assert len(lay.x_plaquettes) == (d * d - 1) // 2
    assert lay.n_qubits == 2 * d * d - 1


@given(odd_d)
def test_plaquette_weights(d):
    lay = build_layout(d)
    for p in lay.z_plaquettes + lay.x_plaquettes:
        assert p.weight in (2, 4)
        for c in p.data:
            assert c in lay.qubit_index
    w2_z = sum(p.weight == 2 for p in lay.z_plaquettes)
    w2_x = sum(p.weight == 2 for p in lay.x_plaquettes)
    assert w2_z == d - 1 and w2_x == d - 1


@given(odd_d)
def test_stabilizers_commute(d):
    lay = build_layout(d)
    for pz in lay.z_plaquettes:
        for px in lay.x_plaquettes:
            overlap = set(pz.data) & set(px.data)
            assert len(overlap) % 2 == 0


@given(odd_d)
def test_logical_operators(d):
    lay = build_layout(d)
    assert len(lay.logical_z_support) == d
    assert len(lay.logical_x_support) == d
    z_sup, x_sup = set(lay.logical_z_support), set(lay.logical_x_support)
    # Z_L commutes with every X check, anticommutes with nothing it shouldn't
    for px in lay.x_plaquettes:
        assert len(z_sup & set(px.data)) % 2 == 0
    for pz in lay.z_plaquettes:
        assert len(x_sup & set(pz.data)) % 2 == 0
    # the two logicals anticommute (odd overlap)
    assert len(z_sup & x_sup) % 2 == 1


@given(odd_d)
def test_hook_benign_schedule(d):
    """The last two CNOT steps of each plaquette type are collinear along
    the direction that keeps mid-round ancilla faults at distance one."""
    lay = build_layout(d)
    for p in lay.x_plaquettes:
        tail = [c for c in p.steps[2:] if c is not None]
        if len(tail) == 2:
            assert tail[0][1] == tail[1][1]  # horizontal pair
    for p in lay.z_plaquettes:
        tail = [c for c in p.steps[2:] if c is not None]
        if len(tail) == 2:
            assert tail[0][0] == tail[1][0]  # vertical pair


@given(odd_d)
def test_schedule_steps_conflict_free(d):
    """No data qubit participates in two CNOTs in the same step."""
    lay = build_layout(d)
    for step in range(4):
        seen = set()
        for p in lay.z_plaquettes + lay.x_plaquettes:
            c = p.steps[step]
            if c is not None:
                assert c not in seen
                seen.add(c)
