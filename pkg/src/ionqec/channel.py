"""Noisy CNOT channel from per-qubit scattering budgets.

The CNOT is decomposed as trailing-single-qubit-gates * XX(pi/4) * leading
gates, with the only trailing gate acting on the control (an RY(pi/2), which
conjugates X <-> Z up to sign and fixes Y). Faults are placed on the XX gate
and conjugated through to the end of the CNOT:

  control X scatter -> Z (x) I
  target  X scatter -> I (x) X
  control Z scatter -> {X(x)I, Y(x)I, X(x)X, Y(x)X} w.p. {1/2-r, r, r, 1/2-r}
  target  Z scatter -> {I(x)Z, Y... } = {I(x)Z, Z(x)Z, I(x)Y, Z(x)Y}
                       w.p. {1/2-r, r, r, 1/2-r}
  control leak      -> control depolarized, target X w.p. 0.2078
  target  leak      -> target depolarized, control Z w.p. 0.2078
  erasure (either)  -> both depolarized, herald raised on both qubits

The 0.2078 bit-flip propagates at the XX level as an X on the partner; for a
leaked target the partner is the control, whose trailing rotation turns that
X into a Z. r = 0.1349 is the uniform-time average of the interpolating
mixture for mid-gate phase flips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .rates import ErrorBudget

Z_MIX_R = 0.1349

# single-qubit Pauli index: 0=I, 1=X, 2=Y, 3=Z
_PAULI_NAMES = "IXYZ"


def _mul(a: int, b: int) -> int:
    """Product of two Paulis, phase discarded (frame arithmetic)."""
    if a == 0:
        return b
    if b == 0:
        return a
    if a == b:
        return 0
    return a ^ b  # X*Y=Z etc. under the {0,1,2,3} = {I,X,Y,Z} encoding


def theta_profile(s: float) -> float:
    """Accumulated XX angle after fraction s of the gate time (K = 1)."""
    if not 0.0 <= s <= 1.0:
        raise ValueError("s must lie in [0, 1]")
    return math.pi * s / 4.0 - math.sin(2.0 * math.pi * s) / 8.0


def _partner_flip_probability(n: int = 4001) -> float:
    """Uniform-time average of sin^2(theta(s)) by Simpson quadrature."""
    h = 1.0 / (n - 1)
    total = 0.0
    for i in range(n):
        w = 1.0 if i in (0, n - 1) else (4.0 if i % 2 else 2.0)
        total += w * math.sin(theta_profile(i * h)) ** 2
    return total * h / 3.0


PARTNER_FLIP = _partner_flip_probability()


def _scatter_outcomes(budget: ErrorBudget, is_control: bool) -> list[tuple[int, int, float]]:
    """Post-CNOT Pauli outcomes (control, target, prob) of one qubit's scatter."""
    r = Z_MIX_R
    out = []
    if is_control:
        if budget.p_xy:
            out.append((3, 0, budget.p_xy))
        if budget.p_z:
            out += [
                (1, 0, (0.5 - r) * budget.p_z),
                (2, 0, r * budget.p_z),
                (1, 1, r * budget.p_z),
                (2, 1, (0.5 - r) * budget.p_z),
            ]
    else:
        if budget.p_xy:
            out.append((0, 1, budget.p_xy))
        if budget.p_z:
            out += [
                (0, 3, (0.5 - r) * budget.p_z),
                (3, 3, r * budget.p_z),
                (0, 2, r * budget.p_z),
                (3, 2, (0.5 - r) * budget.p_z),
            ]
    return out


@dataclass(frozen=True)
class NoisyCnotChannel:
    """Stochastic fault model of one noisy CNOT.

    pauli_table[c][t] is the probability of appending Pauli c (x) t after the
    gate from scattering faults alone (c = t = I entry is zero); leakage and
    erasure are separate branches. Each qubit independently draws one fault
    class per gate, so cross terms between the two qubits are included in
    the table.
    """

    pauli_table: tuple  # 4x4 nested tuples, [control][target]
    heralded_erasure_prob: float
    undetected_leak_control: float
    undetected_leak_target: float
    leak_partner_flip_prob: float = field(default=PARTNER_FLIP)

    @property
    def total_fault_prob(self) -> float:
        return (
            sum(map(sum, self.pauli_table))
            + self.heralded_erasure_prob
            + self.undetected_leak_control
            + self.undetected_leak_target
        )

    def named_table(self) -> dict[str, float]:
        return {
            _PAULI_NAMES[c] + _PAULI_NAMES[t]: self.pauli_table[c][t]
            for c in range(4)
            for t in range(4)
            if (c, t) != (0, 0)
        }

    def elementary_faults(self) -> list[tuple[int, int, float]]:
        """All unheralded Pauli outcomes (control, target, prob).

        Leakage branches are expanded into their Pauli realizations:
        depolarizing the leaked qubit (uniform over I, X, Y, Z) composed
        with the partner flip. Used by the matching-graph builder.
        """
        out = []
        for c in range(4):
            for t in range(4):
                p = self.pauli_table[c][t]
                if p > 0.0 and (c, t) != (0, 0):
                    out.append((c, t, p))
        f = self.leak_partner_flip_prob
        for leak_p, is_control in (
            (self.undetected_leak_control, True),
            (self.undetected_leak_target, False),
        ):
            if leak_p == 0.0:
                continue
            for pauli in range(4):
                for flip in (False, True):
                    prob = leak_p * 0.25 * (f if flip else 1.0 - f)
                    if is_control:
                        c, t = pauli, (1 if flip else 0)
                    else:
                        c, t = (3 if flip else 0), pauli
                    if (c, t) != (0, 0):
                        out.append((c, t, prob))
        return out

    def erasure_outcomes(self) -> list[tuple[int, int, float]]:
        """Heralded outcomes: both qubits uniformly depolarized."""
        p = self.heralded_erasure_prob
        if p == 0.0:
            return []
        return [(c, t, p / 16.0) for c in range(4) for t in range(4)]


def cnot_channel(
    budget_control: ErrorBudget, budget_target: ErrorBudget
) -> NoisyCnotChannel:
    """Compose the two qubits' independent fault draws into one channel."""
    table = [[0.0] * 4 for _ in range(4)]
    ctrl = _scatter_outcomes(budget_control, True)
    targ = _scatter_outcomes(budget_target, False)
    none_c = 1.0 - budget_control.p_xy - budget_control.p_z - budget_control.p_leak_total
    none_t = 1.0 - budget_target.p_xy - budget_target.p_z - budget_target.p_leak_total
    for cc, ct, pc in ctrl + [(0, 0, none_c)]:
        for tc, tt, pt in targ + [(0, 0, none_t)]:
            c, t = _mul(cc, tc), _mul(ct, tt)
            if (c, t) != (0, 0):
                table[c][t] += pc * pt
    erasure = 1.0 - (1.0 - budget_control.p_erasure) * (1.0 - budget_target.p_erasure)
    return NoisyCnotChannel(
        pauli_table=tuple(tuple(row) for row in table),
        heralded_erasure_prob=erasure,
        undetected_leak_control=budget_control.p_leak_undetected,
        undetected_leak_target=budget_target.p_leak_undetected,
    )


def depolarizing_cnot_channel(p: float) -> NoisyCnotChannel:
    """Uniform two-qubit Pauli noise of total probability p (synthetic)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p out of range")
    table = [[p / 15.0] * 4 for _ in range(4)]
    table[0][0] = 0.0
    return NoisyCnotChannel(
        pauli_table=tuple(tuple(row) for row in table),
        heralded_erasure_prob=0.0,
        undetected_leak_control=0.0,
        undetected_leak_target=0.0,
    )


def erasure_cnot_channel(p: float) -> NoisyCnotChannel:
    """Pure heralded-erasure noise of probability p (synthetic)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p out of range")
    table = tuple(tuple(0.0 for _ in range(4)) for _ in range(4))
    return NoisyCnotChannel(
        pauli_table=table,
        heralded_erasure_prob=p,
        undetected_leak_control=0.0,
        undetected_leak_target=0.0,
    )
