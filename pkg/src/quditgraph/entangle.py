"""Four-party maximal entanglement: constructions, verdicts, rank oracles.

A pure state of N qudits counts as maximally entangled when every
bipartition leaves the smaller side maximally mixed.  Two constructions
cover four parties:

* square_state: the four-qudit bipartite-square graph state over GF(d) with
  one edge label left free (the "twist").  It is maximally entangled exactly
  when the twist avoids 0 and 1.
* ring_square_state: the analogous state over the plain ring Z_d,
  d^-1 * sum |i, i-k, k, i+k>, defined for any integer d >= 2.  It is
  maximally entangled for odd d and never for even d.

Tensoring such states systemwise preserves the property, which yields a
construction for every dimension that is odd or a multiple of four.  For
d = 2 mod 4 no construction is known (and none is attempted here).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .gf import Field
from .rewrite import SymbolicState, mat_rank
from .simulator import (
    DEFAULT_TOL,
    ResourceGuardError,
    StateVector,
    bipartition_subsets,
    rank as dm_rank,
    reduced_density_raw,
    rho_partial_trace,
    spectrum,
)

COMPOSITE_DIM_LIMIT = 64  # keeps 4-party states within the 2^24 amplitude guard
FACTOR_LIMIT = 10 ** 6


@dataclass
class RingState:
    """Four(-or-more)-party state over the plain ring Z_d."""

    d: int
    n: int
    amps: np.ndarray


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def square_state(fld: Field, twist: int, tol: float = DEFAULT_TOL) -> StateVector:
    """Four-qudit square-graph state with edge labels (1, 1, 1, twist).

    Amplitude d^-1 on every ket |i, i + twist*k, k, i + k> for i, k in the
    field.  Any twist is accepted; mes_verdict flags the degenerate choices
    0 and 1.
    """
    if not 0 <= twist < fld.d:
        raise ValueError(f"twist {twist} out of range for order-{fld.d} field")
    d = fld.d
    amps = np.zeros(d ** 4, dtype=np.complex128)
    for i in range(d):
        for k in range(d):
            digits = (i, fld.add(i, fld.mul(twist, k)), k, fld.add(i, k))
            idx = ((digits[0] * d + digits[1]) * d + digits[2]) * d + digits[3]
            amps[idx] = 1.0 / d
    return StateVector(fld, 4, amps, tol)


def ring_square_state(d: int) -> RingState:
    """The Z_d square state d^-1 * sum |i, i-k, k, i+k> for any integer d >= 2."""
    if d < 2:
        raise ValueError("ring dimension must be at least 2")
    if d ** 4 > 2 ** 24:
        raise ResourceGuardError(f"{d}**4 amplitudes exceed the 2^24 guard")
    amps = np.zeros(d ** 4, dtype=np.complex128)
    for i in range(d):
        for k in range(d):
            digits = (i, (i - k) % d, k, (i + k) % d)
            idx = ((digits[0] * d + digits[1]) * d + digits[2]) * d + digits[3]
            amps[idx] = 1.0 / d
    return RingState(d, 4, amps)


def compose_mes(states: Sequence[StateVector | RingState], tol: float = DEFAULT_TOL,
                check_inputs: bool = True) -> StateVector | RingState:
    """Systemwise tensor product of maximally entangled states.

    System q of the output is the tuple of the inputs' systems q, so the
    per-system dimension multiplies.  Inputs must individually pass
    mes_verdict (disable with check_inputs for experiments).
    """
    if not states:
        raise ValueError("need at least one state")
    if check_inputs:
        for s in states:
            if not mes_verdict(s, tol).verdict:
                raise ValueError("compose_mes inputs must be maximally entangled")
    if len(states) == 1:
        return states[0]
    n = states[0].n
    if any(s.n != n for s in states):
        raise ValueError("all states must have the same number of systems")
    d_total = 1
    for s in states:
        d_total *= s.d
    if d_total > COMPOSITE_DIM_LIMIT:
        raise ResourceGuardError(f"composite dimension {d_total} exceeds guard {COMPOSITE_DIM_LIMIT}")
    acc = states[0].amps.reshape([states[0].d] * n)
    acc_d = states[0].d
    for s in states[1:]:
        cur = s.amps.reshape([s.d] * n)
        prod = np.multiply.outer(acc, cur)
        # interleave axes so each system becomes one mixed-radix digit
        order = [ax for q in range(n) for ax in (q, n + q)]
        acc = prod.transpose(order).reshape([acc_d * s.d] * n)
        acc_d *= s.d
    return RingState(d_total, n, acc.reshape(-1))


@dataclass
class MesConstruction:
    d: int
    ok: bool
    state: Optional[StateVector | RingState]
    construction: str
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {"d": self.d, "ok": self.ok, "construction": self.construction, "reason": self.reason}


def _prime_factors(d: int) -> list[int]:
    if d > FACTOR_LIMIT:
        raise ResourceGuardError(f"refusing to factor {d} > {FACTOR_LIMIT}")
    out = []
    f = 2
    while f * f <= d:
        while d % f == 0:
            out.append(f)
            d //= f
        f += 1
    if d > 1:
        out.append(d)
    return out


def build_mes(d: int, tol: float = DEFAULT_TOL) -> MesConstruction:
    """Construct a 4-party maximally entangled state of per-system dimension d.

    Odd d >= 3 uses the ring square state; multiples of four tensor a
    GF(2^m) square state (smallest admissible twist, element index 2) with
    one ring factor per odd prime.  Dimensions of the form 2 mod 4 are
    refused: no such state is known, and the even ring construction fails.
    """
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if d % 2 == 1:
        return MesConstruction(d, True, ring_square_state(d), f"ring({d})")
    if d % 4 != 0:
        return MesConstruction(
            d, False, None, "none",
            reason=f"no 4-party maximally entangled state of dimension {d} is known; "
                   "existence for dimensions 2 mod 4 is an open question (conjectured not to exist)",
        )
    factors = _prime_factors(d)
    m = factors.count(2)
    odd = [p for p in factors if p != 2]
    fld = Field(2, m)
    parts: list[StateVector | RingState] = [square_state(fld, 2, tol)]
    parts += [ring_square_state(p) for p in odd]
    label = f"square(GF(2^{m}),twist=2)"
    if odd:
        label += "".join(f" x ring({p})" for p in odd)
    return MesConstruction(d, True, compose_mes(parts, tol), label)


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@dataclass
class BipartitionRecord:
    subset: tuple[int, ...]
    rank: int
    flat: bool
    maximally_mixed: bool
    deviation: float


@dataclass
class BipartitionReport:
    verdict: bool
    records: list[BipartitionRecord]

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "bipartitions": [
                {
                    "A": list(r.subset),
                    "rank": r.rank,
                    "flat": r.flat,
                    "maximally_mixed": r.maximally_mixed,
                    "deviation": r.deviation,
                }
                for r in self.records
            ],
        }


def mes_verdict(state: StateVector | RingState, tol: float = DEFAULT_TOL) -> BipartitionReport:
    """Check every bipartition's smaller side against the maximally mixed state.

    For 4 parties the report covers the 4 singletons plus the 3 unordered
    two-against-two splits, each listed once from the side containing
    system 1.
    """
    d, n, amps = state.d, state.n, state.amps
    records = []
    verdict = True
    for subset in bipartition_subsets(n):
        rho = reduced_density_raw(amps, d, n, subset)
        dim = d ** len(subset)
        dev = float(np.max(np.abs(rho - np.eye(dim) / dim)))
        evals = spectrum(rho)
        r = int(np.count_nonzero(evals > tol))
        nonzero = evals[:r] if r else evals[:1]
        flat = bool(nonzero.max() - nonzero.min() <= tol)
        mixed = dev <= tol
        verdict &= mixed
        records.append(BipartitionRecord(subset, r, flat, mixed, dev))
    return BipartitionReport(bool(verdict), records)


def symbolic_rdm_rank(sym: SymbolicState, subset: Sequence[int]) -> int:
    """Rank of a reduced density matrix straight from the coefficient matrix.

    For a state that is a uniform superposition over a rank-k row space the
    spectrum of any marginal is flat, with rank d^(r_A + r_B - k) where r_A
    and r_B are the ranks of the two column blocks.  Cross-checked against
    dense ranks in the test suite.
    """
    keep = sorted(set(subset))
    if not keep or len(keep) == sym.n or any(not 1 <= q <= sym.n for q in keep):
        raise ValueError("subset must be a nonempty proper subset of the wires")
    fld = sym.field
    cols_a = [q - 1 for q in keep]
    cols_b = [q - 1 for q in range(1, sym.n + 1) if q not in keep]
    r_a = mat_rank(fld, sym.matrix[:, cols_a])
    r_b = mat_rank(fld, sym.matrix[:, cols_b])
    return fld.d ** (r_a + r_b - sym.k)


# ---------------------------------------------------------------------------
# Tripartite marginal checks
# ---------------------------------------------------------------------------

def tripartite_marginal_checks(d: int, tol: float = DEFAULT_TOL) -> dict:
    """Rank facts about tripartite states whose pair marginals are I/d^2.

    Part one: the trivial state I/d^3 has all pair marginals maximally mixed
    and rank d^3 >= d.  Part two (when a 4-party construction exists):
    tracing one system from the maximally entangled state leaves a rank-d
    tripartite state with the same marginal property.
    """
    eye3 = np.eye(d ** 3) / d ** 3
    pairs = [(1, 2), (1, 3), (2, 3)]
    trivial_devs = [
        float(np.max(np.abs(rho_partial_trace(eye3, d, 3, pair) - np.eye(d ** 2) / d ** 2)))
        for pair in pairs
    ]
    report = {
        "d": d,
        "trivial": {
            "rank": d ** 3,
            "marginals_maximally_mixed": all(dev <= tol for dev in trivial_devs),
            "max_deviation": max(trivial_devs),
        },
    }
    built = build_mes(d, tol)
    if not built.ok:
        report["mes"] = {"available": False, "reason": built.reason}
        return report
    amps = built.state.amps
    rho_abc = reduced_density_raw(amps, d, 4, (1, 2, 3))
    devs = [
        float(np.max(np.abs(rho_partial_trace(rho_abc, d, 3, pair) - np.eye(d ** 2) / d ** 2)))
        for pair in pairs
    ]
    report["mes"] = {
        "available": True,
        "construction": built.construction,
        "rank": dm_rank(rho_abc, tol),
        "rank_equals_d": dm_rank(rho_abc, tol) == d,
        "marginals_maximally_mixed": all(dev <= tol for dev in devs),
        "max_deviation": max(devs),
    }
    return report
