"""Dense state-vector simulation of N-qudit registers over GF(p^n).

Basis states are indexed by base-d digit strings with qudit 1 as the most
significant digit, so a ket like |0 2 1 1> at d = 4 is amplitude index
0*64 + 2*16 + 1*4 + 1.

Gates
-----
    A m a   add-shift        |x> -> |x + a>          (field addition)
    D m a   multiply         |x> -> |a x>, a != 0    (field product)
    C m n a generalized CNOT |x>_m |y>_n -> |x>_m |y + a x>_n
    H m     Fourier gate     matrix omega^(x.y)/sqrt(d), omega = exp(2 pi i/p),
            with x.y the coefficientwise dot product mod p
    V m     coefficient reversal permutation
    W m n   swap

All gates except H permute basis states; their application is routed through
the kernels module (numba or numpy backend).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .gf import Field

STATE_SIZE_LIMIT = 2 ** 24
TABLE_FIELD_LIMIT = 256
DEFAULT_TOL = 1e-10

GATE_KINDS = ("A", "D", "C", "H", "V", "W")
_PARAM_KINDS = ("A", "D", "C")
_TWO_WIRE_KINDS = ("C", "W")

_DIGITS36 = "0123456789abcdefghijklmnopqrstuvwxyz"


class ResourceGuardError(Exception):
    """Raised when a requested computation exceeds the desk-scale guards."""


@dataclass(frozen=True)
class Gate:
    """One circuit gate: kind in A/D/C/H/V/W, 1-based wires, field parameter."""

    kind: str
    wires: tuple[int, ...]
    param: Optional[int] = None

    @property
    def control(self) -> int:
        return self.wires[0]

    @property
    def target(self) -> int:
        return self.wires[-1]

    def __repr__(self) -> str:
        body = " ".join(str(w) for w in self.wires)
        if self.param is not None:
            body += f" a={self.param}"
        return f"<{self.kind} {body}>"


def validate_gate(field: Field, n_qudits: int, gate: Gate) -> None:
    if gate.kind not in GATE_KINDS:
        raise ValueError(f"unknown gate kind {gate.kind!r}")
    want = 2 if gate.kind in _TWO_WIRE_KINDS else 1
    if len(gate.wires) != want:
        raise ValueError(f"{gate.kind} gate takes {want} wire(s), got {gate.wires}")
    for w in gate.wires:
        if not 1 <= w <= n_qudits:
            raise ValueError(f"wire {w} out of range 1..{n_qudits}")
    if len(set(gate.wires)) != len(gate.wires):
        raise ValueError(f"wires of a two-qudit gate must be distinct: {gate.wires}")
    if gate.kind in _PARAM_KINDS:
        if gate.param is None:
            raise ValueError(f"{gate.kind} gate requires a field parameter")
        if not 0 <= gate.param < field.d:
            raise ValueError(f"parameter {gate.param} out of range for order-{field.d} field")
        if gate.kind == "D" and gate.param == 0:
            raise ValueError("D(0) is not unitary")
    elif gate.param is not None:
        raise ValueError(f"{gate.kind} gate takes no parameter")


# ---------------------------------------------------------------------------
# State vectors
# ---------------------------------------------------------------------------

class StateVector:
    """Dense complex amplitudes of an N-qudit register over a field."""

    def __init__(self, field: Field, n_qudits: int, amps: np.ndarray, tol: float = DEFAULT_TOL):
        self.field = field
        self.n = int(n_qudits)
        self.amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        self.tol = tol
        if self.amps.size != field.d ** self.n:
            raise ValueError("amplitude array size does not match d**n")

    @property
    def d(self) -> int:
        return self.field.d

    def copy(self) -> "StateVector":
        return StateVector(self.field, self.n, self.amps.copy(), self.tol)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __repr__(self) -> str:
        return f"StateVector(d={self.d}, n={self.n})"


def _check_size(d: int, n: int) -> None:
    if d ** n > STATE_SIZE_LIMIT:
        raise ResourceGuardError(f"state of {d}**{n} amplitudes exceeds the 2^24 guard")


def init_state(field: Field, n_qudits: int, pattern: Sequence[str], tol: float = DEFAULT_TOL) -> StateVector:
    """Tensor product of |s> (uniform superposition) and |0> factors.

    pattern entries are 's' for the uniform superposition and '0' (alias
    'zero') for the computational zero state.
    """
    if len(pattern) != n_qudits:
        raise ValueError(f"pattern length {len(pattern)} != qudit count {n_qudits}")
    d = field.d
    _check_size(d, n_qudits)
    if d > TABLE_FIELD_LIMIT:
        raise ResourceGuardError(f"dense simulation requires a tabulated field (d <= {TABLE_FIELD_LIMIT})")
    zero = np.zeros(d, dtype=np.complex128)
    zero[0] = 1.0
    uniform = np.full(d, 1.0 / math.sqrt(d), dtype=np.complex128)
    amps = np.ones(1, dtype=np.complex128)
    for token in pattern:
        if token == "s":
            amps = np.kron(amps, uniform)
        elif token in ("0", "zero"):
            amps = np.kron(amps, zero)
        else:
            raise ValueError(f"pattern entries must be 's' or '0', got {token!r}")
    return StateVector(field, n_qudits, amps, tol)


def _stride(d: int, n: int, wire: int) -> int:
    return d ** (n - wire)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate, returning a new StateVector."""
    validate_gate(state.field, state.n, gate)
    out = np.empty_like(state.amps)
    _apply_gate_raw(state.field, state.n, gate, state.amps, out)
    return StateVector(state.field, state.n, out, state.tol)


def _apply_gate_raw(field: Field, n: int, gate: Gate, amps: np.ndarray, out: np.ndarray) -> None:
    d = field.d
    kind = gate.kind
    if kind == "H":
        h = fourier_matrix(field)
        axis = gate.wires[0] - 1
        nd = amps.reshape([d] * n)
        mixed = np.tensordot(h, nd, axes=([1], [axis]))
        out[:] = np.moveaxis(mixed, 0, axis).reshape(-1)
        return
    if kind == "C":
        sc = _stride(d, n, gate.control)
        st = _stride(d, n, gate.target)
        kernels.cnot(amps, out, d, sc, st, field.mul_table[gate.param], field.sub_table)
        return
    if kind == "W":
        sa = _stride(d, n, gate.wires[0])
        sb = _stride(d, n, gate.wires[1])
        kernels.swap(amps, out, d, sa, sb)
        return
    s = _stride(d, n, gate.wires[0])
    if kind == "A":
        src_digit = field.sub_table[:, gate.param]
    elif kind == "D":
        src_digit = field.mul_table[field.inv(gate.param)]
    elif kind == "V":
        src_digit = field.reverse_table
    else:  # pragma: no cover - validate_gate rules this out
        raise ValueError(f"unknown gate kind {kind!r}")
    kernels.axis_perm(amps, out, d, s, np.ascontiguousarray(src_digit))


def run_gates(state: StateVector, gates: Iterable[Gate]) -> StateVector:
    """Apply a time-ordered gate sequence (first gate acts first)."""
    cur = state.amps.copy()
    buf = np.empty_like(cur)
    for gate in gates:
        validate_gate(state.field, state.n, gate)
        _apply_gate_raw(state.field, state.n, gate, cur, buf)
        cur, buf = buf, cur
    return StateVector(state.field, state.n, cur, state.tol)


# ---------------------------------------------------------------------------
# Dense operators
# ---------------------------------------------------------------------------

def fourier_matrix(field: Field) -> np.ndarray:
    """d x d Fourier gate: entry (x, y) = omega^(x.y)/sqrt(d), omega = exp(2 pi i/p)."""
    omega = np.exp(2j * np.pi / field.p)
    return omega ** field.dot_table / math.sqrt(field.d)


def reversal_matrix(field: Field) -> np.ndarray:
    """d x d permutation sending |x> to the coefficient-reversed basis state."""
    m = np.zeros((field.d, field.d), dtype=np.complex128)
    m[field.reverse_table, np.arange(field.d)] = 1.0
    return m


def gate_source_map(field: Field, n_wires: int, gate: Gate) -> np.ndarray:
    """Gather map src with new_amps = amps[src], for permutation gates only."""
    validate_gate(field, n_wires, gate)
    if gate.kind == "H":
        raise ValueError("the Fourier gate is not a basis permutation")
    d = field.d
    idx = np.arange(d ** n_wires, dtype=np.int64)
    if gate.kind == "C":
        sc = _stride(d, n_wires, gate.control)
        st = _stride(d, n_wires, gate.target)
        xc = (idx // sc) % d
        xt = (idx // st) % d
        return idx + (field.sub_table[xt, field.mul_table[gate.param][xc]] - xt) * st
    if gate.kind == "W":
        sa = _stride(d, n_wires, gate.wires[0])
        sb = _stride(d, n_wires, gate.wires[1])
        xa = (idx // sa) % d
        xb = (idx // sb) % d
        return idx + (xb - xa) * sa + (xa - xb) * sb
    s = _stride(d, n_wires, gate.wires[0])
    x = (idx // s) % d
    if gate.kind == "A":
        src_digit = field.sub_table[:, gate.param]
    elif gate.kind == "D":
        src_digit = field.mul_table[field.inv(gate.param)]
    else:  # V
        src_digit = field.reverse_table
    return idx + (src_digit[x] - x) * s


def sequence_source_map(field: Field, n_wires: int, ops: Sequence[Gate]) -> np.ndarray:
    """Gather map of an operator product (ops[0] applied last, ops[-1] first)."""
    total = np.arange(field.d ** n_wires, dtype=np.int64)
    for gate in ops:
        total = gate_source_map(field, n_wires, gate)[total]
    return total


def gate_matrix(field: Field, n_wires: int, gate: Gate) -> np.ndarray:
    """Dense unitary of one gate on an n_wires register."""
    if gate.kind == "H":
        validate_gate(field, n_wires, gate)
        h = fourier_matrix(field)
        mats = [h if w == gate.wires[0] else np.eye(field.d) for w in range(1, n_wires + 1)]
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out
    src = gate_source_map(field, n_wires, gate)
    return np.eye(field.d ** n_wires, dtype=np.complex128)[src]


def sequence_matrix(field: Field, n_wires: int, ops: Sequence[Gate]) -> np.ndarray:
    """Dense unitary of an operator product (ops[0] leftmost)."""
    if all(g.kind != "H" for g in ops):
        src = sequence_source_map(field, n_wires, ops)
        return np.eye(field.d ** n_wires, dtype=np.complex128)[src]
    out = np.eye(field.d ** n_wires, dtype=np.complex128)
    for gate in ops:
        out = out @ gate_matrix(field, n_wires, gate)
    return out


# ---------------------------------------------------------------------------
# Density matrices and spectra
# ---------------------------------------------------------------------------

@dataclass
class DensityMatrix:
    """Reduced density operator on the listed qudits."""

    dims: tuple[int, ...]
    entries: np.ndarray


def reduced_density(state: StateVector, subset: Sequence[int]) -> DensityMatrix:
    """Partial trace onto `subset` (1-based qudit labels)."""
    rho = reduced_density_raw(state.amps, state.d, state.n, subset)
    return DensityMatrix(tuple(sorted(subset)), rho)


def reduced_density_raw(amps: np.ndarray, d: int, n: int, subset: Sequence[int]) -> np.ndarray:
    keep = sorted(set(subset))
    if not keep or len(keep) == n:
        raise ValueError("subset must be nonempty and proper")
    if any(not 1 <= q <= n for q in keep):
        raise ValueError(f"subset {subset} out of range 1..{n}")
    rest = [q for q in range(1, n + 1) if q not in keep]
    axes = [q - 1 for q in keep] + [q - 1 for q in rest]
    m = amps.reshape([d] * n).transpose(axes).reshape(d ** len(keep), d ** len(rest))
    return m @ m.conj().T


def rho_partial_trace(rho: np.ndarray, d: int, n: int, keep: Sequence[int]) -> np.ndarray:
    """Partial trace of an n-system density matrix onto `keep` (1-based)."""
    keep = sorted(set(keep))
    rest = [q for q in range(1, n + 1) if q not in keep]
    t = rho.reshape([d] * (2 * n))
    for q in reversed(rest):
        t = np.trace(t, axis1=q - 1, axis2=q - 1 + t.ndim // 2)
    k = d ** len(keep)
    return t.reshape(k, k)


def spectrum(dm: DensityMatrix | np.ndarray) -> np.ndarray:
    """Eigenvalues of a density matrix, descending."""
    entries = dm.entries if isinstance(dm, DensityMatrix) else dm
    return np.sort(np.linalg.eigvalsh(entries))[::-1]


def rank(dm: DensityMatrix | np.ndarray, tol: float = DEFAULT_TOL) -> int:
    return int(np.count_nonzero(spectrum(dm) > tol))


def states_equal_up_to_phase(s1: StateVector, s2: StateVector, tol: float = DEFAULT_TOL) -> bool:
    if s1.field != s2.field or s1.n != s2.n:
        return False
    return bool(abs(abs(np.vdot(s1.amps, s2.amps)) - 1.0) <= tol)


# ---------------------------------------------------------------------------
# Bipartition machinery shared by the entanglement and duality checks
# ---------------------------------------------------------------------------

def bipartition_subsets(n: int) -> list[tuple[int, ...]]:
    """Every bipartition of n qudits exactly once, as the smaller side.

    Subsets of size < n/2 all appear; at size exactly n/2 only those
    containing qudit 1, so each split is listed once.  For n = 4 this yields
    the 4 singletons plus 3 pair subsets.
    """
    from itertools import combinations

    out: list[tuple[int, ...]] = []
    for size in range(1, n // 2 + 1):
        for combo in combinations(range(1, n + 1), size):
            if 2 * size == n and combo[0] != 1:
                continue
            out.append(combo)
    return out


def bipartite_spectra(amps: np.ndarray, d: int, n: int) -> list[np.ndarray]:
    """RDM spectra over all bipartitions, sorted into a canonical multiset order."""
    specs = [spectrum(reduced_density_raw(amps, d, n, s)) for s in bipartition_subsets(n)]
    specs.sort(key=lambda s: tuple(np.round(s, 8)))
    return specs


def signature_key(amps: np.ndarray, d: int, n: int, digits: int = 8) -> tuple:
    """Hashable local-unitary invariant: the sorted multiset of RDM spectra."""
    return tuple(tuple(np.round(s, digits)) for s in bipartite_spectra(amps, d, n))


def signatures_match(amps1: np.ndarray, amps2: np.ndarray, d: int, n: int, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Compare the invariant signatures of two states; returns (match, max deviation)."""
    sp1 = bipartite_spectra(amps1, d, n)
    sp2 = bipartite_spectra(amps2, d, n)
    dev = max(
        float(np.max(np.abs(a - b))) if a.shape == b.shape else np.inf
        for a, b in zip(sp1, sp2)
    )
    return dev <= tol, dev


# ---------------------------------------------------------------------------
# State dump format
# ---------------------------------------------------------------------------

def _index_digits(i: int, d: int, n: int) -> str:
    digits = []
    for _ in range(n):
        digits.append(i % d)
        i //= d
    digits.reverse()
    if d <= 36:
        return "".join(_DIGITS36[v] for v in digits)
    return ",".join(str(v) for v in digits)


def _parse_digits(text: str, d: int, n: int) -> int:
    if "," in text:
        vals = [int(v) for v in text.split(",")]
    else:
        vals = [_DIGITS36.index(c) for c in text]
    if len(vals) != n or any(not 0 <= v < d for v in vals):
        raise ValueError(f"bad basis index {text!r} for d={d}, n={n}")
    idx = 0
    for v in vals:
        idx = idx * d + v
    return idx


def dump_state(amps: np.ndarray, d: int, n: int, header: Sequence[str] = ()) -> str:
    """Debug dump: one `index_base_d re im` line per nonzero amplitude."""
    lines = [f"# quditgraph-state d={d} qudits={n}"]
    lines += [f"# {h}" for h in header]
    for i in range(len(amps)):
        a = amps[i]
        if abs(a) > 1e-14:
            lines.append(f"{_index_digits(i, d, n)} {float(a.real)!r} {float(a.imag)!r}")
    return "\n".join(lines) + "\n"


def parse_state_dump(text: str) -> tuple[np.ndarray, int, int]:
    """Inverse of dump_state; returns (amps, d, n)."""
    d = n = None
    amps = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# quditgraph-state"):
                fields = dict(part.split("=") for part in line.split()[2:])
                d, n = int(fields["d"]), int(fields["qudits"])
                _check_size(d, n)
                amps = np.zeros(d ** n, dtype=np.complex128)
            continue
        if amps is None:
            raise ValueError("state dump is missing its '# quditgraph-state d=.. qudits=..' header")
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'index re im', got {raw!r}")
        amps[_parse_digits(parts[0], d, n)] = complex(float(parts[1]), float(parts[2]))
    if amps is None:
        raise ValueError("state dump is missing its '# quditgraph-state d=.. qudits=..' header")
    return amps, d, n
