"""Symbolic circuit algebra: affine tracking, rewrite rules, canonical form.

A circuit of A/D/C/W gates acting on a register initialized to a mix of
uniform-superposition wires and zero wires produces a uniform superposition
over an affine row space.  The SymbolicState tracks that space exactly as a
k x N coefficient matrix over the field plus an offset vector, where k is
the number of superposition wires.

Canonicalization reduces any C-only circuit to a directed bipartite graph:
source vertices are the wires carrying the superposition, sink vertices the
rest, and each edge carries a nonzero field label.  The reduction picks the
lexicographically earliest set of k linearly independent wire columns as the
sources, which makes the output deterministic and idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .gf import Field
from .simulator import Gate, StateVector, init_state, run_gates, sequence_matrix, sequence_source_map, validate_gate


class CircuitParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


# ---------------------------------------------------------------------------
# Circuits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Circuit:
    field: Field
    n_qudits: int
    init: tuple[str, ...]
    gates: tuple[Gate, ...]

    def __post_init__(self):
        if len(self.init) != self.n_qudits:
            raise ValueError("init pattern length must equal the qudit count")
        for token in self.init:
            if token not in ("s", "0"):
                raise ValueError(f"init entries must be 's' or '0', got {token!r}")
        for g in self.gates:
            validate_gate(self.field, self.n_qudits, g)

    @property
    def k(self) -> int:
        return sum(1 for t in self.init if t == "s")

    def simulate(self, tol: float = 1e-10) -> StateVector:
        state = init_state(self.field, self.n_qudits, self.init, tol)
        return run_gates(state, self.gates)


# ---------------------------------------------------------------------------
# Field linear algebra (small matrices, scalar ops)
# ---------------------------------------------------------------------------

def mat_rref(fld: Field, mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the field; returns (rref, pivot columns)."""
    m = np.array(mat, dtype=np.int64, copy=True)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = fld.inv(int(m[r, c]))
        m[r] = [fld.mul(inv, int(v)) for v in m[r]]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = int(m[i, c])
                m[i] = [fld.sub(int(a), fld.mul(f, int(b))) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def mat_rank(fld: Field, mat: np.ndarray) -> int:
    if mat.size == 0:
        return 0
    return len(mat_rref(fld, mat)[1])


# ---------------------------------------------------------------------------
# Symbolic states
# ---------------------------------------------------------------------------

class SymbolicState:
    """Exact algebraic image of an A/D/C/W circuit on an s/0 register.

    The dense state it denotes is d^(-k/2) * sum over u in F^k of the
    basis ket whose digit on wire q is sum_i matrix[i, q-1]*u_i + offset[q-1].
    """

    def __init__(self, fld: Field, n_qudits: int, matrix: np.ndarray, offsets: np.ndarray):
        self.field = fld
        self.n = int(n_qudits)
        self.matrix = np.array(matrix, dtype=np.int64).reshape(-1, self.n)
        self.offsets = np.array(offsets, dtype=np.int64).reshape(self.n)

    @property
    def k(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pattern(cls, fld: Field, pattern: Sequence[str]) -> "SymbolicState":
        n = len(pattern)
        k = sum(1 for t in pattern if t == "s")
        matrix = np.zeros((k, n), dtype=np.int64)
        row = 0
        for q, token in enumerate(pattern):
            if token == "s":
                matrix[row, q] = 1
                row += 1
            elif token != "0":
                raise ValueError(f"pattern entries must be 's' or '0', got {token!r}")
        return cls(fld, n, matrix, np.zeros(n, dtype=np.int64))

    @classmethod
    def from_circuit(cls, circuit: Circuit) -> "SymbolicState":
        sym = cls.from_pattern(circuit.field, circuit.init)
        for g in circuit.gates:
            sym.apply(g)
        return sym

    def copy(self) -> "SymbolicState":
        return SymbolicState(self.field, self.n, self.matrix.copy(), self.offsets.copy())

    def apply(self, gate: Gate) -> "SymbolicState":
        """Apply one gate in place.  Fourier and reversal gates are rejected."""
        validate_gate(self.field, self.n, gate)
        fld = self.field
        if gate.kind == "C":
            m, n = gate.control - 1, gate.target - 1
            b = gate.param
            for i in range(self.k):
                self.matrix[i, n] = fld.add(int(self.matrix[i, n]), fld.mul(b, int(self.matrix[i, m])))
            self.offsets[n] = fld.add(int(self.offsets[n]), fld.mul(b, int(self.offsets[m])))
        elif gate.kind == "A":
            q = gate.wires[0] - 1
            self.offsets[q] = fld.add(int(self.offsets[q]), gate.param)
        elif gate.kind == "D":
            q = gate.wires[0] - 1
            for i in range(self.k):
                self.matrix[i, q] = fld.mul(gate.param, int(self.matrix[i, q]))
            self.offsets[q] = fld.mul(gate.param, int(self.offsets[q]))
        elif gate.kind == "W":
            a, b = gate.wires[0] - 1, gate.wires[1] - 1
            self.matrix[:, [a, b]] = self.matrix[:, [b, a]]
            self.offsets[[a, b]] = self.offsets[[b, a]]
        else:
            raise ValueError(f"{gate.kind} gate has no affine representation")
        return self

    def dense_amps(self) -> np.ndarray:
        """Reconstruct the dense amplitude vector (requires a tabulated field)."""
        fld, d, n, k = self.field, self.field.d, self.n, self.k
        count = d ** k
        grids = np.indices([d] * k).reshape(k, count) if k else np.zeros((0, 1), dtype=np.int64)
        idx = np.zeros(count if k else 1, dtype=np.int64)
        for q in range(n):
            digit = np.full(count if k else 1, int(self.offsets[q]), dtype=np.int64)
            for i in range(k):
                term = fld.mul_table[int(self.matrix[i, q])][grids[i]]
                digit = fld.add_table[digit, term]
            idx = idx * d + digit
        amps = np.zeros(d ** n, dtype=np.complex128)
        np.add.at(amps, idx, d ** (-k / 2) if k else 1.0)
        return amps

    def to_state(self, tol: float = 1e-10) -> StateVector:
        return StateVector(self.field, self.n, self.dense_amps(), tol)


def symbolic_apply(sym: SymbolicState, gate: Gate) -> SymbolicState:
    """Pure-function variant of SymbolicState.apply."""
    return sym.copy().apply(gate)


def states_equal_symbolic(s1: SymbolicState, s2: SymbolicState) -> bool:
    """Exact state equality: equal affine row spaces (same span, compatible offset)."""
    if s1.field != s2.field or s1.n != s2.n:
        return False
    fld = s1.field
    r1, p1 = mat_rref(fld, s1.matrix)
    r2, p2 = mat_rref(fld, s2.matrix)
    if p1 != p2 or len(p1) != len(p2):
        return False
    if s1.k != s2.k:
        # different superposition weight per point even if the spans agree
        return False
    if not np.array_equal(r1[: len(p1)], r2[: len(p2)]):
        return False
    delta = np.array([fld.sub(int(a), int(b)) for a, b in zip(s1.offsets, s2.offsets)], dtype=np.int64)
    stacked = np.vstack([r1[: len(p1)], delta])
    return mat_rank(fld, stacked) == len(p1)


# ---------------------------------------------------------------------------
# Graph states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphState:
    """Directed bipartite graph: source wires -> sink wires with field labels."""

    field: Field
    s_wires: tuple[int, ...]
    o_wires: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (source, sink, nonzero label)

    def __post_init__(self):
        s, o = set(self.s_wires), set(self.o_wires)
        if s & o:
            raise ValueError("source and sink wire sets overlap")
        if s | o != set(range(1, len(s) + len(o) + 1)):
            raise ValueError("wires must cover 1..N")
        for i, j, b in self.edges:
            if i not in s or j not in o:
                raise ValueError(f"edge {(i, j)} does not run from a source to a sink wire")
            if not 0 < b < self.field.d:
                raise ValueError(f"edge label {b} must be a nonzero field element")

    @property
    def n(self) -> int:
        return len(self.s_wires) + len(self.o_wires)

    @property
    def edge_map(self) -> dict[tuple[int, int], int]:
        return {(i, j): b for i, j, b in self.edges}

    def matrix(self) -> np.ndarray:
        """k x N coefficient matrix of the graph state."""
        m = np.zeros((len(self.s_wires), self.n), dtype=np.int64)
        for row, i in enumerate(self.s_wires):
            m[row, i - 1] = 1
        for i, j, b in self.edges:
            m[self.s_wires.index(i), j - 1] = b
        return m

    def to_symbolic(self) -> SymbolicState:
        return SymbolicState(self.field, self.n, self.matrix(), np.zeros(self.n, dtype=np.int64))

    def to_circuit(self) -> Circuit:
        init = tuple("s" if q in self.s_wires else "0" for q in range(1, self.n + 1))
        gates = tuple(Gate("C", (i, j), b) for i, j, b in self.edges)
        return Circuit(self.field, self.n, init, gates)

    def state(self, tol: float = 1e-10) -> StateVector:
        return self.to_symbolic().to_state(tol)


def make_graph_state(fld: Field, s_wires: Iterable[int], o_wires: Iterable[int],
                     edges: Iterable[tuple[int, int, int]]) -> GraphState:
    """Normalize wire order, drop zero labels, and build a GraphState."""
    cleaned = tuple(sorted((i, j, b) for i, j, b in edges if b != 0))
    return GraphState(fld, tuple(sorted(s_wires)), tuple(sorted(o_wires)), cleaned)


def graph_from_symbolic(sym: SymbolicState) -> tuple[GraphState, dict[int, int]]:
    """Extract the bipartite graph and any residual local shifts.

    The pivot wires (lexicographically earliest independent columns) become
    the sources.  Offsets on pivot wires are absorbed by relabeling the
    summation index; whatever shift survives on sink wires is returned as a
    residual map wire -> field element (empty for C-only circuits).
    """
    fld = sym.field
    rref, pivots = mat_rref(fld, sym.matrix)
    k = sym.k
    if len(pivots) != k:
        raise RuntimeError("coefficient matrix lost rank; inputs must be unitary gate images")
    if k == 0 or k == sym.n:
        raise ValueError("graph extraction needs 1 <= k <= N-1 superposition wires")
    s_wires = tuple(c + 1 for c in pivots)
    o_wires = tuple(q for q in range(1, sym.n + 1) if q not in s_wires)
    edges = []
    for row, i in enumerate(s_wires):
        for j in o_wires:
            b = int(rref[row, j - 1])
            if b != 0:
                edges.append((i, j, b))
    residual: dict[int, int] = {}
    t_piv = [int(sym.offsets[c]) for c in pivots]
    for j in o_wires:
        acc = int(sym.offsets[j - 1])
        for row in range(k):
            acc = fld.sub(acc, fld.mul(t_piv[row], int(rref[row, j - 1])))
        if acc != 0:
            residual[j] = acc
    return make_graph_state(fld, s_wires, o_wires, edges), residual


def canonicalize(circuit: Circuit) -> tuple[tuple[int, ...], GraphState]:
    """Reduce a C-only circuit to its standard bipartite graph form.

    Returns (wire_order, graph): `graph` reproduces the input state exactly
    on the original wire labels, and `wire_order` lists sources before sinks,
    i.e. the particle permutation that moves the graph into the
    sources-first layout.
    """
    for g in circuit.gates:
        if g.kind != "C":
            raise ValueError(f"canonicalize expects a C-only circuit, found {g.kind} gate")
    if circuit.k == 0 or circuit.k == circuit.n_qudits:
        raise ValueError("standard form needs at least one 's' and one '0' wire")
    sym = SymbolicState.from_circuit(circuit)
    graph, residual = graph_from_symbolic(sym)
    if residual:  # pragma: no cover - impossible for C-only circuits
        raise RuntimeError("C-only circuit produced affine offsets")
    return graph.s_wires + graph.o_wires, graph


# ---------------------------------------------------------------------------
# Pairwise rewrite rules
# ---------------------------------------------------------------------------

def commute_pair(fld: Field, g1: Gate, g2: Gate) -> list[Gate]:
    """Rewrite the operator product g1*g2 (g2 acts first) as an equal product.

    The pair must match one of the library's exchange/merge rules; gates on
    disjoint wires simply swap.  The returned list is in operator order
    (leftmost factor applied last).
    """
    if not set(g1.wires) & set(g2.wires):
        return [g2, g1]
    k1, k2 = g1.kind, g2.kind

    if k1 == "A" and k2 == "A":
        return [Gate("A", g1.wires, fld.add(g1.param, g2.param))]
    if k1 == "D" and k2 == "D":
        return [Gate("D", g1.wires, fld.mul(g1.param, g2.param))]
    if k1 == "D" and k2 == "A":
        return [Gate("A", g1.wires, fld.mul(g1.param, g2.param)), g1]

    if k1 == "C" and k2 == "A":
        ai, aj = g1.param, g2.param
        if g2.wires[0] == g1.control:
            return [Gate("A", (g1.target,), fld.mul(ai, aj)), g2, g1]
        return [g2, g1]  # shift on the target commutes through
    if k1 == "C" and k2 == "D":
        ai, aj = g1.param, g2.param
        if g2.wires[0] == g1.control:
            return [g2, Gate("C", g1.wires, fld.mul(aj, ai))]
        return [g2, Gate("C", g1.wires, fld.mul(fld.inv(aj), ai))]

    if k1 == "C" and k2 == "C":
        m, n = g1.control, g1.target
        ai, aj = g1.param, g2.param
        if g2.wires == (m, n):
            return [Gate("C", (m, n), fld.add(ai, aj))]
        if g2.wires == (n, m):
            u = fld.add(1, fld.mul(ai, aj))
            if u != 0:
                return [
                    Gate("D", (m,), fld.inv(u)),
                    Gate("D", (n,), u),
                    Gate("C", (n, m), fld.mul(u, aj)),
                    Gate("C", (m, n), fld.mul(fld.inv(u), ai)),
                ]
            return [
                Gate("W", (m, n)),
                Gate("D", (m,), ai),
                Gate("D", (n,), aj),
                Gate("C", (m, n), fld.inv(aj)),
            ]
        if g2.control == m:  # shared control
            return [g2, g1]
        if g2.target == n:  # shared target
            return [g2, g1]
        if g2.target == m:  # chain: g2 feeds g1's control
            return [Gate("C", (g2.control, n), fld.mul(aj, ai)), g2, g1]
        if g2.control == n:  # reverse chain: g1 feeds g2's control
            return [g2, g1, Gate("C", (m, g2.target), fld.neg(fld.mul(ai, aj)))]

    raise ValueError(f"no rewrite rule matches the product {g1!r} * {g2!r}")


def rewrite_adjacent(fld: Field, gates: list[Gate], i: int) -> list[Gate]:
    """Rewrite the time-adjacent pair (gates[i], gates[i+1]) via commute_pair.

    Time order is the reverse of operator order, so the pair maps to
    commute_pair(gates[i+1], gates[i]) and the result is spliced back
    reversed.
    """
    rhs = commute_pair(fld, gates[i + 1], gates[i])
    return gates[:i] + list(reversed(rhs)) + gates[i + 2:]


# ---------------------------------------------------------------------------
# Relation suite: every rewrite rule checked as a dense operator identity
# ---------------------------------------------------------------------------

def _nonzero(fld: Field):
    return range(1, fld.d)


def _all(fld: Field):
    return range(fld.d)


# name -> (number of wires, parameter domains, operator-order LHS builder)
RELATIONS: dict[str, tuple[int, tuple, Callable]] = {
    "add_add_merge": (1, (_all, _all), lambda f, a, b: [Gate("A", (1,), a), Gate("A", (1,), b)]),
    "scale_scale_merge": (1, (_nonzero, _nonzero), lambda f, a, b: [Gate("D", (1,), a), Gate("D", (1,), b)]),
    "scale_add_exchange": (1, (_nonzero, _all), lambda f, a, b: [Gate("D", (1,), a), Gate("A", (1,), b)]),
    "cnot_control_add": (2, (_all, _all), lambda f, a, b: [Gate("C", (1, 2), a), Gate("A", (1,), b)]),
    "cnot_target_add": (2, (_all, _all), lambda f, a, b: [Gate("C", (1, 2), a), Gate("A", (2,), b)]),
    "cnot_control_scale": (2, (_all, _nonzero), lambda f, a, b: [Gate("C", (1, 2), a), Gate("D", (1,), b)]),
    "cnot_target_scale": (2, (_all, _nonzero), lambda f, a, b: [Gate("C", (1, 2), a), Gate("D", (2,), b)]),
    "cnot_merge": (2, (_all, _all), lambda f, a, b: [Gate("C", (1, 2), a), Gate("C", (1, 2), b)]),
    "cnot_opposed_pair": (2, (_all, _all), lambda f, a, b: [Gate("C", (1, 2), a), Gate("C", (2, 1), b)]),
    "cnot_shared_control": (3, (_all, _all), lambda f, a, b: [Gate("C", (1, 2), a), Gate("C", (1, 3), b)]),
    "cnot_shared_target": (3, (_all, _all), lambda f, a, b: [Gate("C", (1, 3), a), Gate("C", (2, 3), b)]),
    "cnot_chain": (3, (_all, _all), lambda f, a, b: [Gate("C", (2, 3), b), Gate("C", (1, 2), a)]),
    "cnot_chain_reverse": (3, (_all, _all), lambda f, a, b: [Gate("C", (1, 2), a), Gate("C", (2, 3), b)]),
}


def compare_sequences(fld: Field, n_wires: int, lhs: Sequence[Gate], rhs: Sequence[Gate],
                      tol: float = 1e-10, dense: bool = True) -> tuple[bool, float]:
    """Check two operator products for equality; returns (ok, max deviation).

    Permutation-only products compare exactly through their basis maps; the
    dense path additionally materializes both matrices and compares
    entrywise within tol.
    """
    if not dense and all(g.kind != "H" for g in list(lhs) + list(rhs)):
        same = np.array_equal(
            sequence_source_map(fld, n_wires, lhs), sequence_source_map(fld, n_wires, rhs)
        )
        return bool(same), 0.0 if same else 1.0
    dev = float(np.max(np.abs(sequence_matrix(fld, n_wires, lhs) - sequence_matrix(fld, n_wires, rhs))))
    return dev <= tol, dev


def relations_suite(fld: Field, exhaustive: bool = True, samples: int = 1000, seed: int = 0,
                    tol: float = 1e-10, rhs_fn: Optional[Callable] = None) -> dict:
    """Verify every rewrite rule against dense operators.

    Exhaustive mode sweeps all admissible parameter pairs and compares dense
    matrices.  Random mode draws `samples` seeded (rule, parameters) tuples,
    compares basis maps exactly, and densifies every 50th draw.
    """
    rhs_fn = rhs_fn or commute_pair
    results: dict[str, dict] = {
        name: {"checked": 0, "ok": True, "first_failure": None} for name in RELATIONS
    }
    cases: list[tuple[str, int, int, bool]] = []
    if exhaustive:
        for name, (_, domains, _) in RELATIONS.items():
            for a in domains[0](fld):
                for b in domains[1](fld):
                    cases.append((name, a, b, True))
    else:
        rng = np.random.default_rng(seed)
        names = sorted(RELATIONS)
        for t in range(samples):
            name = names[rng.integers(len(names))]
            domains = RELATIONS[name][1]
            a = int(rng.choice(np.fromiter(domains[0](fld), dtype=np.int64)))
            b = int(rng.choice(np.fromiter(domains[1](fld), dtype=np.int64)))
            cases.append((name, a, b, t % 50 == 0))
    for name, a, b, dense in cases:
        n_wires, _, lhs_builder = RELATIONS[name]
        lhs = lhs_builder(fld, a, b)
        rhs = rhs_fn(fld, lhs[0], lhs[1])
        ok, dev = compare_sequences(fld, n_wires, lhs, rhs, tol, dense=dense)
        entry = results[name]
        entry["checked"] += 1
        if not ok and entry["first_failure"] is None:
            entry["ok"] = False
            entry["first_failure"] = {"params": (a, b), "max_deviation": dev}
    return {
        "field": fld.descriptor(),
        "mode": "exhaustive" if exhaustive else f"random[{samples}]",
        "relations": results,
        "ok": all(r["ok"] for r in results.values()),
    }


# ---------------------------------------------------------------------------
# Circuit file format
# ---------------------------------------------------------------------------

def parse_circuit(text: str) -> Circuit:
    """Parse the line-oriented circuit format (see serialize_circuit)."""
    fld = None
    n_qudits = None
    init = None
    gates: list[Gate] = []
    stage = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if stage == 0:
                if parts[0] != "field" or len(parts) not in (3, 4):
                    raise CircuitParseError("expected 'field p n [poly_index]'", lineno)
                fld = Field.from_descriptor(" ".join(parts[1:]))
                stage = 1
            elif stage == 1:
                if parts[0] != "qudits" or len(parts) != 2:
                    raise CircuitParseError("expected 'qudits N'", lineno)
                n_qudits = int(parts[1])
                if n_qudits < 1:
                    raise CircuitParseError("qudit count must be positive", lineno)
                stage = 2
            elif stage == 2:
                if parts[0] != "init" or len(parts) != n_qudits + 1:
                    raise CircuitParseError(f"expected 'init' with {n_qudits} entries", lineno)
                init = tuple(parts[1:])
                stage = 3
            else:
                kind = parts[0]
                if kind in ("C", "W"):
                    want = 4 if kind == "C" else 3
                    if len(parts) != want:
                        raise CircuitParseError(f"{kind} gate takes {want - 1} arguments", lineno)
                    wires = (int(parts[1]), int(parts[2]))
                    param = int(parts[3]) if kind == "C" else None
                elif kind in ("A", "D"):
                    if len(parts) != 3:
                        raise CircuitParseError(f"{kind} gate takes 2 arguments", lineno)
                    wires, param = (int(parts[1]),), int(parts[2])
                elif kind in ("H", "V"):
                    if len(parts) != 2:
                        raise CircuitParseError(f"{kind} gate takes 1 argument", lineno)
                    wires, param = (int(parts[1]),), None
                else:
                    raise CircuitParseError(f"unknown gate {kind!r}", lineno)
                gates.append(Gate(kind, wires, param))
        except CircuitParseError:
            raise
        except (ValueError, IndexError) as exc:
            raise CircuitParseError(str(exc), lineno) from exc
    if stage != 3:
        raise CircuitParseError("incomplete circuit: need field, qudits and init lines")
    try:
        return Circuit(fld, n_qudits, init, tuple(gates))
    except ValueError as exc:
        raise CircuitParseError(str(exc)) from exc


def serialize_circuit(circuit: Circuit) -> str:
    lines = [
        f"field {circuit.field.descriptor()}",
        f"qudits {circuit.n_qudits}",
        "init " + " ".join(circuit.init),
    ]
    for g in circuit.gates:
        body = " ".join(str(w) for w in g.wires)
        if g.param is not None:
            body += f" {g.param}"
        lines.append(f"{g.kind} {body}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Graph serialization
# ---------------------------------------------------------------------------

def graph_to_json_dict(g: GraphState) -> dict:
    return {
        "field": {"p": g.field.p, "n": g.field.n, "poly": g.field.poly_index},
        "S": list(g.s_wires),
        "O": list(g.o_wires),
        "edges": [{"from": i, "to": j, "label": b} for i, j, b in g.edges],
    }


def graph_from_json_dict(data: dict) -> GraphState:
    fd = data["field"]
    fld = Field.from_descriptor(f"{fd['p']} {fd['n']} {fd['poly']}")
    edges = [(e["from"], e["to"], e["label"]) for e in data["edges"]]
    return make_graph_state(fld, data["S"], data["O"], edges)


def graph_to_dot(g: GraphState) -> str:
    """DOT rendering: sources as doublecircles on one rank, sinks below."""
    lines = ["digraph graphstate {", "  rankdir=TB;"]
    srow = " ".join(f"q{i} [shape=doublecircle, label=\"{i}\"];" for i in g.s_wires)
    orow = " ".join(f"q{j} [shape=circle, label=\"{j}\"];" for j in g.o_wires)
    lines.append("  { rank=same; " + srow + " }")
    lines.append("  { rank=same; " + orow + " }")
    for i, j, b in g.edges:
        lines.append(f"  q{i} -> q{j} [label=\"{b}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
