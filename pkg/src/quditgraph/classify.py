"""Classification of standard-form graph states at small N.

Duality lets the enumeration fix the source side as the smaller one, so only
source-set sizes k = 1 .. floor(N/2) occur, and particle permutations let it
fix the sources as wires 1..k.  Every labeling of the k x (N-k) edge matrix
is swept, keeping graphs where no qudit stays in a product state (no
isolated vertex).

Each k is one class of the reported table - that is the granularity at which
the families of entangled types live (sweeping all labels of one class stays
within it, while no local-unitary move crosses classes).  Within a class the
enumeration additionally buckets the label assignments by their
local-unitary invariant signature and reports those orbits, since for some
fields the labels split a class into several invariant orbits (the square
with twist 1 is not equivalent to the square with twist 2 over GF(3), for
instance).  That finer structure is data, not a class count.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .gf import Field
from .simulator import ResourceGuardError, STATE_SIZE_LIMIT, signature_key
from .rewrite import SymbolicState


def _dense_from_matrix(fld: Field, matrix: np.ndarray, n: int) -> np.ndarray:
    sym = SymbolicState(fld, n, matrix, np.zeros(n, dtype=np.int64))
    return sym.dense_amps()


def classify(fld: Field, n_qudits: int, tol: float = 1e-10) -> dict:
    """Classify product-free standard-form graph states on n_qudits wires."""
    d = fld.d
    if n_qudits < 2:
        raise ValueError("classification needs at least two qudits")
    if d ** n_qudits > STATE_SIZE_LIMIT:
        raise ResourceGuardError(f"{d}**{n_qudits} amplitudes exceed the 2^24 guard")
    classes = []
    seen_keys: dict[tuple, int] = {}
    for k in range(1, n_qudits // 2 + 1):
        n_sinks = n_qudits - k
        orbits: dict[tuple, dict] = {}
        total = 0
        for labels in product(range(d), repeat=k * n_sinks):
            grid = np.array(labels, dtype=np.int64).reshape(k, n_sinks)
            if any(not grid[i].any() for i in range(k)):
                continue  # isolated source vertex: its qudit stays in |s>
            if any(not grid[:, j].any() for j in range(n_sinks)):
                continue  # isolated sink vertex: its qudit stays in |0>
            matrix = np.zeros((k, n_qudits), dtype=np.int64)
            matrix[:, :k] = np.eye(k, dtype=np.int64)
            matrix[:, k:] = grid
            key = signature_key(_dense_from_matrix(fld, matrix, n_qudits), d, n_qudits)
            if key in seen_keys and seen_keys[key] != k:
                raise RuntimeError("invariant signature crossed class boundaries")
            seen_keys[key] = k
            entry = orbits.get(key)
            if entry is None:
                orbits[key] = {"count": 1, "representative_labels": [int(v) for v in labels]}
            else:
                entry["count"] += 1
            total += 1
        if total == 0:
            continue
        rep_edges = [
            {"from": i + 1, "to": k + j + 1, "label": 1}
            for i in range(k)
            for j in range(n_sinks)
        ]
        classes.append(
            {
                "sources": k,
                "sinks": n_sinks,
                "graphs": total,
                "representative": {"S": list(range(1, k + 1)), "O": list(range(k + 1, n_qudits + 1)), "edges": rep_edges},
                "signature_orbits": [
                    {"count": orbits[key]["count"], "representative_labels": orbits[key]["representative_labels"]}
                    for key in sorted(orbits)
                ],
            }
        )
    return {
        "field": fld.descriptor(),
        "n": n_qudits,
        "count": len(classes),
        "classes": classes,
    }
