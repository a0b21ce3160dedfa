"""Hot kernels for dense state updates: numba-jitted with a numpy fallback.

Every gate except the Fourier gate permutes basis states, so the inner loop
is "gather amplitudes through an index map built from small digit tables".
The numba path fuses that loop; the numpy path builds the index arrays
explicitly.  Selection happens once at import time:

    QUDITGRAPH_KERNELS=numpy   force the pure-numpy path
    QUDITGRAPH_KERNELS=numba   force numba (raises if unavailable)
    unset / auto               numba when importable, else numpy

`benchmarks/bench_kernels.py` times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised via env flag instead
    numba = None


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def axis_perm_numpy(amps, out, d, stride, src_digit):
    """out[..., w, ...] = amps[..., src_digit[w], ...] along the stride axis."""
    idx = np.arange(amps.size, dtype=np.int64)
    x = (idx // stride) % d
    np.take(amps, idx + (src_digit[x] - x) * stride, out=out)
    return out


def cnot_numpy(amps, out, d, stride_c, stride_t, mul_row, sub_table):
    """Permute target digit t -> t - b*c; mul_row[c] = b*c, sub_table[t, v] = t - v."""
    idx = np.arange(amps.size, dtype=np.int64)
    xc = (idx // stride_c) % d
    xt = (idx // stride_t) % d
    np.take(amps, idx + (sub_table[xt, mul_row[xc]] - xt) * stride_t, out=out)
    return out


def swap_numpy(amps, out, d, stride_a, stride_b):
    idx = np.arange(amps.size, dtype=np.int64)
    xa = (idx // stride_a) % d
    xb = (idx // stride_b) % d
    np.take(amps, idx + (xb - xa) * stride_a + (xa - xb) * stride_b, out=out)
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=False)
    def axis_perm_numba(amps, out, d, stride, src_digit):
        for i in range(amps.size):
            x = (i // stride) % d
            out[i] = amps[i + (src_digit[x] - x) * stride]
        return out

    @numba.njit(cache=False)
    def cnot_numba(amps, out, d, stride_c, stride_t, mul_row, sub_table):
        for i in range(amps.size):
            xc = (i // stride_c) % d
            xt = (i // stride_t) % d
            out[i] = amps[i + (sub_table[xt, mul_row[xc]] - xt) * stride_t]
        return out

    @numba.njit(cache=False)
    def swap_numba(amps, out, d, stride_a, stride_b):
        for i in range(amps.size):
            xa = (i // stride_a) % d
            xb = (i // stride_b) % d
            out[i] = amps[i + (xb - xa) * stride_a + (xa - xb) * stride_b]
        return out

else:
    axis_perm_numba = None
    cnot_numba = None
    swap_numba = None


def _pick_backend() -> str:
    choice = os.environ.get("QUDITGRAPH_KERNELS", "auto").lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"QUDITGRAPH_KERNELS must be auto|numba|numpy, got {choice!r}")
    if choice == "numba" and numba is None:
        raise RuntimeError("QUDITGRAPH_KERNELS=numba but numba is not installed")
    if choice == "auto":
        return "numba" if numba is not None else "numpy"
    return choice


BACKEND = _pick_backend()

if BACKEND == "numba":
    axis_perm, cnot, swap = axis_perm_numba, cnot_numba, swap_numba
else:
    axis_perm, cnot, swap = axis_perm_numpy, cnot_numpy, swap_numpy
