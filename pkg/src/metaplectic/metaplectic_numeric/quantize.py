"""Quantization: turn a phase-space symbol into an operator on signals.

The operator attached to a symbol a and a phase-space matrix A is defined by
duality against the matrix's distribution:

    < Op(a) f, g > = < a, W_A(g, f) >        for all signals f, g,

with weighted lattice inner products on both sides.  Discretely this makes
Op(a) an N x N matrix (N lattice points): writing the distribution as a
linear map D on the tensor g (x) conj(f), the duality collapses to

    Op(a)[s, t] = (signal cell weight) * (D* a)(s, t),

where D* is the adjoint of the discrete distribution map.  For the standard
Wigner matrix the adjoint of the exact doubled-argument evaluation is used
(phases pinned, so the constant symbol gives the identity); for a general
matrix the factorization pipeline's stage-by-stage adjoint is used and the
operator inherits the pipeline's global unimodular constant.
"""

from __future__ import annotations

import numpy as np

from ..symplectic_core import SymplecticMatrix, dj_factorize
from .distributions import wigner_projection
from .grid import Axis, Grid, GridFunction, partial_idft
from .operators import chirp_apply, multiplier_apply, rescale_apply

#: refuse to build dense operators beyond this many signal lattice points
MAX_OPERATOR_POINTS = 4096


def _check_doubled(a: GridFunction) -> int:
    d2 = a.grid.d
    if d2 % 2 != 0:
        raise ValueError("symbol must live on a doubled (phase-space) grid")
    return d2 // 2


def _wigner_adjoint(a: GridFunction) -> np.ndarray:
    """Adjoint of the exact doubled-argument Wigner evaluation.

    Returns the tensor (D* a) on the doubled signal grid as an ndarray.
    """
    d = a.grid.d // 2
    sig_axes = a.grid.axes[:d]
    for i in range(d):
        expected = Axis(sig_axes[i].n, sig_axes[i].dual().step / 2.0)
        if not a.grid.axes[d + i].close_to(expected):
            raise ValueError(
                "symbol grid does not match the Wigner output grid "
                "(frequency axes must sit on the half-step dual lattice)"
            )
    # undo the half-step relabeling, invert the DFT over the second slot
    relabeled = GridFunction(
        Grid(sig_axes + tuple(ax.dual() for ax in sig_axes)), a.values
    )
    y = partial_idft(relabeled, tuple(range(d, 2 * d)))
    # scatter through the pairing (x, u) -> (x + u, x - u); two index pairs
    # land on each reachable tensor entry, so accumulate
    shape = tuple(ax.n for ax in sig_axes)
    out = np.zeros(shape + shape, dtype=complex)
    sum_idx = []
    diff_idx = []
    dd = len(shape)
    for axi, n in enumerate(shape):
        idx = np.arange(n)
        jshape = [1] * (2 * dd)
        kshape = [1] * (2 * dd)
        jshape[axi] = n
        kshape[dd + axi] = n
        j = idx.reshape(jshape)
        k = idx.reshape(kshape)
        h = n // 2
        sum_idx.append(np.broadcast_to((j + k - h) % n, shape + shape))
        diff_idx.append(np.broadcast_to((j - k + h) % n, shape + shape))
    np.add.at(out, tuple(sum_idx) + tuple(diff_idx), y.values)
    return out


def _pipeline_adjoint(A: SymplecticMatrix, a: GridFunction) -> GridFunction:
    """Adjoint of the factorization pipeline on the doubled grid."""
    fact = dj_factorize(A)
    if fact.d != a.grid.d:
        raise ValueError(f"matrix acts in dimension {fact.d}, symbol lives in {a.grid.d}")
    out = chirp_apply(-fact.Q, a)
    if not np.array_equal(fact.L, np.eye(fact.d)):
        out = rescale_apply(np.linalg.inv(fact.L), out)
    out = multiplier_apply(-fact.P, out)
    if fact.J.members:
        out = partial_idft(out, tuple(fact.J.positions()))
    return out


def opA_build(a: GridFunction, A: SymplecticMatrix) -> np.ndarray:
    """Dense matrix of the operator quantizing symbol ``a`` against matrix ``A``.

    The symbol must be sampled on the distribution's output grid (for the
    Wigner matrix: signal axes first, then the half-step frequency axes).
    The returned matrix acts on signal values flattened in row-major order.
    """
    d = _check_doubled(a)
    if 2 * d != A.d:
        raise ValueError(f"matrix acts on {A.d} phase-space coordinates, symbol has {2 * d}")
    npts = 1
    for ax in a.grid.axes[:d]:
        npts *= ax.n
    if npts > MAX_OPERATOR_POINTS:
        raise ValueError(
            f"dense operator would have {npts} rows; limit is {MAX_OPERATOR_POINTS}"
        )
    if np.allclose(A.mat, wigner_projection(d).mat, atol=1e-12):
        tensor_vals = _wigner_adjoint(a)
        sig_axes = a.grid.axes[:d]
    else:
        tensor = _pipeline_adjoint(A, a)
        sig_axes = tensor.grid.axes[:d]
        for i in range(d):
            if not tensor.grid.axes[d + i].close_to(sig_axes[i]):
                raise ValueError(
                    "symbol grid is not the distribution's output grid for this matrix"
                )
        tensor_vals = tensor.values
    sig = Grid(sig_axes)
    return sig.weight * tensor_vals.reshape(npts, npts)


def opA_apply(K: np.ndarray, f: GridFunction) -> GridFunction:
    """Apply a built operator matrix to a sampled signal."""
    npts = int(np.prod(f.grid.shape))
    if K.shape != (npts, npts):
        raise ValueError(f"operator is {K.shape}, signal has {npts} points")
    return f.with_values((K @ f.values.ravel()).reshape(f.grid.shape))
