"""Sampled operator stages and the factorization-driven pipeline.

Every symplectic matrix S projects (two-to-one) from an operator; given the
generator factorization S = V_Q . D_L . V_P^T . Pi_J, the operator is

    (chirp by Q) o (rescale by L) o (frequency multiplier by P) o (partial FT on J),

up to one global unimodular constant.  The stages below realize each factor
on sampled functions:

* ``chirp_apply``      — pointwise multiplication by exp(i pi x . Q x);
* ``partial_ft``       — centered DFT on a subset of axes (exact quadrature);
* ``multiplier_apply`` — full DFT, multiply by exp(-i pi xi . P xi), inverse
                         DFT; singular P needs no special handling;
* ``rescale_apply``    — |det L|^{1/2} f(L x): exact index moves for signed
                         permutations, FFT phase ramps for shears, dense
                         trigonometric synthesis for per-axis scalings,
                         composed through a pivoted triangular factorization;
* ``tf_shift``         — time-frequency shift with trigonometric
                         interpolation for off-lattice translations.

``apply_metaplectic`` chains the stages; ``free_apply_direct`` evaluates the
one-integral kernel form available when the upper-right block is invertible,
as an independent reference; ``gaussian_apply`` runs the same factorization
through the closed-form Gaussian-chirp rules.
"""

from __future__ import annotations

import math

import numpy as np

from ..symplectic_core import (
    DJFactorization,
    IndexSet,
    SymplecticMatrix,
    dj_factorize,
    is_free,
)
from .gaussian import GaussianChirp
from .grid import Grid, GridFunction, full_dft, full_idft, partial_dft, partial_idft

#: dense per-axis synthesis is O(n^2) per line; keep axes at desk scale
MAX_DENSE_AXIS = 4096


def _quadratic_phase(grid: Grid, Q: np.ndarray, sign: float = 1.0) -> np.ndarray:
    """exp(sign * i pi x . Q x) evaluated on the grid."""
    mesh = grid.meshgrid()
    quad = np.zeros(grid.shape, dtype=float)
    for i in range(grid.d):
        for j in range(grid.d):
            if Q[i, j] != 0.0:
                quad = quad + Q[i, j] * mesh[i] * mesh[j]
    return np.exp(sign * 1j * math.pi * quad)


def _as_param(Q, d: int) -> np.ndarray:
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    if Q.shape != (d, d):
        raise ValueError(f"parameter must be {d} x {d}, got {Q.shape}")
    return Q


def chirp_apply(Q, f: GridFunction) -> GridFunction:
    """Multiply samples by the quadratic phase exp(i pi x . Q x)."""
    Q = _as_param(Q, f.grid.d)
    if not np.any(Q):
        return f
    return f.with_values(f.values * _quadratic_phase(f.grid, Q))


def partial_ft(f: GridFunction, J: IndexSet) -> GridFunction:
    """Centered Fourier transform in the coordinates indexed by J (1-based)."""
    if J.d != f.grid.d:
        raise ValueError(f"index set lives in dimension {J.d}, grid in {f.grid.d}")
    if not J.members:
        return f
    return partial_dft(f, tuple(J.positions()))


def multiplier_apply(P, f: GridFunction) -> GridFunction:
    """Frequency-side quadratic multiplier exp(-i pi xi . P xi).

    P may be singular or zero; the operation is a bounded multiplier either
    way.  The function returns on its original grid.
    """
    P = _as_param(P, f.grid.d)
    if not np.any(P):
        return f
    spec = full_dft(f)
    spec = spec.with_values(spec.values * _quadratic_phase(spec.grid, P, sign=-1.0))
    return full_idft(spec)


# -- rescaling -------------------------------------------------------------


def _axis_reverse(values: np.ndarray, axis: int) -> np.ndarray:
    """Exact samples of f(-x) along one centered axis: index k -> (n - k) mod n."""
    n = values.shape[axis]
    idx = (-np.arange(n)) % n
    return np.take(values, idx, axis=axis)


def _axis_scale(f: GridFunction, axis: int, a: float) -> GridFunction:
    """|a|^{1/2} f(a x) along one axis by dense trigonometric synthesis."""
    ax = f.grid.axes[axis]
    if ax.n > MAX_DENSE_AXIS:
        raise ValueError(
            f"axis rescaling needs dense synthesis; axis size {ax.n} exceeds {MAX_DENSE_AXIS}"
        )
    if a == 1.0:
        return f
    if a == -1.0:
        return f.with_values(_axis_reverse(f.values, axis))
    spec = partial_dft(f, (axis,))
    xi = spec.grid.axes[axis].points()
    y = a * ax.points()
    kernel = np.exp(2j * math.pi * np.outer(y, xi)) * spec.grid.axes[axis].step
    vals = np.moveaxis(spec.values, axis, -1)
    vals = vals @ kernel.T
    vals = np.moveaxis(vals, -1, axis)
    return f.with_values(math.sqrt(abs(a)) * vals)


def _axis_shear(f: GridFunction, axis: int, coeffs: dict[int, float]) -> GridFunction:
    """Samples of f with x_axis replaced by x_axis + sum_j coeffs[j] x_j.

    Translation along one axis by an amount depending on the other
    coordinates, realized as a phase ramp on the spectrum (f(x + s) has
    spectrum exp(2 pi i xi s) f^(xi)); spectrally exact for decaying data.
    """
    if not coeffs:
        return f
    spec = partial_dft(f, (axis,))
    mesh = spec.grid.meshgrid()
    shift = np.zeros(spec.grid.shape, dtype=float)
    for j, c in coeffs.items():
        shift = shift + c * mesh[j]
    ramp = np.exp(2j * math.pi * mesh[axis] * shift)
    spec = spec.with_values(spec.values * ramp)
    return partial_idft(spec, (axis,))


def _pivoted_lu(L: np.ndarray) -> tuple[list[int], np.ndarray, np.ndarray, np.ndarray]:
    """Row-pivoted Doolittle factorization: L[perm] = Lo @ diag(dvec) @ Up.

    Lo is unit lower triangular, Up unit upper triangular.  Returns
    (perm, Lo, dvec, Up) with perm as a list: row i of the permuted matrix is
    row perm[i] of L.
    """
    d = L.shape[0]
    a = L.copy()
    perm = list(range(d))
    for k in range(d):
        pivot = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[pivot, k]) == 0.0:
            raise ValueError("rescaling matrix must be invertible")
        if pivot != k:
            a[[k, pivot]] = a[[pivot, k]]
            perm[k], perm[pivot] = perm[pivot], perm[k]
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    lo = np.tril(a, -1) + np.eye(d)
    dvec = np.diag(a).copy()
    up = np.triu(a, 1) / dvec[:, None] + np.eye(d)
    return perm, lo, dvec, up


def rescale_apply(L, f: GridFunction) -> GridFunction:
    """|det L|^{1/2} f(L x) for real invertible L, on the function's own grid.

    The factorization L = Perm . Lo . diag . Up (row-pivoted) turns the
    substitution into a sequence of exact stages: composition obeys
    T_{M1 M2} = T_{M2} o T_{M1}, so the permutation acts first, then the
    lower shears, the per-axis scalings, and the upper shears.
    """
    d = f.grid.d
    L = _as_param(L, d)
    if np.array_equal(L, np.eye(d)):
        return f
    perm, lo, dvec, up = _pivoted_lu(L)

    # permutation stage first: with L = P^T Lo diag Up the substitution
    # g(x) = f(P^T x) is an axis transpose of the samples by the inverse
    # permutation
    if perm != list(range(d)):
        if not all(f.grid.axes[p].close_to(f.grid.axes[i]) for i, p in enumerate(perm)):
            raise ValueError("axis permutation requires matching axes")
        inv_perm = [0] * d
        for i, p in enumerate(perm):
            inv_perm[p] = i
        out = f.with_values(np.transpose(f.values, inv_perm))
    else:
        out = f

    # lower shears read only already-final coordinates when applied in
    # increasing order; upper shears in decreasing order
    for i in range(d):
        coeffs = {j: float(lo[i, j]) for j in range(i) if lo[i, j] != 0.0}
        out = _axis_shear(out, i, coeffs)
    for i in range(d):
        out = _axis_scale(out, i, float(dvec[i]))
    for i in reversed(range(d)):
        coeffs = {j: float(up[i, j]) for j in range(i + 1, d) if up[i, j] != 0.0}
        out = _axis_shear(out, i, coeffs)
    return out


# -- shifts and the pipeline -------------------------------------------------


def tf_shift(f: GridFunction, x0, xi0, tau: float = 0.0) -> GridFunction:
    """Time-frequency shift e^{2 pi i tau} e^{-i pi xi0.x0} e^{2 pi i xi0.t} f(t - x0).

    The translation uses trigonometric interpolation, so x0 need not lie on
    the lattice; lattice translations come out exact.
    """
    d = f.grid.d
    x0 = np.broadcast_to(np.asarray(x0, dtype=float), (d,))
    xi0 = np.broadcast_to(np.asarray(xi0, dtype=float), (d,))
    out = f
    if np.any(x0):
        spec = full_dft(out)
        mesh = spec.grid.meshgrid()
        phase = np.zeros(spec.grid.shape, dtype=float)
        for i in range(d):
            phase = phase + mesh[i] * x0[i]
        spec = spec.with_values(spec.values * np.exp(-2j * math.pi * phase))
        out = full_idft(spec)
    if np.any(xi0):
        mesh = out.grid.meshgrid()
        phase = np.zeros(out.grid.shape, dtype=float)
        for i in range(d):
            phase = phase + mesh[i] * xi0[i]
        out = out.with_values(out.values * np.exp(2j * math.pi * phase))
    constant = np.exp(2j * math.pi * tau) * np.exp(-1j * math.pi * float(xi0 @ x0))
    return out.with_values(out.values * constant)


def apply_metaplectic(S, f: GridFunction, tol: float | None = None) -> GridFunction:
    """Apply the operator projecting to S (a matrix or a prepared factorization).

    Stage order is partial FT, frequency multiplier, rescaling, chirp —
    matching the factor order V_Q . D_L . V_P^T . Pi_J read right to left.
    The result equals the operator's true action up to one global unimodular
    constant shared by the whole grid.
    """
    fact = S if isinstance(S, DJFactorization) else dj_factorize(S, tol)
    if fact.d != f.grid.d:
        raise ValueError(f"matrix acts in dimension {fact.d}, function lives in {f.grid.d}")
    out = partial_ft(f, fact.J)
    out = multiplier_apply(fact.P, out)
    if not np.array_equal(fact.L, np.eye(fact.d)):
        out = rescale_apply(fact.L, out)
    out = chirp_apply(fact.Q, out)
    return out


def free_apply_direct(S: SymplecticMatrix, f: GridFunction, chunk: int = 1024) -> GridFunction:
    """Direct quadrature of the single-integral kernel for invertible B:

        (S f)(x) = |det B|^(-1/2) exp(i pi x . D B^{-1} x)
                   * int exp(-2 pi i (B^{-1} x) . t) exp(i pi t . B^{-1} A t) f(t) dt.

    O(N^2) in the number of lattice points; independent of the staged
    pipeline, and used to cross-check it.
    """
    if not is_free(S):
        raise ValueError("direct kernel form requires an invertible upper-right block")
    d = f.grid.d
    if S.d != d:
        raise ValueError(f"matrix acts in dimension {S.d}, function lives in {f.grid.d}")
    npts = int(np.prod(f.grid.shape))
    if npts > MAX_DENSE_AXIS * 4:
        raise ValueError(f"direct kernel quadrature is dense; {npts} points is too many")

    binv = np.linalg.inv(S.B)
    dbinv = S.D @ binv
    binva = binv @ S.A

    pts = f.grid.coords().reshape(d, npts).T  # (N, d)
    fvals = f.values.ravel()
    inner_quad = np.einsum("ni,ij,nj->n", pts, binva, pts)
    weights = np.exp(1j * math.pi * inner_quad) * fvals * f.grid.weight

    out = np.empty(npts, dtype=complex)
    bx = pts @ binv.T  # (N, d): B^{-1} x for each output point
    for start in range(0, npts, chunk):
        stop = min(start + chunk, npts)
        phase = bx[start:stop] @ pts.T  # (chunk, N)
        out[start:stop] = np.exp(-2j * math.pi * phase) @ weights
    out_quad = np.einsum("ni,ij,nj->n", pts, dbinv, pts)
    out *= np.exp(1j * math.pi * out_quad) / math.sqrt(abs(np.linalg.det(S.B)))
    return f.with_values(out.reshape(f.grid.shape))


def gaussian_apply(S, f: GaussianChirp, tol: float | None = None) -> GaussianChirp:
    """Run the factorization of S through the closed-form Gaussian-chirp rules."""
    fact = S if isinstance(S, DJFactorization) else dj_factorize(S, tol)
    if fact.d != f.d:
        raise ValueError(f"matrix acts in dimension {fact.d}, chirp lives in {f.d}")
    out = f.partial_ft(tuple(fact.J.positions()))
    if np.any(fact.P):
        out = out.multiplier(fact.P)
    if not np.array_equal(fact.L, np.eye(fact.d)):
        out = out.rescale(fact.L)
    if np.any(fact.Q):
        out = out.chirp(fact.Q)
    return out
