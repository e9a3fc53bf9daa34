"""Dense matrix kernel: Kronecker products, partial traces, density-matrix
validation, singular values and matrix norms."""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .config import DEFAULT
from .errors import DimensionError, NumericalError


def kron(a, b):
    """Kronecker product of two matrices."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(mats):
    return reduce(np.kron, mats)


def _check_dims(rho, dims):
    rho = np.asarray(rho)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise DimensionError(f"party dimensions must be positive, got {dims}")
    side = int(np.prod(dims))
    if rho.ndim != 2 or rho.shape != (side, side):
        raise DimensionError(
            f"matrix of shape {rho.shape} does not match dims {dims} (expected {side}x{side})"
        )
    return rho, dims


def partial_trace(rho, dims, keep):
    """Reduced matrix on the parties in ``keep`` (0-based indices).

    The kept parties appear in ascending order in the result.  An empty
    ``keep`` returns the 1x1 matrix holding the full trace.
    """
    rho, dims = _check_dims(rho, dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"party indices {keep} out of range for {n} parties")
    t = rho.reshape(dims + dims)
    # einsum labels: row index of party i -> i, column index -> n+i (traced: same label)
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    red = np.einsum(t, row + col, out)
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    return red.reshape(dk, dk)


@dataclass(frozen=True)
class Validity:
    """Outcome of :func:`validate_density`.  ``reason`` is one of
    ``None``, ``"shape"``, ``"non-finite"``, ``"non-hermitian"``, ``"trace"``,
    ``"negativity"``."""

    ok: bool
    reason: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def validate_density(m, dims, tol=None):
    """Check that ``m`` is a density matrix on parties of dimensions ``dims``.

    Never raises for bad input; the failure is described in the returned
    :class:`Validity`.  ``tol`` overrides all three tolerances at once.
    """
    herm_tol = DEFAULT.hermitian if tol is None else tol
    trace_tol = DEFAULT.trace if tol is None else tol
    psd_tol = DEFAULT.psd if tol is None else tol
    try:
        m, dims = _check_dims(m, dims)
    except DimensionError as exc:
        return Validity(False, "shape", str(exc))
    if not np.all(np.isfinite(m)):
        return Validity(False, "non-finite", "matrix has NaN or Inf entries")
    herm_err = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if herm_err > herm_tol:
        return Validity(False, "non-hermitian", f"max |m - m^dagger| = {herm_err:.3e}")
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > trace_tol:
        return Validity(False, "trace", f"trace = {tr.real:.12g}{tr.imag:+.3g}j")
    eig_min = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
    if eig_min < -psd_tol:
        return Validity(False, "negativity", f"smallest eigenvalue = {eig_min:.3e}")
    return Validity(True)


def singular_values(m):
    """Singular values of a real matrix in descending order (no truncation)."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return np.zeros(0)
    if not np.all(np.isfinite(m)):
        raise NumericalError("singular_values: matrix has non-finite entries")
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"SVD did not converge for {m.shape} matrix (max |entry| = {np.max(np.abs(m)):.3e})"
        ) from exc


def trace_norm(m):
    """Sum of singular values."""
    return float(np.sum(singular_values(m)))


def frobenius_norm(m):
    return float(np.linalg.norm(np.asarray(m), "fro")) if np.asarray(m).size else 0.0
