"""Correlation tensors of the Bloch expansion.

For a party subset ``S`` the correlation tensor has entries
``t[i_s1, ..., i_sk] = tr(rho * lambda_{i_s1} (x) ... (x) lambda_{i_sk})`` with
identities on the parties outside ``S``.  The state is recovered as::

    rho = I/D + sum_S  1/(2^|S| * prod_{p not in S} d_p)  sum_i t_i  lambda_i^(S) (x) I

Tensor axes follow ascending party order; flattening is row-major (last
index fastest) everywhere in the package.
"""

from dataclasses import dataclass
from itertools import combinations
from math import prod

import numpy as np

from .config import DEFAULT
from .errors import DomainError, ResourceLimitError
from .numerics import partial_trace
from .states import DensityMatrix
from .su_basis import generators


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    subset: tuple
    dims: tuple
    entries: np.ndarray

    def norm_sq(self):
        return tensor_norm_sq(self)

    def vec(self):
        return self.entries.reshape(-1)


@dataclass(frozen=True, eq=False)
class TensorSet:
    """All correlation tensors of one state, keyed by ascending party tuples."""

    dims: tuple
    tensors: dict

    @property
    def n(self):
        return len(self.dims)

    def __getitem__(self, parties):
        key = tuple(sorted(parties))
        try:
            return self.tensors[key]
        except KeyError:
            raise DomainError(f"no correlation tensor for parties {key}") from None

    def is_complete(self):
        return len(self.tensors) == 2**self.n - 1


@dataclass(frozen=True)
class NormAggregate:
    m: int
    value: float


def _normalize_subset(subset, n):
    s = tuple(sorted(set(int(p) for p in subset)))
    if not s or len(s) != len(list(subset)) or s[0] < 0 or s[-1] >= n:
        raise DomainError(f"invalid party subset {tuple(subset)} for {n} parties")
    return s


def _real_part(t, tol):
    resid = float(np.max(np.abs(t.imag))) if t.size else 0.0
    if resid > tol:
        raise DomainError(
            f"correlation tensor has imaginary residue {resid:.3e}; input is not Hermitian"
        )
    return np.ascontiguousarray(t.real)


def correlation_tensor(rho, subset, tol=DEFAULT.imag_residue):
    """Correlation tensor on ``subset`` (0-based parties), via the reduced state."""
    subset = _normalize_subset(subset, rho.n)
    dims = tuple(rho.dims[p] for p in subset)
    k = len(subset)
    red = partial_trace(rho.matrix, rho.dims, subset).reshape(dims + dims)
    # t[i..] = sum_{a,b} red[a.., b..] prod_s lam_s[i_s, b_s, a_s]
    operands = [red, list(range(2 * k))]
    for s, d in enumerate(dims):
        operands += [generators(d).generators, [2 * k + s, k + s, s]]
    t = np.einsum(*operands, list(range(2 * k, 3 * k)), optimize="greedy")
    return CorrelationTensor(subset, dims, _real_part(t, tol))


def _extended_tensor(rho):
    """Expectation values of every product of {I, lambda_1, ...} per party.

    Index 0 on an axis means identity on that party.
    """
    dims, n = rho.dims, rho.n
    t = rho.matrix.reshape(dims + dims)
    for p, d in enumerate(dims):
        ops = np.concatenate([np.eye(d)[None], generators(d).generators])
        # remaining axes: a_p..a_{n-1}, b_p..b_{n-1}, i_0..i_{p-1}
        t = np.tensordot(t, ops, axes=([0, n - p], [2, 1]))
    return t


def tensor_entry_count(dims):
    """Number of reals in a complete tensor set: prod(d^2) - 1."""
    return prod(d * d for d in dims) - 1


def all_tensors(rho, cap=None, tol=DEFAULT.imag_residue):
    """Every non-empty subset's correlation tensor, from one contraction pass."""
    cap = DEFAULT.tensor_cap if cap is None else cap
    need = tensor_entry_count(rho.dims)
    if need > cap:
        raise ResourceLimitError(
            f"complete tensor set for dims {rho.dims} needs {need} entries, cap is {cap}"
        )
    ext = _real_part(_extended_tensor(rho), tol)
    n = rho.n
    tensors = {}
    for k in range(1, n + 1):
        for s in combinations(range(n), k):
            idx = tuple(slice(1, None) if p in s else 0 for p in range(n))
            tensors[s] = CorrelationTensor(
                s, tuple(rho.dims[p] for p in s), np.ascontiguousarray(ext[idx])
            )
    return TensorSet(rho.dims, tensors)


def tensor_norm_sq(t):
    return float(np.sum(t.entries**2))


def aggregate_norms(ts, m):
    """Sum of squared tensor norms over all subsets of size ``m``."""
    if not 1 <= m <= ts.n:
        raise DomainError(f"body count must be in 1..{ts.n}, got {m}")
    total = sum(tensor_norm_sq(ts[s]) for s in combinations(range(ts.n), m))
    return NormAggregate(m, float(total))


def embed(op, dims, subset):
    """Extend an operator on ``subset`` by identities on the other parties."""
    n = len(dims)
    rest = [p for p in range(n) if p not in subset]
    order = list(subset) + rest
    d_rest = prod(dims[p] for p in rest)
    full = np.kron(op, np.eye(d_rest))
    shape = [dims[p] for p in order]
    t = full.reshape(shape + shape)
    inv = list(np.argsort(order))
    t = t.transpose(inv + [n + i for i in inv])
    side = prod(dims)
    return t.reshape(side, side)


def reconstruct(ts):
    """Inverse of :func:`all_tensors`."""
    if not ts.is_complete():
        raise DomainError(
            f"tensor set has {len(ts.tensors)} subsets, need {2**ts.n - 1} to reconstruct"
        )
    dims = ts.dims
    total = prod(dims)
    rho = np.eye(total, dtype=complex) / total
    for s, t in ts.tensors.items():
        k = len(s)
        operands = [t.entries, list(range(k))]
        for j, p in enumerate(s):
            operands += [generators(dims[p]).generators, [j, k + j, 2 * k + j]]
        op = np.einsum(
            *operands, list(range(k, 2 * k)) + list(range(2 * k, 3 * k)), optimize="greedy"
        )
        d_s = prod(dims[p] for p in s)
        coeff = 1.0 / (2**k * (total // d_s))
        rho += coeff * embed(op.reshape(d_s, d_s), dims, s)
    return DensityMatrix(rho, dims)


def matricize(t, row_parties, col_parties):
    """Reshape a tensor into a matrix with rows over ``row_parties`` and
    columns over ``col_parties``, each flattened in ascending party order.

    Empty ``row_parties`` gives a single row (the vectorization).
    """
    rows = tuple(sorted(row_parties))
    cols = tuple(sorted(col_parties))
    if set(rows) & set(cols) or tuple(sorted(rows + cols)) != t.subset:
        raise DomainError(
            f"rows {rows} and cols {cols} must partition the tensor's parties {t.subset}"
        )
    pos = {p: i for i, p in enumerate(t.subset)}
    axes = [pos[p] for p in rows] + [pos[p] for p in cols]
    n_rows = prod(t.dims[pos[p]] ** 2 - 1 for p in rows)
    return t.entries.transpose(axes).reshape(n_rows, -1)
