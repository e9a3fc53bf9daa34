"""Density matrices, partitions, example families and random samplers."""

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import DimensionError, DomainError
from .numerics import validate_density


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A density matrix together with its party dimensions.

    The constructor does not validate; use :meth:`checked` for untrusted
    input.
    """

    matrix: np.ndarray
    dims: tuple

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        side = prod(dims)
        if m.shape != (side, side):
            raise DimensionError(f"matrix shape {m.shape} does not match dims {dims}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def checked(cls, matrix, dims, tol=None):
        v = validate_density(matrix, dims, tol)
        if not v:
            raise DomainError(f"invalid density matrix ({v.reason}): {v.detail}")
        return cls(matrix, dims)

    @classmethod
    def from_ket(cls, psi, dims):
        psi = np.asarray(psi, dtype=complex).ravel()
        return cls(np.outer(psi, psi.conj()), dims)

    @property
    def n(self):
        return len(self.dims)

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True)
class PartitionSpec:
    """Disjoint blocks of 0-based party indices covering ``range(n)``.

    Blocks are stored sorted (each block ascending, blocks by first member),
    so equal partitions compare equal.
    """

    blocks: tuple

    def __post_init__(self):
        blocks = [tuple(sorted(int(p) for p in b)) for b in self.blocks]
        if any(len(b) == 0 for b in blocks):
            raise DomainError("partition blocks must be non-empty")
        flat = [p for b in blocks for p in b]
        if len(set(flat)) != len(flat):
            raise DomainError(f"partition blocks overlap: {blocks}")
        if sorted(flat) != list(range(len(flat))):
            raise DomainError(f"partition must cover parties 0..{len(flat) - 1}: {blocks}")
        object.__setattr__(self, "blocks", tuple(sorted(blocks)))

    @property
    def n(self):
        return sum(len(b) for b in self.blocks)

    @property
    def k(self):
        return len(self.blocks)

    def sizes(self):
        return tuple(sorted(len(b) for b in self.blocks))

    def block_of(self, party):
        for b in self.blocks:
            if party in b:
                return b
        raise DomainError(f"party {party} not in partition")

    def is_refinement_of(self, other):
        """True if every block of ``self`` lies inside a block of ``other``."""
        return all(any(set(b) <= set(c) for c in other.blocks) for b in self.blocks)

    def label(self):
        """1-based compact label, e.g. ``1|23``; multi-digit parties use commas."""
        sep = "," if self.n > 9 else ""
        return "|".join(sep.join(str(p + 1) for p in b) for b in self.blocks)

    @classmethod
    def parse(cls, text, n=None):
        """Parse ``"1|23"`` or ``"1|2,3"`` (1-based) into a partition."""
        blocks = []
        for part in text.strip().split("|"):
            part = part.strip()
            if not part:
                raise DomainError(f"empty block in partition {text!r}")
            items = part.split(",") if "," in part else list(part)
            try:
                blocks.append([int(s) - 1 for s in items])
            except ValueError:
                raise DomainError(f"cannot parse partition {text!r}") from None
        spec = cls(tuple(blocks))
        if n is not None and spec.n != n:
            raise DomainError(f"partition {text!r} covers {spec.n} parties, expected {n}")
        return spec


def set_partitions(n, min_blocks=2):
    """All set partitions of ``range(n)`` with at least ``min_blocks`` blocks."""

    def rec(i, blocks):
        if i == n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    out = [PartitionSpec(tuple(bl)) for bl in rec(0, []) if len(bl) >= min_blocks]
    return sorted(out, key=lambda p: (p.k, p.blocks))


def _basis_ket(bits):
    psi = np.zeros(2 ** len(bits), dtype=complex)
    psi[int("".join(map(str, bits)), 2)] = 1.0
    return psi


def ghz(n):
    """Projector onto ``(|0..0> + |1..1>)/sqrt(2)`` on ``n`` qubits."""
    if n < 2:
        raise DomainError(f"ghz needs n >= 2, got {n}")
    psi = (_basis_ket([0] * n) + _basis_ket([1] * n)) / np.sqrt(2)
    return DensityMatrix.from_ket(psi, (2,) * n)


def w4():
    """Four-qubit W state ``(|0001> + |0010> + |0100> + |1000>)/2``."""
    psi = sum(_basis_ket([int(i == j) for i in range(4)]) for j in range(4)) / 2
    return DensityMatrix.from_ket(psi, (2,) * 4)


def isotropic_mix(psi, p):
    """``p * psi + (1 - p) * I / D``.

    ``psi`` must be pure.  Note the two mixing conventions in circulation:
    a family written as ``x I/D + (1-x) psi`` corresponds to ``p = 1 - x``.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"pure-state weight must lie in [0, 1], got {p}")
    if abs(psi.purity() - 1.0) > 1e-10:
        raise DomainError(f"isotropic_mix needs a pure state, purity = {psi.purity():.12g}")
    dim = psi.matrix.shape[0]
    return DensityMatrix(p * psi.matrix + (1.0 - p) * np.eye(dim) / dim, psi.dims)


FAMILIES = {
    "ghz3": lambda: ghz(3),
    "ghz4": lambda: ghz(4),
    "ghz5": lambda: ghz(5),
    "w4": w4,
}


def family(name, p=1.0):
    try:
        pure = FAMILIES[name]()
    except KeyError:
        raise DomainError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return isotropic_mix(pure, p)


def rng_for(seed):
    """The package-wide seeded generator (PCG64)."""
    return np.random.default_rng(seed)


def haar_ket(dim, rng):
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def random_pure(dims, seed):
    rng = rng_for(seed)
    dims = tuple(int(d) for d in dims)
    return DensityMatrix.from_ket(haar_ket(prod(dims), rng), dims)


def _permute_to_party_order(op, dims, order):
    """``op`` acts on parties listed in ``order``; return it in 0..n-1 order."""
    n = len(dims)
    shape = [dims[p] for p in order]
    t = op.reshape(shape + shape)
    inv = np.argsort(order)
    t = t.transpose(list(inv) + [n + i for i in inv])
    side = prod(dims)
    return t.reshape(side, side)


def random_separable(dims, partition, terms, seed):
    """Convex mixture of ``terms`` block-product pure states.

    Each block gets an independent Haar-random pure state; mixture weights
    are uniform on the simplex (normalized exponentials).
    """
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    dims = tuple(int(d) for d in dims)
    if partition.n != len(dims):
        raise DomainError(f"partition covers {partition.n} parties, dims has {len(dims)}")
    rng = rng_for(seed)
    weights = rng.exponential(size=terms)
    weights /= weights.sum()
    order = [p for b in partition.blocks for p in b]
    side = prod(dims)
    rho = np.zeros((side, side), dtype=complex)
    for w in weights:
        ket = np.ones(1, dtype=complex)
        for b in partition.blocks:
            ket = np.kron(ket, haar_ket(prod(dims[p] for p in b), rng))
        rho += w * np.outer(ket, ket.conj())
    return DensityMatrix(_permute_to_party_order(rho, dims, order), dims)


def random_mixed(dims, seed, rank=None):
    """Random full-or-given-rank mixed state (Ginibre / Hilbert-Schmidt style)."""
    rng = rng_for(seed)
    dims = tuple(int(d) for d in dims)
    side = prod(dims)
    rank = side if rank is None else rank
    g = rng.standard_normal((side, rank)) + 1j * rng.standard_normal((side, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, dims)

