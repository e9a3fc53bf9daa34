"""Generalized Gell-Mann generators of su(d).

Normalization is ``tr(l_a l_b) = 2 delta_ab``, so ``d = 2`` gives the Pauli
matrices.  Ordering is fixed: symmetric family ``E_jk + E_kj`` for ``j < k``
(lexicographic), antisymmetric family ``-i(E_jk - E_kj)``, then the diagonal
family for ``l = 1 .. d-1``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    d: int
    generators: np.ndarray  # shape (d*d - 1, d, d), read-only

    def __len__(self):
        return self.generators.shape[0]

    def __getitem__(self, i):
        return self.generators[i]

    def __iter__(self):
        return iter(self.generators)

    def labels(self):
        """Short human-readable names, e.g. ``s01``, ``a01``, ``d1``."""
        d = self.d
        pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
        return (
            [f"s{j}{k}" for j, k in pairs]
            + [f"a{j}{k}" for j, k in pairs]
            + [f"d{l}" for l in range(1, d)]
        )


@lru_cache(maxsize=None)
def generators(d):
    d = int(d)
    if d < 2:
        raise DomainError(f"su(d) generators need d >= 2, got {d}")
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    out = np.zeros((d * d - 1, d, d), dtype=complex)
    i = 0
    for j, k in pairs:
        out[i, j, k] = out[i, k, j] = 1.0
        i += 1
    for j, k in pairs:
        out[i, j, k] = -1j
        out[i, k, j] = 1j
        i += 1
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        out[i] = np.diag(diag * np.sqrt(2.0 / (l * (l + 1))))
        i += 1
    out.setflags(write=False)
    return GeneratorBasis(d, out)
