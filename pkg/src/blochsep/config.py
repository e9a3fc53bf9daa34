from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    ``violation`` is the margin above which a criterion counts as violated.
    ``tensor_cap`` limits the total number of correlation-tensor entries
    that :func:`blochsep.bloch.all_tensors` will allocate (10**7 covers 8 qubits).
    """

    hermitian: float = 1e-10
    trace: float = 1e-10
    psd: float = 1e-10
    imag_residue: float = 1e-10
    violation: float = 1e-8
    tensor_cap: int = 10**7


DEFAULT = Tolerances()
