"""Separability tests for multipartite density matrices built from
correlation tensors of the generalized Gell-Mann (Bloch) expansion."""

from .bloch import (
    CorrelationTensor,
    TensorSet,
    aggregate_norms,
    all_tensors,
    correlation_tensor,
    matricize,
    reconstruct,
    tensor_norm_sq,
)
from .criteria import (
    CriterionReport,
    RoleLabeling,
    analyze,
    bound_for,
    build_s_matrix,
    evaluate,
    k_sep_bound,
)
from .states import (
    DensityMatrix,
    PartitionSpec,
    family,
    ghz,
    isotropic_mix,
    random_mixed,
    random_pure,
    random_separable,
    w4,
)
from .su_basis import generators

__version__ = "0.1.0"
