"""Exact tensor-power decompositions for representations of type A and D quivers."""

from .decompose import (
    Decomposition,
    FusionTable,
    b_n,
    beta_estimate,
    cached_fusion_table,
    fusion_product,
    fusion_table,
    krull_schmidt,
    representation_of,
    tensor_power_decomposition,
    tensor_powers,
)
from .delta import (
    PartitionSpec,
    b_n_delta,
    canonical_spec,
    chain_sets,
    delta_power_decomposition,
    delta_tensor_decomposition,
    enumerate_partitioning_morphisms,
    is_coassociative,
    validate_spec,
)
from .errors import BoundExceededError, InconsistentDecompositionError, ParseError, QuivTensorError, UnsupportedShapeError
from .formulas import DEFAULT_TWIN_BRANCH, b_n_formula, m_pair, s_set
from .quiver import (
    Arrow,
    Quiver,
    Root,
    ShapeInfo,
    detect_shape,
    enumerate_positive_roots,
    m_value,
    pointwise_product,
    type_a_quiver,
    type_d_quiver,
)
from .rep import Representation, direct_sum, hom_dimension, indecomposable_rep, pointwise_tensor

__version__ = "0.1.0"
