"""Exact combinatorics and integration for the easy orthogonal quantum groups.

Partition categories with exact Gram/Weingarten matrices and Haar moments,
row-algebra invariant states, finite group-dual analysis, and independent
oracles (finite-group enumeration, seeded Monte Carlo) that cross-check
the whole engine.
"""

__version__ = "0.1.0"

from .errors import (
    CapExceededError,
    ClassificationMismatchError,
    DomainError,
    SingularGramError,
)
from .partitions import (
    CATEGORIES,
    UNPRIMED,
    Category,
    SetPartition,
    all_partitions,
    block_removal_subpartitions,
    category,
    delta,
    enumerate_category,
    is_block_stable,
    is_noncrossing,
    join,
    kernel,
)
from .weingarten import (
    RationalMatrix,
    character_moment,
    gram_matrix,
    gram_rank,
    haar_moment,
    weingarten_matrix,
)
from .homspace import (
    MatrixClass,
    TruncatedMatrix,
    classify,
    count_truncations,
    fixed_point_sum_check,
    free_projection_witness,
    invariant_state_moment,
    magic_iff_cubic_stochastic,
    truncation_matrices,
)
from .group_dual import (
    DualAnalysis,
    DualEmbedding,
    FiniteGroup,
    analyze_embedding,
    close_generators,
    congruence_kernel,
    is_normal,
    normal_closure,
    parse_embedding_file,
)
from .oracle import (
    SampleReport,
    exact_group_average,
    mc_bistochastic_average,
    mc_orthogonal_average,
)
from .sampling import active_backend, available_backends, sample_bistochastic, sample_orthogonal

__all__ = [name for name in dir() if not name.startswith("_")]
