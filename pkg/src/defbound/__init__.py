"""Definite lattices bounded by rational homology spheres, computed exactly."""

from .charvec import (
    AppWitness,
    DeltaResult,
    app_bound,
    char_norm,
    delta,
    is_characteristic,
    lemma_app_witness,
    min_char_norm,
    prime_index_rank_bound,
)
from .embedding import (
    ComplementClass,
    EmbeddingMatrix,
    complement_classes,
    embed_in_diagonal,
    embedding_index,
    enumerate_embeddings,
    find_embedding,
    prime_overlattices,
    saturation_rank,
)
from .enumeration import (
    BoundedSetQuery,
    LatticeClassSet,
    admissible_determinants,
    enumerate_bounded_set,
    enumerate_definite,
    unimodular_stable_classes,
)
from .errors import (
    BadFraction,
    BadInput,
    DefboundError,
    DegenerateSublattice,
    NonSquareRatio,
    NotDefinite,
    NotFullRank,
    NotNormal,
    NotQHS,
    ParityViolation,
    RankCapExceeded,
    SearchCapExceeded,
    SingularGram,
)
from .isometry import AutomorphismGroup, IsometryWitness, automorphism_group, is_isometric
from .lattice import (
    GramLattice,
    determinant,
    direct_sum,
    dual_gram,
    is_negative_definite,
    orthogonal_complement,
    reduce_stable,
    root_lattice,
    shortest_vectors,
)
from .seifert import (
    ObstructionReport,
    SeifertForm,
    both_definite_sufficient,
    classify_spherical,
    dihedral,
    euler_number,
    hj_evaluate,
    hj_expand,
    normalize,
    obstruction_report,
    plumbing_gram,
    reverse_orientation,
)
from .verify import VerificationRecord, verify_paper_examples

__version__ = "0.1.0"
