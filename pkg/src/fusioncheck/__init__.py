"""fusioncheck: verification and search toolkit for the character theory of
fusion rings and finite-group class algebras."""

from .arith import (
    CategoryType,
    category_type,
    check_prop43,
    check_prop45,
    check_remark41,
    check_theorem42,
    detect_dimension_shape,
    enumerate_types,
    squarefree_split,
)
from .chartable import (
    BurnsideReport,
    CharacterTable,
    DualHypergroup,
    burnside_check,
    compute_table,
    dual_hypergroup,
)
from .errors import NumericError, PreconditionError, SizeError, StructureError
from .groups import (
    CayleyTable,
    ClassData,
    cayley_from_generators,
    cayley_table,
    character_ring,
    class_algebra_as_ring,
    class_data,
    group_ring_oracle,
    verify_harada_group,
)
from .identities import (
    CentralElement,
    SupportData,
    check_divisibility_cor31,
    check_divisibility_cor32,
    class_sum,
    harada_lhs,
    support_data,
    verify_harada,
)
from .rings import (
    BasedRing,
    DimensionData,
    GradingData,
    adjoint_subring,
    based_ring,
    fp_dims,
    invertibles,
    nilpotency_chain,
    pointed_subring,
    subring_closure,
    universal_grading,
    validate,
)

__version__ = "0.1.0"
