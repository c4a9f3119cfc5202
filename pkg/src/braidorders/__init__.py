"""Exact computation with left-orderings of braid groups.

Braid words are tuples of signed generator indices; every ordering is a sign
oracle mapping a braid to -1/0/+1.  Handle reduction decides the Dehornoy
ordering; ray orders compare the image of a geodesic word under the free
group action by boundary angle; combinators conjugate orders and re-order
abelian soul blocks; experiments measure agreement radii between orders on
balls.
"""

from .artin import (
    ArtinMap,
    CancellationBound,
    apply_map,
    artin_map_of,
    cancellation_bound_of,
    compose,
    image_ray,
    stream_prefix_image,
)
from .braids import (
    BallSpec,
    BraidWord,
    Permutation,
    braid,
    conjugate,
    enumerate_ball,
    format_braid,
    free_reduce_braid,
    invert,
    linking_number,
    multiply,
    parse_braid,
    permutation_of,
    random_word,
    sigma,
)
from .catalog import (
    CalibrationResult,
    calibrate_conventions,
    catalog,
    catalog_order,
    dehornoy_word,
    frozen_convention,
    generator_death_depths,
    order_for_spec,
    search_chain_words,
)
from .dehornoy import (
    DEFAULT_BUDGET,
    HandleFreeWord,
    dehornoy_cmp,
    dehornoy_sign,
    handle_reduce,
    is_trivial_braid,
)
from .errors import (
    BudgetExceededError,
    CalibrationError,
    MalformedInputError,
    SearchFailureError,
    SoulValidationError,
    StreamGrowthError,
    UndecidedComparisonError,
)
from .experiments import (
    AgreementReport,
    ConjugatesReport,
    ExtensionsReport,
    LimitProbeReport,
    agreement_radius,
    converge_conjugates_experiment,
    converge_extensions_experiment,
    find_disagreement,
    limit_probe_experiment,
    order_distance,
    small_positive_search,
)
from .freewords import (
    Custom,
    EventuallyPeriodic,
    FreeWord,
    QuadraticIrrational,
    Sturmian,
    free_word,
    parse_free_word,
    parse_infinite_word,
)
from .nt import (
    ChainReport,
    ConradWitness,
    DivergenceReport,
    GeodesicSpec,
    NTOrder,
    TotalityReport,
    act_on_geodesic,
    conrad_witness_search,
    convex_chain_report,
    divergence_depth,
    format_geodesic_spec,
    in_convex_subgroup,
    nt_cmp,
    nt_sign,
    parse_geodesic_spec,
    soul_of,
    totality_probe,
)
from .orders import (
    ConjugatedOrder,
    ConvexExtensionOrder,
    DehornoyOrder,
    OrderOracle,
    ZkIntegerSlope,
    ZkLex,
    ZkQuadraticSlope,
    conjugate_order,
    convex_extension_sign,
    order_cmp,
    soul_lex_of_base,
    zk_membership,
    zk_sign,
)
from .planar import (
    DEFAULT_DEPTH_CAP,
    EQUAL,
    GREATER,
    LESS,
    GermConvention,
    common_prefix_length,
    planar_cmp,
)

__version__ = "0.1.0"
