"""Two-parameter non-extensive entropies and polyadic synergy for discrete
distributions of statistically independent subsystems."""

from .classic_info import (
    InfoResult,
    interaction_information,
    multi_information,
    mutual_information,
)
from .composition import ExpansionReport, audit_expansions, dyadic_expansion, triadic_expansion
from .distribution import (
    FactoredSystem,
    JointTable,
    Pmf,
    independence_defect,
    marginalize,
    materialize,
    validate_pmf,
)
from .entropy import (
    EntropyParams,
    entropy_bgs,
    entropy_generalized,
    entropy_joint_factored,
    entropy_joint_table,
    entropy_tsallis,
    power_sum,
)
from .errors import *  # noqa: F401,F403
from .synergy import (
    SynergyReport,
    classify,
    dyadic_synergy_expanded,
    polyadic_synergy,
    triadic_synergy_expanded,
    tsallis_dyadic_synergy,
    tsallis_triadic_synergy,
)

__version__ = "0.1.0"
