"""Nearly-regular sublinear expanders, nearly-spanning cycles and subdivision packings."""

__version__ = "0.1.0"

from .config import RunConfig
from .cover import Cover, CoverMember, cover_strong, cover_weak, pack_round, refining_schedule, to_robust
from .expansion import (
    ExpansionVerdict,
    LambdaParams,
    RobustParams,
    Status,
    check_lambda_expander,
    check_robust_expander,
)
from .extraction import extract_expander, sparse_cut
from .graph import Graph
from .hamilton import nearly_hamilton_cycle, nearly_hamilton_path, partition_scheme
from .subdivision import (
    Subdivision,
    chord_rich_cycle,
    cycle_partition,
    find_clique_subdivision,
    pack_f_subdivisions,
    verify_subdivision,
)
from .verify import verify_cycle, verify_path

__all__ = [
    "Cover",
    "CoverMember",
    "ExpansionVerdict",
    "Graph",
    "LambdaParams",
    "RobustParams",
    "RunConfig",
    "Status",
    "Subdivision",
    "check_lambda_expander",
    "check_robust_expander",
    "chord_rich_cycle",
    "cover_strong",
    "cover_weak",
    "cycle_partition",
    "extract_expander",
    "find_clique_subdivision",
    "nearly_hamilton_cycle",
    "nearly_hamilton_path",
    "pack_f_subdivisions",
    "pack_round",
    "partition_scheme",
    "refining_schedule",
    "sparse_cut",
    "to_robust",
    "verify_cycle",
    "verify_path",
    "verify_subdivision",
]
