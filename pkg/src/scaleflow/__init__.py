"""Max-flow, min-cut and Gomory-Hu tree toolkit tuned for scale-free networks."""

from .dinitz import Dinitz
from .dinitz_opt import DinitzOpt, dinitz_bi, dinitz_reset, dinitz_stamp
from .errors import (
    ContractViolation,
    FlowInputError,
    GenerationError,
    GomoryHuError,
    ParseError,
    SamplingError,
)
from .gomory_hu import CutOracle, GomoryHuTree, gusfield, tree_min_cut, validate
from .network import FlowNetwork, check_flow, cut_capacity
from .push_relabel import PushRelabel
from .results import CutResult, FlowResult, SearchSpaceStats

__all__ = [
    "ContractViolation", "CutOracle", "CutResult", "Dinitz", "DinitzOpt", "FlowInputError", "FlowNetwork",
    "FlowResult", "GenerationError", "GomoryHuError", "GomoryHuTree", "ParseError", "PushRelabel",
    "SamplingError", "SearchSpaceStats", "check_flow", "cut_capacity", "dinitz_bi", "dinitz_reset",
    "dinitz_stamp", "gusfield", "tree_min_cut", "validate",
]
