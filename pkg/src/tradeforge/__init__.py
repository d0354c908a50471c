"""Construction and exact verification of (2,3,v)-halvings of complete designs."""
from .builders import (
    SearchCapExceeded,
    SearchConfig,
    TradeDecomposition,
    ak_halving,
    ak_run,
    eulerian_circuit,
    hill_climb_partition,
    partition_halving,
    structured_partition,
    sum_decomposition,
    v10_decomposition,
    v10_halving,
)
from .combinatorics import Labelling, binomial, default_labelling, rank_lex, unrank_lex
from .inclusion import (
    SignedCollection,
    apply_W,
    foundation,
    halving_admissible,
    is_design,
    is_halving,
    is_simple,
    is_trade,
    legs,
    volume,
)
from .sts import STS7, STS9, TripleSystem, sts_generate, verify_sts
from .trades import ClosedWalk, ak_companion, cycle_trade, minimal_trade, v10_trade

__version__ = "0.1.0"
