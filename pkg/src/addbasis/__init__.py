"""Desk-scale experiments with additive bases of the naturals.

Structured integer sets are described by a small expression DSL, windowed
exactly onto ``[0, N]`` as big-integer bitsets, and combined with a
bit-parallel shift-OR sumset kernel.  On top sit counting-function density
sequences, certified order lower bounds, and finite-stability probes.
"""

from .analysis import (
    DensityReport,
    DensityRow,
    HypothesisReport,
    ProbeThresholds,
    SubseqSpec,
    counting,
    density_sequence,
    hypothesis_probe,
    merge_density_reports,
    parse_subseq,
    window_extrema,
)
from .bitset import PrefixBitset, full_mask, iter_bits
from .order import (
    OrderReport,
    StabilityReport,
    SweepConfig,
    SweepReport,
    VerificationError,
    order_bounds,
    random_stability_sweep,
    stability_probe,
)
from .setexpr import (
    COUNTEREXAMPLE,
    CUBES,
    SQUARES,
    Augment,
    BlockFamily,
    BoundCeilingError,
    Explicit,
    FamilyBlock,
    Interval,
    ParseError,
    Powers,
    SemanticError,
    SetExpr,
    Union,
    contains,
    family_block,
    family_blocks,
    materialize,
    parse_set_expr,
    to_text,
)
from .sumset import (
    SATURATION_LIMIT,
    SumsetResult,
    WitnessList,
    complement_witnesses,
    iterate_sumset,
    pair_sumset,
    pairsum_contains,
    representation_count,
)
from .verify import VerifyOutcome, verify_counterexample

__version__ = "0.1.0"

__all__ = [
    "Augment",
    "BlockFamily",
    "BoundCeilingError",
    "COUNTEREXAMPLE",
    "CUBES",
    "DensityReport",
    "DensityRow",
    "Explicit",
    "FamilyBlock",
    "HypothesisReport",
    "Interval",
    "OrderReport",
    "ParseError",
    "Powers",
    "PrefixBitset",
    "ProbeThresholds",
    "SATURATION_LIMIT",
    "SQUARES",
    "SemanticError",
    "SetExpr",
    "StabilityReport",
    "SubseqSpec",
    "SumsetResult",
    "SweepConfig",
    "SweepReport",
    "Union",
    "VerificationError",
    "VerifyOutcome",
    "WitnessList",
    "complement_witnesses",
    "contains",
    "counting",
    "density_sequence",
    "family_block",
    "family_blocks",
    "full_mask",
    "hypothesis_probe",
    "iter_bits",
    "iterate_sumset",
    "materialize",
    "merge_density_reports",
    "order_bounds",
    "pair_sumset",
    "pairsum_contains",
    "parse_set_expr",
    "parse_subseq",
    "random_stability_sweep",
    "representation_count",
    "stability_probe",
    "to_text",
    "verify_counterexample",
    "window_extrema",
]
