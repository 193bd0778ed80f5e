"""pcgkit: exact machinery for pairwise compatibility graphs.

Graphs realized as leaves of edge-weighted trees under interval
constraints on path distances, together with the multi-interval,
edge-union (OR), and edge-intersection (AND) variants: construction,
evaluation, transforms, covers, certificates, and an exhaustive
recognizer used as ground truth.
"""

from .graphs import SimpleGraph
from .representations import (Interval, Representation, Variant, evaluate,
                              pcg, lpg, mlpg, multi, or_pcg, and_pcg)
from .trees import WeightedTree, longest_pair_holds

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "Representation",
    "SimpleGraph",
    "Variant",
    "WeightedTree",
    "and_pcg",
    "evaluate",
    "longest_pair_holds",
    "lpg",
    "mlpg",
    "multi",
    "or_pcg",
    "pcg",
]
