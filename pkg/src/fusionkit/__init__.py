"""Permutation-group toolkit for checking, group by group, that a fusion
hypothesis on a Sylow 2-subgroup forces it to be abelian, together with the
index criterion and every intermediate claim of the argument.
"""
from .errors import (
    CorpusError,
    ElementCapExceeded,
    FusionKitError,
    NotStronglyClosed,
    PermutationError,
)
from .fusion import GroupFusionSystem, hypothesis_H, camina_herzog
from .groups import PermGroup, Subgroup, group_from_generators
from .kernels import IMPLEMENTATION as KERNELS
from .perm import Permutation, commutator, conjugate_element, element_order, parse_cycles

__version__ = "0.1.0"

__all__ = [
    "CorpusError",
    "ElementCapExceeded",
    "FusionKitError",
    "GroupFusionSystem",
    "KERNELS",
    "NotStronglyClosed",
    "PermGroup",
    "Permutation",
    "PermutationError",
    "Subgroup",
    "camina_herzog",
    "commutator",
    "conjugate_element",
    "element_order",
    "group_from_generators",
    "hypothesis_H",
    "parse_cycles",
]
