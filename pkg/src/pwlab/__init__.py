"""Exact Lie-theory engine for Peterson varieties and centralizer closures."""
from .rootdata import build_root_system, dominant_weights_below, longest_element, parabolic_longest_test, weyl_group
from .chevrep import (
    chevalley_basis,
    highest_weight_rep,
    dual_rep,
    cartan_projection,
    restrict_to_levi,
    exp_nilpotent_action,
    GroupWord,
)
from .principal import principal_data, centralizer_basis, h_truncation_bound, regular_element

__version__ = "0.1.0"
