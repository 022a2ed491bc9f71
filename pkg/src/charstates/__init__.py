"""Generators and checks for states with equal formation and assistance."""
from .gmono import (
    GMonoSpec,
    gmono_decomposition,
    gmono_expected_average,
    gmono_state,
    random_gmono_spec,
    random_weights,
)
from .nilpotent import NilpotentSubspace, gerstenhaber_bound, is_nilpotent, nilpotent_subspace
from .wclass import (
    ProductSplit,
    product_split_check,
    random_w_class,
    sample_in_support,
    support_leakage,
    w_class_state,
)

__all__ = [
    'GMonoSpec',
    'NilpotentSubspace',
    'ProductSplit',
    'gerstenhaber_bound',
    'gmono_decomposition',
    'gmono_expected_average',
    'gmono_state',
    'is_nilpotent',
    'nilpotent_subspace',
    'product_split_check',
    'random_gmono_spec',
    'random_w_class',
    'random_weights',
    'sample_in_support',
    'support_leakage',
    'w_class_state',
]
