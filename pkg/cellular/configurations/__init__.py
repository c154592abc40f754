"""
Configurations of pairs of dihedral structures: canonical classes,
convergence, stable partitions, duality and products.
"""
from cellular.configurations.models import (
    ConfigClass,
    ConfigurationError,
    DihedralStructure,
    HalfInt,
    Perm,
    StablePartition,
)
from cellular.configurations.dihedral import (
    canonical_config,
    convergence_witness,
    dual,
    enumerate_convergent,
    is_convergent,
    is_dinner_valid,
    is_self_dual,
    orbit,
    pi_even,
    pi_even_perm,
    pi_odd,
    pi_odd_perm,
)
from cellular.configurations.divisors import (
    all_stable_partitions,
    divisor_counts,
    finite_distance_divisors,
    indicator_ID,
    indicator_sum,
    infinite_divisor_count,
    ord_f,
    ord_omega,
)
from cellular.configurations.products import Product, ProductError, config_of_pair, is_multipliable, product
from cellular.configurations.io import config_record, dump_configs, load_configs

__all__ = [
    "ConfigClass",
    "ConfigurationError",
    "DihedralStructure",
    "HalfInt",
    "Perm",
    "StablePartition",
    "canonical_config",
    "convergence_witness",
    "dual",
    "enumerate_convergent",
    "is_convergent",
    "is_dinner_valid",
    "is_self_dual",
    "orbit",
    "pi_even",
    "pi_even_perm",
    "pi_odd",
    "pi_odd_perm",
    "all_stable_partitions",
    "divisor_counts",
    "finite_distance_divisors",
    "indicator_ID",
    "indicator_sum",
    "infinite_divisor_count",
    "ord_f",
    "ord_omega",
    "Product",
    "ProductError",
    "config_of_pair",
    "is_multipliable",
    "product",
    "config_record",
    "dump_configs",
    "load_configs",
]
