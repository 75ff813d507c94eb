"""Exact finite diversities: axioms, tight spans, trees and Steiner bounds."""
from .core import (
    FiniteDiversity,
    FiniteMetric,
    GroundSet,
    PointSet,
    check_axioms,
    diameter_diversity,
    induced_metric,
    l1_diversity,
    truncate,
)
from .errors import ConvergenceError, DiversityError, DomainError, InfeasibleError, InputError, SizeError
from .lp import LinearProgram, lp_solve
from .phylo import WeightedTree, canonical_tree, four_point_check, reconstruct_tree, tree_diversity
from .steiner import (
    MetricInstance,
    Topology,
    abstract_steiner,
    diversity_steiner,
    enumerate_topologies,
    metric_steiner_exact,
    steiner_length_diversity,
    steiner_lower_bounds,
)
from .tightspan import (
    Constraint,
    SpanFunction,
    ThreePointComplex,
    delta_T,
    delta_T_from_member,
    hyperconvex_extension,
    in_P,
    in_T,
    kuratowski,
    minimize_to_tight,
    phi_cover,
    sample_tight,
    three_point_complex,
    three_point_membership,
)

__version__ = "0.1.0"

__all__ = [
    "FiniteDiversity",
    "FiniteMetric",
    "GroundSet",
    "PointSet",
    "check_axioms",
    "diameter_diversity",
    "induced_metric",
    "l1_diversity",
    "truncate",
    "ConvergenceError",
    "DiversityError",
    "DomainError",
    "InfeasibleError",
    "InputError",
    "SizeError",
    "LinearProgram",
    "lp_solve",
    "WeightedTree",
    "canonical_tree",
    "four_point_check",
    "reconstruct_tree",
    "tree_diversity",
    "MetricInstance",
    "Topology",
    "abstract_steiner",
    "diversity_steiner",
    "enumerate_topologies",
    "metric_steiner_exact",
    "steiner_length_diversity",
    "steiner_lower_bounds",
    "Constraint",
    "SpanFunction",
    "ThreePointComplex",
    "delta_T",
    "delta_T_from_member",
    "hyperconvex_extension",
    "in_P",
    "in_T",
    "kuratowski",
    "minimize_to_tight",
    "phi_cover",
    "sample_tight",
    "three_point_complex",
    "three_point_membership",
]
