"""Epsilon-subdifferential, normal and coderivative calculus."""

from nearly_convex.calculus.coderivative import (
    IntersectionCheck,
    IntersectionWitness,
    coderiv_intersection_check,
    coderiv_sum_decompose,
    ecoderiv_membership,
)
from nearly_convex.calculus.graphs import graph_intersection, graph_sum
from nearly_convex.calculus.normals import (
    enormal2_mask,
    enormal2_membership,
    enormal_interval,
    epi_membership_check,
)
from nearly_convex.calculus.subdifferential import (
    EtaLadder,
    closure_subdifferential,
    esub_interval,
    esub_ladder,
    esub_limit,
    esub_membership,
    oracle_esub_interval,
    raw_inequality_holds,
    scalar_rule,
)
from nearly_convex.calculus.sum_rule import (
    ExactSumRuleReport,
    SplitCertificate,
    exact_sum_rule_holds,
    infimal_convolution,
    normal_intersection_decompose,
    sum_rule_decompose,
)

__all__ = [
    "IntersectionCheck",
    "IntersectionWitness",
    "coderiv_intersection_check",
    "coderiv_sum_decompose",
    "ecoderiv_membership",
    "graph_intersection",
    "graph_sum",
    "enormal2_mask",
    "enormal2_membership",
    "enormal_interval",
    "epi_membership_check",
    "EtaLadder",
    "closure_subdifferential",
    "esub_interval",
    "esub_ladder",
    "esub_limit",
    "esub_membership",
    "oracle_esub_interval",
    "raw_inequality_holds",
    "scalar_rule",
    "ExactSumRuleReport",
    "SplitCertificate",
    "exact_sum_rule_holds",
    "infimal_convolution",
    "normal_intersection_decompose",
    "sum_rule_decompose",
]
