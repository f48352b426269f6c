"""Group-ring Pfaffians and parity-constrained perfect matchings."""

from .dag import DEFAULT_RULES, DagRules, PfaffianDag, build_dag, dag_values, pfaffian_dag
from .matching import (
    MatchingInstance,
    brute_force_matching,
    dedupe_parallel,
    evaluate_once,
    parity_matching,
    pfaffian_naive,
    reps_for,
    sign_of_matching,
    tutte_matrix,
)
from .ring import GroupRingPoly, SkewRingMatrix, ring_add, ring_mul

__all__ = [
    "DEFAULT_RULES",
    "DagRules",
    "GroupRingPoly",
    "MatchingInstance",
    "PfaffianDag",
    "SkewRingMatrix",
    "brute_force_matching",
    "build_dag",
    "dag_values",
    "dedupe_parallel",
    "evaluate_once",
    "parity_matching",
    "pfaffian_dag",
    "pfaffian_naive",
    "reps_for",
    "ring_add",
    "ring_mul",
    "sign_of_matching",
    "tutte_matrix",
]
