"""Finite relational structures, five hereditary classes, an exhaustive
amalgamation oracle and finite approximations of generic limits."""

from .amalgamation import (
    AmalgamSolution,
    AmalgamSpan,
    WapWitness,
    amalgam_exists,
    amalgam_exists_slow,
    cap_counterexample,
    certify_jep,
    certify_not_cap,
    certify_wap_sample,
    free_amalgam,
    span_of_extensions,
    tame_extension,
    wap_amalgam_exists,
    wap_witness,
)
from .certificate import Certificate
from .classes import GA, G_CLASS, K5, P, PZK, ClassId, enumerate_members, hereditary_check, is_member, violations
from .limits import ChainState, generic_chain, r_from_order, subdivided_tree, swap_embedding, weak_hom_witness
from .structures import (
    Embedding,
    FinStructure,
    Sig,
    canonicalize,
    enumerate_embeddings,
    enumerate_structures,
    induced_substructure,
    is_embedding,
    is_isomorphic,
)

__all__ = [
    "AmalgamSolution",
    "AmalgamSpan",
    "WapWitness",
    "amalgam_exists",
    "amalgam_exists_slow",
    "cap_counterexample",
    "certify_jep",
    "certify_not_cap",
    "certify_wap_sample",
    "free_amalgam",
    "span_of_extensions",
    "tame_extension",
    "wap_amalgam_exists",
    "wap_witness",
    "Certificate",
    "GA",
    "G_CLASS",
    "K5",
    "P",
    "PZK",
    "ClassId",
    "enumerate_members",
    "hereditary_check",
    "is_member",
    "violations",
    "ChainState",
    "generic_chain",
    "r_from_order",
    "subdivided_tree",
    "swap_embedding",
    "weak_hom_witness",
    "Embedding",
    "FinStructure",
    "Sig",
    "canonicalize",
    "enumerate_embeddings",
    "enumerate_structures",
    "induced_substructure",
    "is_embedding",
    "is_isomorphic",
]

__version__ = "0.1.0"
