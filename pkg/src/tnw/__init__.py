"""Weighted quiver mutation, cluster modular groups and exact counts for T_{n,w} quivers."""

from __future__ import annotations

from .errors import *  # noqa: F401,F403
from .counting import affine_cluster_count, doubly_extended_coset_count, face_table
from .explorer import Budget, enumerate_exchange, enumerate_mutation_class, face_counts
from .families import TnwSignature, build_dynkin, build_signature, build_tbc, build_tnw, chi, classify
from .framing import FramedQuiver, frame_coframe, frame_principal, verify_reddening
from .mcg import GroupElement, gamma, is_trivial, reddening_element, twist
from .quiver import WeightedQuiver, canonicalize, exchange_matrix, find_isomorphism, mutate, mutate_matrix

__all__ = [
    "Budget",
    "GroupElement",
    "TnwSignature",
    "WeightedQuiver",
    "FramedQuiver",
    "affine_cluster_count",
    "build_dynkin",
    "build_signature",
    "build_tbc",
    "build_tnw",
    "canonicalize",
    "chi",
    "classify",
    "doubly_extended_coset_count",
    "enumerate_exchange",
    "enumerate_mutation_class",
    "exchange_matrix",
    "face_counts",
    "face_table",
    "find_isomorphism",
    "frame_coframe",
    "frame_principal",
    "gamma",
    "is_trivial",
    "mutate",
    "mutate_matrix",
    "reddening_element",
    "twist",
    "verify_reddening",
]

__version__ = "0.1.0"
