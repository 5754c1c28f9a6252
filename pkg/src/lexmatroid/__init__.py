"""Lexicographic shellings of matroids and pure order ideals for their h-vectors."""

from .constructor import construct, construct_matroid
from .enumeration import based_matroids, enumerate_up_to, parse_revlex, serialize_revlex
from .gamma import gamma, label_family, restricted_h, restricted_h_family
from .matroid import Matroid, MatroidError, dual, f_vector, fano, new_matroid, uniform_matroid
from .oseq import Monomial, OrderIdeal, check_conditions, is_order_ideal, is_pure
from .shelling import BasedMatroid, h_vector, lex_shelling
from .verifier import run_full_verification

__all__ = [
    "BasedMatroid",
    "Matroid",
    "MatroidError",
    "Monomial",
    "OrderIdeal",
    "based_matroids",
    "check_conditions",
    "construct",
    "construct_matroid",
    "dual",
    "enumerate_up_to",
    "f_vector",
    "fano",
    "gamma",
    "h_vector",
    "is_order_ideal",
    "is_pure",
    "label_family",
    "lex_shelling",
    "new_matroid",
    "parse_revlex",
    "restricted_h",
    "restricted_h_family",
    "run_full_verification",
    "serialize_revlex",
    "uniform_matroid",
]
