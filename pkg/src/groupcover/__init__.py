"""Minimal covers of small finite groups and of their direct products."""

from .cover import INFINITY, Cover, SigmaResult, enumerate_minimum_covers, greedy_cover, is_cover, lift_cover, sigma_bruteforce
from .dsl import build, evaluate, parse
from .group import Group, ProductStructure, commutator_subgroup, direct_product, element_order, from_permutations, is_cyclic
from .lattice import all_subgroups, is_normal, maximal_normal_subgroups, maximal_subgroups, normal_subgroups, quotient
from .morphisms import common_prime_quotients, find_isomorphisms
from .product_maximals import all_maximals_product, diagonal_maximals, realize, standard_maximals
from .subgroup import Subgroup
from .theorem import (
    Case,
    build_cover_case1,
    build_cover_case2,
    build_cover_case3,
    check_lemma_effe,
    check_prop_diagonal,
    check_prop_nodiagonal,
    check_tomkinson,
    classify_cover,
    sigma_of,
    sigma_product,
)

__version__ = "0.1.0"
