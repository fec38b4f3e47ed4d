"""Solvabilizers, the solvable radical, S-groups and non-solvable graphs of finite groups."""

from .catalog import build, direct_product, make, parse_spec
from .elements import MatrixModP, Permutation, TableIndex
from .group_core import ElementSet, FiniteGroup, close_generators, conjugacy_classes
from .nsgraph import build_graph, diameter, export_graph, find_k44
from .solvabilizer import RelationMode, is_s_group, pair_related, sol_of_element, sol_of_set, solvable_radical

__all__ = [
    "ElementSet", "FiniteGroup", "MatrixModP", "Permutation", "RelationMode", "TableIndex",
    "build", "build_graph", "close_generators", "conjugacy_classes", "diameter", "direct_product",
    "export_graph", "find_k44", "is_s_group", "make", "pair_related", "parse_spec", "sol_of_element",
    "sol_of_set", "solvable_radical",
]
