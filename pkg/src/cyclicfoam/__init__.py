"""Cyclic foam field theories with exact rational structure constants."""

__version__ = "0.1.0"

from .graphs import ColoredGraph, GraphClass, canonical_class, involute, segment_class, theta_class
from .foams import CyclicFoam, FilmSurface, Patch, compose, graph_cut, validate_cyclic
from .frobenius import EquippedFrobenius, GraphCardyBundle, GraphFrobeniusData
from .groupcover import build_bundle, cyclic_group, regular_action, symmetric_group, trivial_group
from .evaluate import LabeledFoam, check_axioms, eval_film, eval_foam

__all__ = [
    "ColoredGraph", "GraphClass", "canonical_class", "involute", "segment_class", "theta_class",
    "CyclicFoam", "FilmSurface", "Patch", "compose", "graph_cut", "validate_cyclic",
    "EquippedFrobenius", "GraphCardyBundle", "GraphFrobeniusData",
    "build_bundle", "cyclic_group", "regular_action", "symmetric_group", "trivial_group",
    "LabeledFoam", "check_axioms", "eval_film", "eval_foam",
]
