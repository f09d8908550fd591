"""Presentations of mapping class groups of surfaces with boundary.

Artin groups of the relevant Coxeter diagrams, Garside normal forms for the
spherical types, generators of the explicit presentations, and the
consistency checks used to validate them.
"""

from .artin import ArtinGraph, Mode, ParabolicType, artin_presentation, classify_chain, delta_power_word
from .arb import b1r_presentation, b21_presentation, phi_word, t_word
from .garside import GarsideForm, build_root_system, equal, normal_form
from .mcg import MapoParams, generator_catalogs, mapo_presentation, psi_graph
from .presentations import Presentation, Relation, compose_extension, graph_of_groups_pi1
from .verify import (
    abelianization,
    count_check,
    delta_homogeneity_audit,
    perm_eval,
    smith_normal_form,
    structural_check,
    todd_coxeter,
)
from .words import Generator, Kind, Word

__version__ = "0.1.0"
