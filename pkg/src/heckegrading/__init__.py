"""Gradings, homogeneity checks and degree-based rescalings for the diagrammatic Hecke category."""
from .abgroup import AbGroup, GroupElement, Hom, generates_whole_group, hom, smith_normal_form
from .coxeter import (CoxeterSystem, Realization, VGrading, connected_components, demazure,
                      new_coxeter_system, reflect, root_realization, validate_v_grading)
from .diagram import Diagram, compose, crossingless_matchings, parse_diagram, serialize_diagram, tensor
from .grading import (DegreeAssignment, bigrading, degree, general_grading, original_grading,
                      specialize, universal_lambda)
from .polynomial import Polynomial
from .relations import (build_catalog, check_homogeneity, derive_scalar_constraints,
                        derive_universal, jw_terms, verify_all)
from .rescale import (Character, character, classify_characters, identity_criterion,
                      identity_criterion_universal, relation_preserved, theta_apply)

__version__ = "0.1.0"
