"""Finite magmas, magma-actions and semibiproducts of magmas, checked by
exhaustive computation."""
from .errors import (AlgebraError, DimensionMismatch, NotAGroup, NotASection,
                     NotAssociative, NotClosed, NotSurjective, NotUnital,
                     OrderTooLarge)
from .finite_algebra import (FiniteMagma, FiniteMap, are_equivalent,
                             canonical_form, canonical_form_anti, classify,
                             enumerate_homomorphisms, enumerate_maps,
                             is_associative, is_homomorphism)
from .magma_action import (MagmaAction, compute_R, is_associative_action,
                           is_representable, is_unitary_semidirect,
                           verify_action)
from .semibiproduct import (Semibiproduct, alpha_beta_iso, build_group_sbp,
                            derive_tuple, group_checks, monoid_formula_check,
                            structure_battery, to_action, to_sbp, verify_sbp)
from .extension_props import cokernel_property, kernel_property
from .enumeration import (EnumSpec, enumerate_semibiproducts,
                          enumerate_structures, sbp_isomorphic)
from .census import action_census

__version__ = "0.1.0"
