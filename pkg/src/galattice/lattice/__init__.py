"""Integral lattices in coherent cohomology of projective R-models via Čech complexes."""

from .cech import CechComplexR, CechHomology, SectionSpace, pullback_cochain, window_inclusion
from .cohomology import (ActionReport, CharpolyReport, Check, GenericReport, LatticeReport,
                         QUReport, cech_complex, charpoly_integrality, cohomology_lattice,
                         compare_generic, default_center, generic_fiber_cohomology,
                         invariance_suite, morphism_action, quasi_unipotence_check,
                         relative_dimension, sandwich_check, shift_check)
from .linalg import (ComplexReducer, HomologyData, NotInLattice, RLattice, charpoly_berkowitz,
                     determinant, in_gl_R, smith_dvr)
from .model import (GradedMorphism, ProjModel, blowup_chart, blowup_model, build_proj_model,
                    exceptional_principal, identity_morphism, product_with_p1, projection_to)
from .truncated import TruncatedCechComplex, k_rank, same_span
