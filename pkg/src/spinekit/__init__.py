"""Admissibility, flow-spine classification and S-stable foliation
certificates for combinatorially encoded branched simple polyhedra."""
from .circuits import Circuit, SpineClass, classify, trace_circuits
from .cone import (InfeasibilityCertificate, StrictSystem, Witness, admissible, feasible_strict,
                   positive_orthant_empty)
from .foliation import (FoliationCertificate, PassageSigns, TangencyBound, ph_check,
                        preferred_regions, synthesize_minimal, synthesize_theorem1,
                        tangency_lower_bound, verify_certificate)
from .io import SpineDocument, parse, serialize
from .model import Edge, IncidenceMatrix, Region, Spine, Vertex, incidence_matrix, validate
from .refinement import RefinementSystem, solve_refinement

__version__ = "0.1.0"
