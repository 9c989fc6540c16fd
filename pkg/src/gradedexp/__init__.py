"""Exact arithmetic for finite-dimensional group-graded algebras.

Construct graded-simple algebras in canonical twisted-group-algebra form,
glue them with a truncated quiver-path radical, decompose subgroup
components along double cosets, compute the structural graded exponent with
independent brute-force cross-checks, and mechanize the monomial bookkeeping
behind the subgroup inequality.
"""

from .algebras import (AlgebraElement, AlgebraError, Edge, GluedAlgebra,
                       GradedSimple, build_glued, build_graded_simple,
                       homogeneous_component, regrade_quotient,
                       subgroup_component)
from .cocycles import (CocycleError, TwoCocycle, coboundary_cocycle,
                       cocycle_violation, conjugate_cocycle, klein_cocycle,
                       restrict_cocycle, trivial_cocycle, twisted_product,
                       verify_cocycle)
from .codim import codimension, graded_codimension, growth_report
from .decomposition import (KDecomposition, build_block_isomorphism,
                            index_classes, k_simple_blocks, subgroup_basis)
from .expconj import (ExpConjResult, check_main_inequality, check_monotonicity,
                      exp_conj, exp_conj_oracle, exp_conj_sub)
from .grassmann import (GrassmannAlgebra, build_grassmann,
                        check_envelope_e_component, envelope)
from .groups import (DoubleCosetPartition, GroupError, GroupTable, Subgroup,
                     all_subgroups, catalog_group, conjugate_subgroup,
                     cyclic_group, dihedral_group, direct_product,
                     double_cosets, full_subgroup, left_cosets, quotient_group,
                     subgroup_closure, symmetric_group, trivial_subgroup)
from .instances import (GeneratorProfile, InstanceError, InstanceSpec,
                        generate_instance, parse_instance)
from .scalars import CycScalar, cyclotomic
from .trace import (TraceMonomial, block_parse, build_trace_monomial,
                    elementary_matrix_circuit, final_inequality_report,
                    prefix_degree_data, visit_counts)

__version__ = "0.1.0"
