"""chaintop: topological analysis of consensus protocols.

Simplicial complexes with exact integer homology, carrier-map protocol
evolution, chain maps and homotopies between protocols, poset/sheaf
cohomology over block DAGs, recursion-scheme builders, and Poincaré
duality validation. See the `chaintop` CLI for the batch front end.
"""

from .simplicial import (ChainComplexRep, SimplicialComplex, boundary_matrix,
                         chain_complex, closure, embed_vertex, face,
                         make_simplex, sphere, standard_simplex)
from .homology import (HomologyProfile, SmithDecomposition, cohomology,
                       euler_characteristic, homology, is_k_acyclic)
from .exact import Matrix, smith_normal_form
from .protocol import (BlockDAG, CarrierMap, CarrierReport, ForkReport,
                       ProtocolComplexSequence, apply_operator,
                       barycentric_carrier, barycentric_subdivision,
                       check_acyclic_carrier, dag_order_complex, fork_report,
                       identity_carrier, iterate_protocol)
from .chainmaps import (ChainHomotopy, ChainMap, ProtocolTopology, VertexMap,
                        build_protocol_topology, identity_chain_map,
                        induced_chain_map, induced_map_on_homology,
                        solve_chain_homotopy, verify_chain_homotopy,
                        verify_chain_map)
from .posets import (FinToposet, IncidenceProfile, incidence_decomposition,
                     incidence_product, order_complex)
from .sheaves import (CellularSheaf, DifferentialTetrad, ProtocolManifold,
                      SheafCochainComplex, build_tetrad, constant_sheaf,
                      direct_sum, global_sections, protocol_manifold,
                      pushforward, sheaf_cochain_complex, sheaf_cohomology)
from .recursion import (ComplexAlgebra, ComplexCoalgebra, PoincareReport,
                        face_layers_coalgebra, fold, hylo_build,
                        is_poincare_protocol, materialize, meta_build,
                        poincare_check, poset_folder, simplex_accumulator,
                        subdivision_coalgebra)
from . import builtin
from .errors import (ChaintopError, InvariantViolation, ParseError,
                     StreamOrderError, TerminationError, ValidationError)

__version__ = "0.1.0"
