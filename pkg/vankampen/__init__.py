from .errors    import (VanKampenError, ParseError, NotCompletedError, BoundExceededError, IncompatibleError,
                        HypothesisError, PreconditionError)
from .config    import Settings, load_settings, settings
from .event     import Event, EventBroker
from .schema    import (Violation, ValidationReport, WordEquality, ProbeResult, UniversalReport, ComparisonReport,
                        EquivalenceReport, TripleReport)
from .words     import GenSymbol, Word, free_reduce
from .rewriting import RewriteSystem, enumerate_normal_forms
from .groupring import GroupRingElement, ring_combine
from .finite    import FiniteGroup, FiniteGroupoid, cyclic, symmetric, named_group, direct_product, validate_groupoid
from .groupoid  import (Edge, Quiver, Relation, GroupPresentation, GroupoidPresentation, GroupoidMorphism,
                        spanning_forest, vertex_group, coproduct, injections, word_equal, to_dot)
from .colimit   import Diagram, DiagramArrow, Cocone, colimit, pushout, coequaliser, verify_couniversal
from .probes    import probe, homomorphisms, count_morphisms, compare
from .xmod      import (CrossedModule, CrossedModuleOverGroupoid, XModMorphism, validate_xmod, morphisms,
                        load_xmod, dump_xmod, mutate_action)
from .catalog   import catalog, entry, names
from .free_xmod import (FreeCrossedModule, free_crossed_module, fcm_arithmetic, PeifferOracle, check_faithfulness,
                        extend_universal, pushout_xmod)
from .induced   import induced_xmod
from .crossed_complex import CrossedComplexData, ChainLevel, validate_crossed_complex
from .double    import DoubleGroupoid, lambda_squares, commutative_squares_dg, check_laws, count_instances
from .cubes     import CubeShell, cube_commutative, compose_cubes
from .equivalence import gamma, roundtrip_xmod, roundtrip_dg, find_isomorphism
from .fox       import fox_derivative, boundary_matrix, FoxMatrix, pi2_kernel_search, kernel_basis_candidate
from .complex   import (CombinatorialComplex, CoverSpec, ParsedComplex, parse_complex, format_complex, load_complex,
                        pi1_complex, pi1_via_cover, xmod_of_complex, check_connected_triple)

__version__ = '0.1.0'
