"""Network-reliability toolkit for small graphs: exact cutset spectra,
tree numbers, trivial-cut lower bounds, isomorphism-free enumeration, and
exhaustive verification that the complete bipartite graph on 4+4 nodes is
the uniformly most-reliable connected (8,16)-graph."""

from .bounds import (BoundContext, BoundReport, edge_cut_term, g,
                     minimize_edge_sum, regular_lower_bounds, union_lower_bound)
from .enumeration import (ClassFilter, DegreeSequence, canonical_form,
                          enumerate_class, graphical_sequences, is_graphical,
                          stratify)
from .graph import (Graph, boundary, build_named, complement_of, complete,
                    complete_bipartite, complete_multipartite,
                    connected_subgraphs, connectivity_census, cycle, moebius,
                    path, petersen, structural_census, theta)
from .graph6 import decode, encode
from .spectrum import (BudgetExceededError, CutsetSpectrum, MonteCarloResult,
                       SpectrumComparison, UnreliabilityPolynomial, compare,
                       component_spectrum, cutset_spectrum,
                       cutset_spectrum_graycode, edge_connectivity,
                       is_superconnected, monte_carlo_unreliability,
                       spectrum_via_components, tree_number, unreliability)
from .verify import (Universe, VerificationReport, verify_all,
                     verify_biconnected_reduction, verify_consistency,
                     verify_k44, verify_k44_uniqueness, verify_lemma,
                     verify_regular, verify_tables)

__version__ = "0.1.0"
