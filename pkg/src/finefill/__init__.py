"""Exact homological filling norms and fineness certificates for finite
combinatorial 2-complexes.

All arithmetic is exact (arbitrary-precision integers and rationals);
infinite filling values are data, not errors.
"""

from .complexes import (BARYCENTRIC, INT, MIDPOINT, RAT, Chain, H1Report,
                        TwoComplex, boundary, homology_h1, l1_norm,
                        parse_complex, subdivide, validate, write_complex)
from .chains import (Circuit, decompose_into_circuits, enumerate_circuits,
                     enumerate_cycles, is_cycle, is_disjoint, parse_chain,
                     write_chain)
from .filling import (INF, FillingResult, FVTable, WeakAreaResult,
                      filling_norm, fv, linearity_report,
                      superadditive_closure, weak_area)
from .fineness import (GRAPH_SEARCH, SPECIAL_CHAIN, FinenessCertificate,
                       SpecialChainState, check_minimal_fillings_special,
                       circuits_via_fillings, enumerate_special_chains,
                       fineness_certificate, find_special_ordering)
from .constructions import (ConedOffComplex, FiniteGroupPresentation,
                            coned_off_cayley_complex, coned_off_cayley_graph,
                            group_closure, omega_n, parse_group, write_group)
from .hyperbolicity import DeltaReport, all_pairs_distances, hyperbolicity_delta

__version__ = "0.1.0"
