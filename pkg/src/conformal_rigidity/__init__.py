"""Conformal rigidity of finite graphs: decision pipeline, certificates,
eigenspace embeddings, and counterexample search.

A connected graph is conformally rigid when the uniform edge weighting is
simultaneously optimal for both extreme nontrivial Laplacian eigenvalues
over all nonnegative weightings of the same total weight.  The package
decides that property, emits machine-checkable evidence either way, and
ships the small fixture library used by the test suite.
"""
from .backend import selected as backend_selected
from .cayley import (
    CayleySumProfile,
    cayley_sums,
    circulant_eigenvalue,
    criterion_check,
    search_eigenvector,
)
from .certify import (
    Certificate,
    ComplementPairReport,
    Embedding,
    Inconclusive,
    Infeasible,
    VerificationReport,
    Verdict,
    certificate_from_json,
    certify_rigidity,
    complement_pair_check,
    cs_search,
    edge_isometry_check,
    edge_nonedge_isometry_check,
    embedding_from_certificate,
    project_rows,
    rank_one_certificate,
    rationalize,
    uut_certificate,
    verify_certificate,
)
from .disprove import (
    NoImprovement,
    Witness,
    circulant12_family,
    circulant12_weights,
    maximize_lambda2,
    minimize_lambdaN,
    symmetry_reduced_scan,
    vertex_values,
)
from .errors import (
    ConformalRigidityError,
    Disconnected,
    GraphError,
    NearDisconnectionWarning,
    ParseError,
)
from .graphs import (
    CayleyPresentation,
    Graph,
    WeightVector,
    build_graph,
    cayley_graph,
    circulant,
    complement,
    fixture_names,
    laplacian,
    load_fixture,
    normalize_weights,
    parse_graph,
    parse_graph_json,
    parse_graph_text,
)
from .spectral import (
    EigenspaceBasis,
    Spectrum,
    eigendecompose,
    eigenspace,
    lambda2,
    lambdaN,
    rayleigh_witness_check,
)
from .structure import (
    EdgeOrbitPartition,
    IntersectionArray,
    automorphism_generators,
    distance_regular_check,
    edge_orbits,
    group_order,
    is_edge_transitive,
    is_strongly_regular,
    orbit_average,
)

__version__ = "0.1.0"

__all__ = [
    "backend_selected",
    "CayleySumProfile",
    "cayley_sums",
    "circulant_eigenvalue",
    "criterion_check",
    "search_eigenvector",
    "Certificate",
    "ComplementPairReport",
    "Embedding",
    "Inconclusive",
    "Infeasible",
    "VerificationReport",
    "Verdict",
    "certificate_from_json",
    "certify_rigidity",
    "complement_pair_check",
    "cs_search",
    "edge_isometry_check",
    "edge_nonedge_isometry_check",
    "embedding_from_certificate",
    "project_rows",
    "rank_one_certificate",
    "rationalize",
    "uut_certificate",
    "verify_certificate",
    "NoImprovement",
    "Witness",
    "circulant12_family",
    "circulant12_weights",
    "maximize_lambda2",
    "minimize_lambdaN",
    "symmetry_reduced_scan",
    "vertex_values",
    "ConformalRigidityError",
    "Disconnected",
    "GraphError",
    "NearDisconnectionWarning",
    "ParseError",
    "CayleyPresentation",
    "Graph",
    "WeightVector",
    "build_graph",
    "cayley_graph",
    "circulant",
    "complement",
    "fixture_names",
    "laplacian",
    "load_fixture",
    "normalize_weights",
    "parse_graph",
    "parse_graph_json",
    "parse_graph_text",
    "EigenspaceBasis",
    "Spectrum",
    "eigendecompose",
    "eigenspace",
    "lambda2",
    "lambdaN",
    "rayleigh_witness_check",
    "EdgeOrbitPartition",
    "IntersectionArray",
    "automorphism_generators",
    "distance_regular_check",
    "edge_orbits",
    "group_order",
    "is_edge_transitive",
    "is_strongly_regular",
    "orbit_average",
    "__version__",
]
