import json

import numpy as np
import pytest

from conformal_rigidity import (
    CayleyPresentation,
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
from conformal_rigidity.errors import (
    AllZeroWeights,
    ComplementDisconnected,
    DimensionMismatch,
    Disconnected,
    DisconnectedCirculant,
    DuplicateEdge,
    LoopEdge,
    NegativeWeight,
    NotSymmetricGeneratingSet,
    OutOfRange,
    ParseError,
)


def test_build_graph_canonicalizes_edge_order():
    g = build_graph(3, [(2, 1), (0, 1), (2, 0)])
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert g.m == 3


def test_build_graph_rejects_bad_input():
    with pytest.raises(LoopEdge):
        build_graph(3, [(0, 0), (0, 1), (1, 2)])
    with pytest.raises(DuplicateEdge):
        build_graph(3, [(0, 1), (1, 0), (1, 2)])
    with pytest.raises(OutOfRange):
        build_graph(3, [(0, 3)])
    with pytest.raises(Disconnected):
        build_graph(4, [(0, 1), (2, 3)])


def test_degrees_and_adjacency(petersen):
    degs = petersen.degrees()
    assert all(d == 3 for d in degs)
    A = petersen.adjacency()
    assert A.sum() == 2 * petersen.m
    assert np.array_equal(A, A.T)


def test_edge_index_roundtrip(prism):
    idx = prism.edge_index()
    for k, e in enumerate(prism.edges):
        assert idx[e] == k


def test_circulant_folds_steps():
    # step 5 on 6 vertices is the same chord as step 1
    g = circulant(6, (5,))
    assert g.edges == circulant(6, (1,)).edges
    with pytest.raises(DisconnectedCirculant):
        circulant(8, (2, 4))
    with pytest.raises(LoopEdge):
        circulant(6, (6,))
    with pytest.raises(OutOfRange):
        circulant(2, (1,))


def test_circulant_half_step_gives_single_edges():
    # the antipodal step alone is a perfect matching, hence disconnected
    with pytest.raises(DisconnectedCirculant):
        circulant(8, (4,))
    # combined with step 1 it contributes 4 edges, not 8
    h = circulant(8, (1, 4))
    assert h.m == 8 + 4
    assert all(d == 3 for d in h.degrees())


def test_cayley_cyclic_matches_circulant():
    pres = CayleyPresentation.cyclic(10, (1, 3))
    g = cayley_graph(pres)
    assert g.edges == circulant(10, (1, 3)).edges
    assert sorted(pres.connection) == [1, 3, 7, 9]


def test_cayley_from_permutations_closure():
    # transpositions generating S3: Cayley graph is the 6-cycle
    pres = CayleyPresentation.from_permutations([(1, 0, 2), (0, 2, 1)])
    g = cayley_graph(pres)
    assert g.n == 6
    assert g.m == 6
    assert all(d == 2 for d in g.degrees())


def test_cayley_rejects_asymmetric_connection():
    n = 5
    elements = tuple(range(n))

    def mul(a, b):
        return (a + b) % n

    pres = CayleyPresentation(elements=elements, connection=(1,), multiply=mul)
    with pytest.raises(NotSymmetricGeneratingSet):
        cayley_graph(pres)


def test_complement():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(ComplementDisconnected):
        complement(g)
    c6 = load_fixture("c6")
    cc = complement(c6)
    assert cc.m == 15 - 6
    assert load_fixture("c6_complement").edges == cc.edges


def test_normalize_weights(prism):
    w = normalize_weights(prism, [2.0] * 9)
    assert np.allclose(w.as_array(), 1.0)
    assert abs(sum(w.values) - prism.m) < 1e-12
    with pytest.raises(NegativeWeight):
        normalize_weights(prism, [1.0] * 8 + [-0.1])
    with pytest.raises(AllZeroWeights):
        normalize_weights(prism, [0.0] * 9)
    with pytest.raises(DimensionMismatch):
        normalize_weights(prism, [1.0] * 4)


def test_laplacian_values(c4):
    L = laplacian(c4)
    assert np.array_equal(np.diag(L), [2, 2, 2, 2])
    assert L.sum() == 0
    Lw = laplacian(c4, [1.0, 2.0, 3.0, 4.0])
    assert Lw[0, 1] == -1.0
    assert np.allclose(Lw.sum(axis=1), 0.0)


def test_parse_graph_json_strict():
    g = parse_graph_json('{"n": 3, "edges": [[0, 1], [1, 2], [0, 2]], "note": "x"}')
    assert g.n == 3 and g.m == 3
    with pytest.raises(ParseError):
        parse_graph_json('{"edges": [[0, 1]]}')
    with pytest.raises(ParseError):
        parse_graph_json('{"n": 2, "edges": [[0, 1, 2]]}')
    with pytest.raises(ParseError):
        parse_graph_json("[1, 2, 3]")


def test_parse_graph_text():
    text = "# triangle\n3 3\n0 1\n1 2\n0 2\n"
    g = parse_graph_text(text)
    assert g.m == 3
    with pytest.raises(ParseError):
        parse_graph_text("3 2\n0 1\n")  # missing an edge line


def test_parse_graph_sniffs_format():
    assert parse_graph('{"n": 2, "edges": [[0, 1]]}').m == 1
    assert parse_graph("2 1\n0 1\n").m == 1


def test_fixture_roundtrip():
    names = fixture_names()
    assert "petersen" in names and "klein_d2" in names
    for name in names:
        if name == "c21_rigid_params":
            continue
        g = load_fixture(name)
        text = g.to_json()
        assert parse_graph_json(text).edges == g.edges


def test_fixture_sizes():
    sizes = {
        "k2": (2, 1),
        "c4": (4, 4),
        "k5": (5, 10),
        "c6": (6, 6),
        "c6_complement": (6, 9),
        "prism": (6, 9),
        "petersen": (10, 15),
        "hoffman": (16, 32),
        "shrikhande_complement": (16, 72),
        "c18_1_5": (18, 36),
        "haar565": (20, 50),
        "crossing_number_6b": (20, 30),
        "klein_d2": (24, 168),
    }
    for name, (n, m) in sizes.items():
        g = load_fixture(name)
        assert (g.n, g.m) == (n, m), name


def test_weight_vector_is_immutable(prism):
    w = normalize_weights(prism, [1.0] * 9)
    with pytest.raises(AttributeError):
        w.values = (0.0,) * 9
