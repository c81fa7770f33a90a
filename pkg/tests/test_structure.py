import numpy as np
import pytest

from conformal_rigidity import (
    automorphism_generators,
    build_graph,
    distance_regular_check,
    edge_orbits,
    group_order,
    is_edge_transitive,
    is_strongly_regular,
    lambda2,
    lambdaN,
    load_fixture,
    normalize_weights,
    orbit_average,
)


def test_group_orders():
    assert group_order(automorphism_generators(load_fixture("c4"))) == 8
    assert group_order(automorphism_generators(load_fixture("prism"))) == 12
    assert group_order(automorphism_generators(load_fixture("petersen"))) == 120
    assert group_order(automorphism_generators(load_fixture("k5"))) == 120


def test_generators_are_automorphisms(petersen):
    nbrs = petersen.adjacency_sets()
    for perm in automorphism_generators(petersen):
        for i, j in petersen.edges:
            assert perm[j] in nbrs[perm[i]]


def test_edge_orbit_sizes():
    expected = {
        "c4": [4],
        "prism": [6, 3],
        "petersen": [15],
        "hoffman": [24, 8],
        "haar565": [40, 10],
        "crossing_number_6b": [12, 12, 6],
        "klein_d2": [84, 84],
        "shrikhande_complement": [48, 24],
    }
    for name, sizes in expected.items():
        g = load_fixture(name)
        assert sorted(edge_orbits(g).sizes, reverse=True) == sizes, name


def test_is_edge_transitive():
    assert is_edge_transitive(load_fixture("petersen"))
    assert is_edge_transitive(load_fixture("c6"))
    assert not is_edge_transitive(load_fixture("prism"))
    assert not is_edge_transitive(load_fixture("hoffman"))
    # the step classes stay separate orbits under the dihedral group
    c18 = load_fixture("c18_1_5")
    assert sorted(edge_orbits(c18).sizes) == [18, 18]
    assert not is_edge_transitive(c18)


def test_orbit_average_is_constant_per_orbit(prism):
    orbits = edge_orbits(prism)
    w = np.arange(1.0, 10.0)
    avg = orbit_average(prism, w, orbits)
    vals = avg.as_array()
    for orbit in orbits.orbits:
        orbit_vals = vals[list(orbit)]
        assert np.allclose(orbit_vals, orbit_vals[0])
        assert orbit_vals[0] == pytest.approx(w[list(orbit)].mean())


def test_orbit_average_idempotent(petersen, rng):
    w = rng.random(15) + 0.5
    once = orbit_average(petersen, w)
    twice = orbit_average(petersen, once.as_array())
    assert np.allclose(once.as_array(), twice.as_array(), atol=1e-12)


def test_orbit_average_improves_lambda2(petersen, rng):
    # averaging toward the symmetric point cannot hurt the spread objective
    for _ in range(5):
        w = normalize_weights(petersen, rng.random(15) + 0.1)
        avg = orbit_average(petersen, w.as_array())
        assert lambda2(petersen, avg) >= lambda2(petersen, w) - 1e-9
        assert lambdaN(petersen, avg) <= lambdaN(petersen, w) + 1e-9


def test_distance_regular_detection():
    ia = distance_regular_check(load_fixture("petersen"))
    assert ia is not None
    assert ia.b == (3, 2) and ia.c == (1, 1)
    assert ia.diameter == 2
    assert distance_regular_check(load_fixture("hoffman")) is None
    assert distance_regular_check(load_fixture("prism")) is None
    # cycles are distance regular
    ia6 = distance_regular_check(load_fixture("c6"))
    assert ia6 is not None and ia6.diameter == 3


def test_strongly_regular_parameters():
    assert is_strongly_regular(load_fixture("petersen")) == (10, 3, 0, 1)
    assert is_strongly_regular(load_fixture("shrikhande_complement")) == (16, 9, 4, 6)
    assert is_strongly_regular(load_fixture("c6")) is None
    assert is_strongly_regular(load_fixture("k5")) is None


def test_path_graph_orbits():
    p5 = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    orbits = edge_orbits(p5)
    assert sorted(orbits.sizes, reverse=True) == [2, 2]
    assert group_order(automorphism_generators(p5)) == 2
