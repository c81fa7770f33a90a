from fractions import Fraction as F

import numpy as np
import pytest

from conformal_rigidity import (
    build_graph,
    certificate_from_json,
    certify_rigidity,
    complement_pair_check,
    cs_search,
    edge_isometry_check,
    edge_nonedge_isometry_check,
    eigendecompose,
    eigenspace,
    embedding_from_certificate,
    laplacian,
    load_fixture,
    project_rows,
    rank_one_certificate,
    uut_certificate,
    verify_certificate,
)
from conformal_rigidity.certify import (
    TARGET_LAMBDA2,
    TARGET_LAMBDAN,
    Certificate,
    Embedding,
    Infeasible,
)
from conformal_rigidity.errors import (
    ComplementDisconnected,
    DimensionMismatch,
    MultiplicityNotOne,
    NotPSD,
    NotRegular,
)
from conformal_rigidity.exact import RationalMatrix


def exact_c4_pair():
    h = F(1, 2)
    X = RationalMatrix(tuple(tuple(r) for r in [
        [h, 0, -h, 0], [0, h, 0, -h], [-h, 0, h, 0], [0, -h, 0, h]]))
    q = F(1, 4)
    Y = RationalMatrix(tuple(
        tuple(q if (i + j) % 2 == 0 else -q for j in range(4)) for i in range(4)))
    cX = Certificate(target=TARGET_LAMBDA2, value=2.0, matrix=X.as_float(),
                     method="External", claimed_trace=2.0,
                     exact_value=F(2), exact_entries=X)
    cY = Certificate(target=TARGET_LAMBDAN, value=4.0, matrix=Y.as_float(),
                     method="External", claimed_trace=1.0,
                     exact_value=F(4), exact_entries=Y)
    return cX, cY


class TestVerify:
    def test_exact_pair_passes(self, c4):
        cX, cY = exact_c4_pair()
        for cert in (cX, cY):
            rep = verify_certificate(c4, cert)
            assert rep.ok and rep.exact
            assert rep.failed() == ()

    def test_float_pair_passes(self, c4):
        cX, cY = exact_c4_pair()
        for cert in (cX, cY):
            plain = Certificate(target=cert.target, value=cert.value,
                                matrix=cert.matrix, method="External",
                                claimed_trace=cert.claimed_trace)
            rep = verify_certificate(c4, plain)
            assert rep.ok and not rep.exact

    def test_symmetry_failure(self, c4):
        cX, _ = exact_c4_pair()
        M = cX.matrix.copy()
        M[0, 1] += 1e-4
        bad = Certificate(target=TARGET_LAMBDA2, value=2.0, matrix=M,
                          method="External", claimed_trace=2.0)
        rep = verify_certificate(c4, bad)
        assert not rep.ok
        assert "symmetry" in rep.failed()

    def test_ones_balance_failure(self, c4):
        cX, _ = exact_c4_pair()
        bad = Certificate(target=TARGET_LAMBDA2, value=2.0,
                          matrix=cX.matrix + 0.05, method="External",
                          claimed_trace=2.0)
        rep = verify_certificate(c4, bad)
        assert "ones_balance" in rep.failed()

    def test_edge_equality_failure(self, c4):
        cX, _ = exact_c4_pair()
        bad = Certificate(target=TARGET_LAMBDA2, value=2.0,
                          matrix=1.5 * cX.matrix, method="External",
                          claimed_trace=2.0)
        rep = verify_certificate(c4, bad)
        assert "edge_equalities" in rep.failed()

    def test_eigen_relation_failure(self, c4):
        cX, _ = exact_c4_pair()
        v = np.array([1.0, -1.0, 1.0, -1.0]) / 2.0  # lives at eigenvalue 4
        bad = Certificate(target=TARGET_LAMBDA2, value=2.0,
                          matrix=cX.matrix + 0.02 * np.outer(v, v),
                          method="External", claimed_trace=2.0)
        rep = verify_certificate(c4, bad)
        assert "eigen_relation" in rep.failed()

    def test_psd_failure(self, c4):
        _, cY = exact_c4_pair()
        bad = Certificate(target=TARGET_LAMBDAN, value=4.0,
                          matrix=-cY.matrix, method="External",
                          claimed_trace=1.0)
        rep = verify_certificate(c4, bad)
        assert "psd" in rep.failed()

    def test_trace_failure(self, c4):
        cX, _ = exact_c4_pair()
        bad = Certificate(target=TARGET_LAMBDA2, value=2.002,
                          matrix=cX.matrix, method="External",
                          claimed_trace=4.0 / 2.002)
        rep = verify_certificate(c4, bad)
        assert "trace" in rep.failed()

    def test_dimension_mismatch(self, c4):
        bad = Certificate(target=TARGET_LAMBDA2, value=2.0,
                          matrix=np.eye(3), method="External",
                          claimed_trace=2.0)
        with pytest.raises(DimensionMismatch):
            verify_certificate(c4, bad)


class TestRankOne:
    def test_hoffman_top_eigenvalue(self, hoffman):
        u = np.array([-1.0] * 8 + [1.0] * 8)
        cert = rank_one_certificate(hoffman, TARGET_LAMBDAN, u)
        rep = verify_certificate(hoffman, cert)
        assert rep.ok
        assert cert.is_exact  # integer data upgrades to rational form
        assert cert.exact_entries[0, 0] == F(1, 4)
        assert cert.claimed_trace == pytest.approx(4.0)

    def test_rejects_multiplicity(self, petersen):
        spec = eigendecompose(laplacian(petersen))
        u = spec.vectors[:, 1]
        with pytest.raises(MultiplicityNotOne):
            rank_one_certificate(petersen, TARGET_LAMBDA2, u)


class TestUUT:
    def test_petersen_both_targets(self, petersen):
        for target in (TARGET_LAMBDA2, TARGET_LAMBDAN):
            cert = uut_certificate(petersen, target)
            assert verify_certificate(petersen, cert).ok
            assert cert.method == "UUT"

    def test_uut_not_always_valid(self):
        # two edge orbits break the equal-length structure the form needs
        haar = load_fixture("haar565")
        cert = uut_certificate(haar, TARGET_LAMBDA2)
        rep = verify_certificate(haar, cert)
        assert not rep.ok
        assert "edge_equalities" in rep.failed()


class TestCsSearch:
    def test_c18_both_sides_exact(self):
        g = load_fixture("c18_1_5")
        for target in (TARGET_LAMBDA2, TARGET_LAMBDAN):
            cert = cs_search(g, target)
            assert isinstance(cert, Certificate)
            assert cert.is_exact
            rep = verify_certificate(g, cert)
            assert rep.ok and rep.exact

    def test_c6_complement_infeasible_at_5(self):
        g = load_fixture("c6_complement")
        res = cs_search(g, TARGET_LAMBDAN)
        assert isinstance(res, Infeasible)
        assert res.exact
        assert "rank 3" in res.detail and "4" in res.detail

    def test_prism_lambda2_infeasible(self, prism):
        res = cs_search(prism, TARGET_LAMBDA2)
        assert isinstance(res, Infeasible)

    def test_float_route_on_irrational_eigenvalue(self):
        g = load_fixture("klein_d2")
        cert = cs_search(g, TARGET_LAMBDA2, seed=3)
        assert isinstance(cert, Certificate)
        assert not cert.is_exact
        assert verify_certificate(g, cert).ok

    def test_certificate_json_roundtrip(self):
        g = load_fixture("c18_1_5")
        cert = cs_search(g, TARGET_LAMBDA2)
        back = certificate_from_json(cert.to_json())
        rep = verify_certificate(g, back)
        assert rep.ok and rep.exact


def test_project_rows_recovers_exact_combination(rng):
    U = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    X = 0.5 * (U @ U.T)
    noisy = X + 1e-6 * rng.normal(size=(4, 4))
    assert np.max(np.abs(project_rows(noisy, U) - X)) < 1e-12


class TestEmbedding:
    def test_gram_reproduction(self, petersen):
        cert = uut_certificate(petersen, TARGET_LAMBDA2)
        emb = embedding_from_certificate(cert)
        G = emb.points @ emb.points.T
        assert np.max(np.abs(G - cert.matrix)) < 1e-8
        assert emb.dimension == 5

    def test_rejects_indefinite(self):
        bad = Certificate(target=TARGET_LAMBDA2, value=2.0,
                          matrix=np.diag([1.0, -1.0]), method="External",
                          claimed_trace=0.0)
        with pytest.raises(NotPSD):
            embedding_from_certificate(bad)

    def test_edge_isometry_values(self, petersen):
        spec = eigendecompose(laplacian(petersen))
        e2 = Embedding(points=eigenspace(spec, 2.0).vectors.copy(), source_value=2.0)
        length = edge_isometry_check(e2, petersen)
        assert length == pytest.approx(np.sqrt(2.0 / 3.0), abs=1e-8)
        both = edge_nonedge_isometry_check(e2, petersen)
        assert both is not None
        assert both[1] == pytest.approx(2.0 / np.sqrt(3.0), abs=1e-8)

    def test_isometry_rejects_uneven_lengths(self, prism):
        spec = eigendecompose(laplacian(prism))
        emb = Embedding(points=eigenspace(spec, spec.values[1]).vectors.copy(),
                        source_value=float(spec.values[1]))
        assert edge_isometry_check(emb, prism) is None

    def test_isometry_rejects_collapsed_points(self, c4):
        emb = Embedding(points=np.zeros((4, 2)), source_value=2.0)
        assert edge_isometry_check(emb, c4) is None

    def test_scaling_validation(self, petersen):
        spec = eigendecompose(laplacian(petersen))
        pts = eigenspace(spec, 2.0).vectors.copy()
        emb = Embedding(points=pts, source_value=2.0)
        assert edge_isometry_check(emb, petersen, validate_scaling=True) is not None
        # wrong claimed source eigenvalue breaks the scaling identity
        wrong = Embedding(points=pts, source_value=3.0)
        assert edge_isometry_check(wrong, petersen, validate_scaling=True) is None


class TestComplementPair:
    def test_petersen(self, petersen):
        report = complement_pair_check(petersen)
        assert report.ok
        assert report.edge_length_low == pytest.approx(np.sqrt(2.0 / 3.0), abs=1e-8)
        assert report.nonedge_length_low == pytest.approx(2.0 / np.sqrt(3.0), abs=1e-8)
        assert report.edge_length_high == pytest.approx(2.0 / np.sqrt(3.0), abs=1e-8)
        assert report.complement.m == 30
        gX, gY = report.graph_certificates
        cX, cY = report.complement_certificates
        assert verify_certificate(petersen, gX).ok
        assert verify_certificate(petersen, gY).ok
        assert verify_certificate(report.complement, cX).ok
        assert verify_certificate(report.complement, cY).ok

    def test_requires_regularity(self):
        p3 = build_graph(3, [(0, 1), (1, 2)])
        with pytest.raises(NotRegular):
            complement_pair_check(p3)

    def test_disconnected_complement(self, c4):
        with pytest.raises(ComplementDisconnected):
            complement_pair_check(c4)


class TestPipeline:
    def test_edge_transitive_route(self, c4):
        v = certify_rigidity(c4)
        assert v.status == "Rigid" and v.reason == "EdgeTransitive"
        assert v.exit_code == 0

    def test_distance_regular_route(self):
        g = load_fixture("shrikhande_complement")
        v = certify_rigidity(g)
        assert v.status == "Rigid" and v.reason == "DistanceRegular"
        assert verify_certificate(g, v.certificate_lambda2).ok
        assert verify_certificate(g, v.certificate_lambdaN).ok

    def test_cs_search_route_exact(self, hoffman):
        v = certify_rigidity(hoffman)
        assert v.status == "Rigid" and v.reason == "CSSearch"
        assert v.certificate_lambda2.is_exact
        assert v.certificate_lambdaN.is_exact

    def test_cs_search_route_float(self):
        v = certify_rigidity(load_fixture("klein_d2"))
        assert v.status == "NumericallyRigid"
        assert v.exit_code == 0

    def test_infeasible_route(self):
        v = certify_rigidity(load_fixture("c6_complement"), seed=1)
        assert v.status == "NotRigid" and v.reason == "DualInfeasible"
        assert v.exit_code == 1
        assert v.infeasible is not None
        if v.witness is not None:
            assert v.witness.achieved > v.witness.baseline

    def test_verdict_json_shape(self, c4):
        d = certify_rigidity(c4).to_json_dict()
        assert d["status"] == "Rigid"
        assert "certificate_lambda2" in d and "log" in d
