#include <doctest.h>

#include "oracles.hpp"
#include "qgraph/cliques.hpp"
#include "qgraph/gallery.hpp"

using namespace qgraph;

TEST_CASE("diagonal_system") {
    CHECK(diagonal_system(1).dim() == 1);
    CHECK(diagonal_system(3).dim() == 3);
    CHECK_THROWS_AS(diagonal_system(0), BadShape);

    // the nine-dimensional diagonal system admits a 3-clique
    CHECK(is_clique(diagonal_system(9), parseval_clique(3)));
}

TEST_CASE("complete_bipartite") {
    CHECK(complete_bipartite(1, 4).dim() == 10);
    CHECK(complete_bipartite(2, 2).dim() == 10);
    CHECK(complete_bipartite(1, 1).dim() == 4);
    CHECK_THROWS_AS(complete_bipartite(1, 0), BadShape);

    // membership pattern: scalar diagonal blocks, free off-diagonal blocks
    const OperatorSystem k23 = complete_bipartite(2, 3);
    CMatrix member = CMatrix::Zero(5, 5);
    member.topLeftCorner(2, 2) = 2.5 * CMatrix::Identity(2, 2);
    member.bottomRightCorner(3, 3) = Complex(0, 1) * CMatrix::Identity(3, 3);
    member.topRightCorner(2, 3) = random_gaussian(2, 3, 4);
    member.bottomLeftCorner(3, 2) = random_gaussian(3, 2, 5);
    CHECK(k23.membership_residual(member) < 1e-12);
    CMatrix outside = CMatrix::Zero(5, 5);
    outside(0, 1) = 1.0;
    CHECK(k23.membership_residual(outside) > 0.5);
}

TEST_CASE("m2_direct_sum") {
    const OperatorSystem v = m2_direct_sum();
    CHECK(v.dim() == 8);

    CMatrix corner = CMatrix::Zero(4, 4);
    corner(0, 0) = 1.0;
    CHECK(v.membership_residual(corner) < 1e-12);

    for (int s = 0; s < 25; ++s) {
        CHECK(compression_dim(v, haar_isometry(4, 3, split_seed(77, s))) <= 8);
    }
}

TEST_CASE("skew_system has no rank one projections in its span") {
    const OperatorSystem v = skew_system();
    CHECK(v.dim() == 9);

    double closest = 1e300;
    for (int s = 0; s < 10000; ++s) {
        const CVector u = haar_unit_vector(4, split_seed(0x5E11ull, s));
        closest = std::min(closest, v.membership_residual(u * u.adjoint()));
    }
    CHECK(closest > 0.1);
}

TEST_CASE("except_system compressions match the known values") {
    const OperatorSystem v = except_system();
    CHECK(v.dim() == 3);

    const CMatrix a = except_generator_a();
    const CMatrix b = except_generator_b();
    const double r = 1.0 / std::sqrt(2.0);

    CMatrix q_cols = CMatrix::Zero(4, 3);
    q_cols(0, 0) = 1.0;
    q_cols(1, 1) = r;
    q_cols(2, 1) = r;
    q_cols(3, 2) = 1.0;
    const Isometry q(q_cols);

    CMatrix expected_qaq = CMatrix::Zero(3, 3);
    expected_qaq(0, 0) = 1.0;
    expected_qaq(1, 1) = 0.5;
    CHECK((q.compress(a) - expected_qaq).cwiseAbs().maxCoeff() < 1e-12);

    CMatrix expected_qbq = CMatrix::Zero(3, 3);
    expected_qbq(0, 1) = expected_qbq(1, 0) = r;
    expected_qbq(1, 2) = expected_qbq(2, 1) = r;
    CHECK((q.compress(b) - expected_qbq).cwiseAbs().maxCoeff() < 1e-12);

    // projection onto span((e2+e3)/sqrt(2), (e1-e4)/sqrt(2)) halves A and kills B
    CMatrix p_cols = CMatrix::Zero(4, 2);
    p_cols(1, 0) = r;
    p_cols(2, 0) = r;
    p_cols(0, 1) = r;
    p_cols(3, 1) = -r;
    const Isometry p(p_cols);
    CHECK((p.compress(a) - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(p.compress(b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("span_ia") {
    CHECK(span_ia(CMatrix::Identity(4, 4)).dim() == 1);
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    CHECK(span_ia(d).dim() == 2);

    CMatrix skew = CMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    skew(1, 0) = -1.0;
    CHECK_THROWS_AS(span_ia(skew), NotHermitian);
}

TEST_CASE("lower_bound_matrix") {
    const CMatrix two = lower_bound_matrix(2);
    CHECK(two(0, 0).real() == doctest::Approx(9.0));
    CHECK(two(1, 1).real() == doctest::Approx(3.0));

    const CMatrix four = lower_bound_matrix(4);
    CHECK(four(0, 0).real() == doctest::Approx(625.0));
    CHECK(four(1, 1).real() == doctest::Approx(125.0));
    CHECK(four(2, 2).real() == doctest::Approx(25.0));
    CHECK(four(3, 3).real() == doctest::Approx(5.0));

    CHECK(lower_bound_matrix(1)(0, 0).real() == doctest::Approx(2.0));
    CHECK_THROWS_AS(lower_bound_matrix(13), Overflow);
}

TEST_CASE("random_extension grows the span and respects the size guard") {
    const OperatorSystem base = m2_direct_sum();
    const OperatorSystem hermitian_ext = random_extension(base, 1, 42, true);
    CHECK(hermitian_ext.dim() == 9);
    for (const CMatrix& b : base.basis()) CHECK(hermitian_ext.membership_residual(b) < 1e-9);

    const OperatorSystem general_ext = random_extension(base, 1, 43, false);
    CHECK(general_ext.dim() >= 9);
    CHECK(general_ext.dim() <= 10);

    const OperatorSystem k13_ext = random_extension(complete_bipartite(1, 3), 1, 44, true);
    CHECK(k13_ext.dim() == 9);

    const OperatorSystem full =
        build_system(2, {random_gaussian(2, 2, 1), random_gaussian(2, 2, 2)});
    REQUIRE(full.dim() == 4);
    CHECK_THROWS_AS(random_extension(full, 1, 45), TooLarge);

    const OperatorSystem same_seed = random_extension(base, 1, 42, true);
    CHECK(mutual_span_residual(same_seed.basis(), hermitian_ext.basis()) < 1e-12);
}
