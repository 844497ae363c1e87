#include <doctest.h>

#include "oracles.hpp"
#include "qgraph/cliques.hpp"
#include "qgraph/gallery.hpp"

using namespace qgraph;

TEST_CASE("parseval_frame small cases") {
    const ParsevalFrame one = parseval_frame(1);
    CHECK(one.raw_vectors.size() == 1);
    CHECK(one.frame_operator(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(one.vectors[0][0] - Complex(1.0)) < 1e-12);

    // direct summation of the rank-one frame terms, kept independent of the
    // library's accumulation
    const ParsevalFrame two = parseval_frame(2);
    CMatrix s = CMatrix::Zero(2, 2);
    for (const CVector& v : two.raw_vectors) s += v * v.adjoint();
    CHECK((s - two.frame_operator).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(two.frame_operator(0, 0).real() == doctest::Approx(3.0));
    CHECK(two.frame_operator(1, 1).real() == doctest::Approx(3.0));
    CHECK(two.frame_operator(0, 1).real() == doctest::Approx(1.0));
    CHECK(two.frame_operator(0, 1).imag() == doctest::Approx(-1.0));
    CHECK(two.frame_operator(1, 0).real() == doctest::Approx(1.0));
    CHECK(two.frame_operator(1, 0).imag() == doctest::Approx(1.0));

    CHECK_THROWS_AS(parseval_frame(0), BadShape);
}

TEST_CASE("parseval identity, independence and frame operator bound") {
    for (int k = 1; k <= 6; ++k) {
        const ParsevalFrame frame = parseval_frame(k);
        REQUIRE(static_cast<int>(frame.vectors.size()) == k * k);

        CMatrix sum = CMatrix::Zero(k, k);
        std::vector<CVector> outer_products;
        for (const CVector& w : frame.vectors) {
            sum += w * w.adjoint();
            outer_products.push_back(vec(w * w.adjoint()));
        }
        CHECK((sum - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(numerical_rank(outer_products) == k * k);

        const SpectralData eig = hermitian_eig(frame.frame_operator - CMatrix::Identity(k, k));
        CHECK(eig.eigenvalues[0] >= -1e-12);
    }
}

TEST_CASE("parseval_clique compresses the diagonal system onto everything") {
    for (int k = 1; k <= 4; ++k) {
        const Isometry t = parseval_clique(k);
        CHECK(t.n() == k * k);
        CHECK(t.k() == k);
        CHECK(compression_dim(diagonal_system(k * k), t) == k * k);
    }
    CHECK(is_clique(diagonal_system(9), parseval_clique(3)));
}

TEST_CASE("k22_witness reproduces the kernel computation") {
    const auto [witness, kernel] = k22_witness();
    CHECK(witness.compress(kernel).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(complete_bipartite(2, 2).membership_residual(kernel) < 1e-12);
    CHECK(is_clique(complete_bipartite(2, 2), witness));

    // the orthocomplement direction really is (1,1,1,1)
    CVector ones = CVector::Constant(4, 1.0);
    CHECK((witness.matrix().adjoint() * ones).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("generic_compression_dim on the gallery") {
    const OperatorSystem full =
        build_system(3, {random_gaussian(3, 3, 1), random_gaussian(3, 3, 2),
                         random_gaussian(3, 3, 3), random_gaussian(3, 3, 4),
                         random_gaussian(3, 3, 5)});
    REQUIRE(full.dim() == 9);
    CHECK(generic_compression_dim(full, 3, 1, 7) == 9);
    CHECK(generic_compression_dim(m2_direct_sum(), 3, 50, 7) <= 8);
    CHECK(generic_compression_dim(complete_bipartite(2, 2), 3, 50, 7) == 9);
    CHECK_THROWS_AS(generic_compression_dim(full, 4, 1, 7), BadShape);
}

TEST_CASE("find_three_clique") {
    const auto witness = find_three_clique(diagonal_system(9), 32, 5);
    REQUIRE(witness);
    CHECK(is_clique(diagonal_system(9), *witness));

    CHECK_FALSE(find_three_clique(complete_bipartite(1, 5), 500, 5));

    const OperatorSystem full =
        build_system(3, {random_gaussian(3, 3, 1), random_gaussian(3, 3, 2),
                         random_gaussian(3, 3, 3), random_gaussian(3, 3, 4),
                         random_gaussian(3, 3, 5)});
    CHECK(find_three_clique(full, 8, 5).has_value());

    CHECK_THROWS_AS(find_three_clique(diagonal_system(2), 8, 5), BadShape);
}

TEST_CASE("a single sample almost always attains the generic rank") {
    int agree = 0;
    int total = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t seed = split_seed(0x90D, trial);
        const OperatorSystem v =
            build_system(4, {random_gaussian(4, 4, split_seed(seed, 1)),
                             random_gaussian(4, 4, split_seed(seed, 2)),
                             random_gaussian(4, 4, split_seed(seed, 3)),
                             random_gaussian(4, 4, split_seed(seed, 4)),
                             random_gaussian(4, 4, split_seed(seed, 5))});
        if (v.dim() < 9) continue;
        ++total;
        const int single = generic_compression_dim(v, 3, 1, split_seed(seed, 4));
        const int many = generic_compression_dim(v, 3, 50, split_seed(seed, 4));
        if (single == many) ++agree;
    }
    REQUIRE(total == 50);
    CHECK(agree >= 48); // 95 percent
}
