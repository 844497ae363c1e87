#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qgraph/cliques.hpp"
#include "qgraph/gallery.hpp"
#include "qgraph/opsys.hpp"

using namespace qgraph;

namespace {

CVector basis_vec(int n, int i) {
    CVector e = CVector::Zero(n);
    e[i] = 1.0;
    return e;
}

void check_invariants(const OperatorSystem& v) {
    const int n = v.n();
    CHECK(v.membership_residual(CMatrix::Identity(n, n)) <= 1e-10 * std::sqrt(double(n)));
    for (const CMatrix& b : v.basis()) {
        CMatrix adj = b.adjoint();
        CHECK(v.membership_residual(adj) <= 1e-10);
    }
    for (std::size_t i = 0; i < v.basis().size(); ++i) {
        for (std::size_t j = 0; j < v.basis().size(); ++j) {
            const Complex ip = hs_inner(v.basis()[i], v.basis()[j]);
            CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    }
    for (const CMatrix& h : v.herm_basis()) {
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(mutual_span_residual(v.basis(), v.herm_basis()) <= 1e-10);
}

} // namespace

TEST_CASE("build_system dimensions") {
    const OperatorSystem scalars = build_system(3, {});
    CHECK(scalars.dim() == 1);
    check_invariants(scalars);

    CMatrix e12 = CMatrix::Zero(2, 2);
    e12(0, 1) = 1.0;
    const OperatorSystem closed = build_system(2, {e12});
    CHECK(closed.dim() == 3); // I, e12 and its adjoint
    check_invariants(closed);

    CHECK(complete_bipartite(2, 2).dim() == 10);

    CHECK_THROWS_AS(build_system(2, {CMatrix::Zero(3, 3)}), DimensionMismatch);
}

TEST_CASE("dim of the named families") {
    for (int n = 1; n <= 5; ++n) CHECK(complete_bipartite(1, n).dim() == 2 * n + 2);
    for (int n = 1; n <= 6; ++n) CHECK(diagonal_system(n).dim() == n);
    const OperatorSystem full = build_system(3, {random_gaussian(3, 3, 1), random_gaussian(3, 3, 2),
                                                 random_gaussian(3, 3, 3), random_gaussian(3, 3, 4),
                                                 random_gaussian(3, 3, 5)});
    CHECK(full.dim() == 9);
}

TEST_CASE("compress keeps structure") {
    const OperatorSystem d3 = diagonal_system(3);
    CMatrix first_two(3, 2);
    first_two.col(0) = basis_vec(3, 0);
    first_two.col(1) = basis_vec(3, 1);
    const OperatorSystem compressed = compress(d3, Isometry(first_two));
    CHECK(compressed.dim() == 2);
    CHECK(mutual_span_residual(compressed.basis(), diagonal_system(2).basis()) < 1e-10);

    const OperatorSystem k13 = complete_bipartite(1, 3);
    const OperatorSystem whole = compress(k13, Isometry(CMatrix::Identity(4, 4)));
    CHECK(mutual_span_residual(whole.basis(), k13.basis()) < 1e-9);

    // rank-3 compressions of K_{1,n} land inside a copy of K_{1,2}
    for (int s = 0; s < 5; ++s) {
        const OperatorSystem small = compress(k13, haar_isometry(4, 3, split_seed(21, s)));
        CHECK(small.dim() <= complete_bipartite(1, 2).dim());
    }
}

TEST_CASE("compression_dim examples") {
    const auto [witness, kernel] = k22_witness();
    CHECK(compression_dim(complete_bipartite(2, 2), witness) == 9);

    const OperatorSystem k22 = complete_bipartite(2, 2);
    std::vector<CVector> compressions;
    for (const CMatrix& b : k22.basis()) {
        compressions.push_back(vec(witness.compress(b)));
    }
    CHECK(testing::independent_rank(compressions) == 9);
    CHECK(numerical_rank(compressions) == 9);

    for (int s = 0; s < 4; ++s) {
        const Isometry t = haar_isometry(4, 1, split_seed(5, s));
        CHECK(compression_dim(complete_bipartite(2, 2), t) == 1);
        CHECK(compression_dim(m2_direct_sum(), t) == 1);
    }
}

TEST_CASE("anticlique and clique predicates") {
    const OperatorSystem d4 = diagonal_system(4);
    for (int s = 0; s < 5; ++s) {
        CHECK_FALSE(is_anticlique(d4, haar_isometry(4, 2, split_seed(31, s))));
    }

    const OperatorSystem k13 = complete_bipartite(1, 3);
    CMatrix tail(4, 3);
    tail.col(0) = basis_vec(4, 1);
    tail.col(1) = basis_vec(4, 2);
    tail.col(2) = basis_vec(4, 3);
    const auto cert = is_anticlique(k13, Isometry(tail));
    REQUIRE(cert);
    for (std::size_t i = 0; i < cert->mus.size(); ++i) {
        const CMatrix& h = k13.herm_basis()[i];
        const CMatrix dev = cert->isometry.compress(h) -
                            cert->mus[i] * CMatrix::Identity(3, 3);
        CHECK(dev.norm() <= 1e-8 * std::max(1.0, spectral_norm(h)));
    }
    CHECK(is_anticlique(k13, haar_isometry(4, 1, 7)).has_value());

    const OperatorSystem full = build_system(3, {random_gaussian(3, 3, 1), random_gaussian(3, 3, 2),
                                                 random_gaussian(3, 3, 3), random_gaussian(3, 3, 4),
                                                 random_gaussian(3, 3, 5)});
    CHECK(is_clique(full, haar_isometry(3, 2, 9)));
    CHECK(is_clique(complete_bipartite(2, 2), k22_witness().first));
    const OperatorSystem d3 = diagonal_system(3);
    CHECK_FALSE(is_clique(d3, haar_isometry(3, 2, 13)));
}

TEST_CASE("degree and its sampled minimum") {
    const OperatorSystem d5 = diagonal_system(5);
    for (int i = 0; i < 5; ++i) CHECK(degree(d5, basis_vec(5, i)) == 1);

    const OperatorSystem full = build_system(2, {random_gaussian(2, 2, 1), random_gaussian(2, 2, 2)});
    REQUIRE(full.dim() == 4);
    CHECK(degree(full, haar_unit_vector(2, 3)) == 2);
    CHECK(min_degree_estimate(full, 20, 0) == 2);

    // degree of e_1 against a raw bipartite basis, cross-checked by QR
    for (int n = 2; n <= 4; ++n) {
        const OperatorSystem k1n = complete_bipartite(1, n);
        std::vector<CVector> images;
        std::vector<CMatrix> raw{CMatrix::Identity(n + 1, n + 1)};
        CMatrix e11 = CMatrix::Zero(n + 1, n + 1);
        e11(0, 0) = 1.0;
        raw.push_back(e11);
        for (int i = 1; i <= n; ++i) {
            CMatrix up = CMatrix::Zero(n + 1, n + 1), down = CMatrix::Zero(n + 1, n + 1);
            up(0, i) = 1.0;
            down(i, 0) = 1.0;
            raw.push_back(up);
            raw.push_back(down);
        }
        for (const CMatrix& m : raw) images.push_back(m * basis_vec(n + 1, 0));
        CHECK(testing::independent_rank(images) == n + 1);
        CHECK(degree(k1n, basis_vec(n + 1, 0)) == n + 1);
    }

    CHECK(min_degree_estimate(diagonal_system(4), 10, 0) == 1);
    CHECK_THROWS_AS(degree(d5, 2.0 * basis_vec(5, 0)), NotUnit);
}

TEST_CASE("compression dims are unitarily invariant and monotone") {
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t seed = split_seed(0xF00Dull, trial);
        const int n = 3 + static_cast<int>(seed % 3);
        const OperatorSystem v =
            build_system(n, {random_gaussian(n, n, split_seed(seed, 1)),
                             testing::random_hermitian(n, split_seed(seed, 2))});
        const int k = 1 + static_cast<int>(split_seed(seed, 3) % n);
        const Isometry t = haar_isometry(n, k, split_seed(seed, 4));
        const CMatrix u = testing::random_unitary(n, split_seed(seed, 5));

        const int plain = compression_dim(v, t);
        const int conjugated =
            compression_dim(conjugate_system(v, u), Isometry(u * t.matrix(), 1e-8));
        CHECK(plain == conjugated);
        CHECK(plain <= std::min(v.dim(), k * k));
        CHECK(plain >= 1);
    }
}

TEST_CASE("build_system is idempotent on its own basis") {
    const OperatorSystem k22 = complete_bipartite(2, 2);
    const OperatorSystem again = build_system(4, k22.basis());
    CHECK(again.dim() == k22.dim());
    CHECK(mutual_span_residual(again.basis(), k22.basis()) <= 1e-9);
}

TEST_CASE("anticliques restrict to subsystems") {
    const OperatorSystem k14 = complete_bipartite(1, 4);
    CMatrix tail(5, 2);
    tail.col(0) = basis_vec(5, 1);
    tail.col(1) = basis_vec(5, 3);
    const Isometry t(tail);
    REQUIRE(is_anticlique(k14, t));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<CMatrix> gens;
        for (int g = 0; g < 3; ++g) {
            CMatrix m = CMatrix::Zero(5, 5);
            for (const CMatrix& h : k14.herm_basis()) m += coeff(rng) * h;
            gens.push_back(m);
        }
        const OperatorSystem sub = build_system(5, gens);
        CHECK(is_anticlique(sub, t).has_value());
    }
}

TEST_CASE("gallery systems satisfy the stored invariants") {
    check_invariants(complete_bipartite(2, 3));
    check_invariants(m2_direct_sum());
    check_invariants(skew_system());
    check_invariants(except_system());
    check_invariants(diagonal_system(5));
}
