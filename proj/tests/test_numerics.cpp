#include <doctest.h>

#include "oracles.hpp"
#include "qgraph/numerics.hpp"

using namespace qgraph;

namespace {

CMatrix diag3(double a, double b, double c) {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

} // namespace

TEST_CASE("hermitian_eig sorts eigenvalues and clusters them") {
    const SpectralData eig = hermitian_eig(diag3(3, 1, 2));
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(eig.eigenvalues[2] == doctest::Approx(3.0));
    CHECK(eig.clusters.size() == 3);

    const SpectralData id = hermitian_eig(CMatrix::Identity(3, 3));
    CHECK(id.clusters.size() == 1);
    CHECK(id.multiplicity(0) == 3);

    CMatrix flip = CMatrix::Zero(2, 2);
    flip(0, 1) = flip(1, 0) = 1.0;
    const SpectralData sym = hermitian_eig(flip);
    CHECK(sym.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(sym.eigenvalues[1] == doctest::Approx(1.0));
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(std::abs(sym.eigenvectors(0, i)) - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK(std::abs(std::abs(sym.eigenvectors(1, i)) - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("hermitian_eig rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(CMatrix::Zero(2, 3)), NotSquare);
    CMatrix skew = CMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    skew(1, 0) = -1.0;
    CHECK_THROWS_AS(hermitian_eig(skew), NotHermitian);
}

TEST_CASE("eigendecomposition reconstructs random Hermitians") {
    for (int n : {2, 5, 9, 16}) {
        for (int rep = 0; rep < 5; ++rep) {
            const CMatrix a = testing::random_hermitian(n, split_seed(7, 10 * n + rep));
            const SpectralData eig = hermitian_eig(a);
            CMatrix rebuilt = CMatrix::Zero(n, n);
            for (int i = 0; i < n; ++i) {
                rebuilt += eig.eigenvalues[i] * eig.eigenvectors.col(i) *
                           eig.eigenvectors.col(i).adjoint();
            }
            CHECK((rebuilt - a).norm() <= 1e-8 * eig.spectral_norm);
            CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - CMatrix::Identity(n, n))
                      .cwiseAbs()
                      .maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("numerical_rank counts independent directions") {
    CMatrix sx = CMatrix::Zero(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    const CMatrix id = CMatrix::Identity(2, 2);
    CHECK(numerical_rank({vec(id), vec(sx), vec(id + sx)}) == 2);
    CHECK(numerical_rank({CVector::Zero(4), CVector::Zero(4)}) == 0);

    CHECK_THROWS_AS(numerical_rank({CVector::Zero(4), CVector::Zero(3)}), DimensionMismatch);
    CHECK_THROWS_AS(numerical_rank({}), BadShape);
}

TEST_CASE("numerical_rank is scale and duplication invariant") {
    std::vector<CVector> vectors;
    for (int i = 0; i < 4; ++i) vectors.push_back(vec(testing::random_hermitian(3, 100 + i)));
    const int base = numerical_rank(vectors);
    CHECK(base == testing::independent_rank(vectors));

    std::vector<CVector> scaled;
    for (const CVector& v : vectors) scaled.push_back(Complex(0.0, -2.5) * v);
    CHECK(numerical_rank(scaled) == base);

    std::vector<CVector> duplicated = vectors;
    duplicated.insert(duplicated.end(), vectors.begin(), vectors.end());
    CHECK(numerical_rank(duplicated) == base);
}

TEST_CASE("haar_isometry is deterministic, orthonormal and shape-checked") {
    const Isometry u = haar_isometry(4, 4, 11);
    CHECK((u.matrix().adjoint() * u.matrix() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK_THROWS_AS(haar_isometry(2, 3, 11), BadShape);
    CHECK_THROWS_AS(haar_isometry(2, 0, 11), BadShape);

    const Isometry a = haar_isometry(3, 1, 99);
    const Isometry b = haar_isometry(3, 1, 99);
    CHECK((a.matrix() - b.matrix()).norm() == 0.0);
    const Isometry c = haar_isometry(3, 1, 100);
    CHECK((a.matrix() - c.matrix()).norm() > 1e-3);
}

TEST_CASE("haar unit vectors distribute evenly over coordinates") {
    double sum = 0.0;
    const int samples = 10000;
    for (int s = 0; s < samples; ++s) {
        const CVector v = haar_unit_vector(4, split_seed(1234, s));
        sum += std::norm(v[0]);
    }
    CHECK(std::abs(sum / samples - 0.25) < 0.02);
}

TEST_CASE("hs_inner matches the trace form") {
    CHECK(hs_inner(CMatrix::Identity(5, 5), CMatrix::Identity(5, 5)).real() ==
          doctest::Approx(5.0));
    CMatrix e11 = CMatrix::Zero(2, 2), e22 = CMatrix::Zero(2, 2);
    e11(0, 0) = 1.0;
    e22(1, 1) = 1.0;
    CHECK(std::abs(hs_inner(e11, e22)) == doctest::Approx(0.0));

    const CMatrix a = random_gaussian(3, 3, 5);
    CHECK(hs_inner(a, a).real() == doctest::Approx(a.squaredNorm()));
    CHECK(std::abs(hs_inner(a, a) - (a.adjoint() * a).trace()) < 1e-12);
    CHECK_THROWS_AS(hs_inner(a, CMatrix::Zero(2, 2)), DimensionMismatch);
}

TEST_CASE("complement_isometry spans the orthocomplement") {
    const Isometry t = haar_isometry(5, 2, 3);
    const Isometry c = complement_isometry(t);
    CHECK(c.k() == 3);
    CHECK((c.matrix().adjoint() * t.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((t.projection() + c.projection() - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("tolerance config rejects silly values") {
    ToleranceConfig cfg;
    cfg.rank_tol = 0.5;
    CHECK_THROWS_AS(cfg.validate(), BadParams);
    cfg.rank_tol = -1e-9;
    CHECK_THROWS_AS(cfg.validate(), BadParams);
    CHECK_NOTHROW(ToleranceConfig{}.validate());
}
