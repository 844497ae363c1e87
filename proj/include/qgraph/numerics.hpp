#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/errors.hpp"

namespace qgraph {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Relative tolerances shared by every rank, clustering and circle-solving
/// decision in the library. All comparisons are made against
/// max(1, matrix norm), never against raw absolute values.
struct ToleranceConfig {
    double rank_tol = 1e-9;        ///< singular values below rank_tol * sigma_max count as zero
    double eig_cluster_tol = 1e-8; ///< eigenvalues within eig_cluster_tol * max(1, |A|_2) cluster
    double circle_tol = 1e-7;      ///< residual threshold when solving constraints on |z| = 1

    /// Throws BadParams unless every tolerance lies in (0, 1e-2).
    void validate() const;
};

/// An n x k matrix with orthonormal columns; stands for the rank-k
/// projection onto its column span via P = T T*.
class Isometry {
public:
    explicit Isometry(CMatrix columns, double tol = 1e-9);

    int n() const { return static_cast<int>(cols_.rows()); }
    int k() const { return static_cast<int>(cols_.cols()); }
    const CMatrix& matrix() const { return cols_; }

    CMatrix projection() const { return cols_ * cols_.adjoint(); }
    CMatrix compress(const CMatrix& a) const { return cols_.adjoint() * a * cols_; }

private:
    CMatrix cols_;
};

/// Eigendecomposition of a Hermitian matrix plus the cluster structure of
/// its spectrum. Eigenvalues ascend; clusters are maximal runs of
/// consecutive eigenvalues within eig_cluster_tol * max(1, |A|_2).
struct SpectralData {
    RVector eigenvalues;
    CMatrix eigenvectors; ///< column i pairs with eigenvalues[i]
    std::vector<std::pair<int, int>> clusters; ///< half-open index ranges [first, second)
    double spectral_norm = 0.0;

    int cluster_of(int index) const;
    int multiplicity(int cluster) const { return clusters[cluster].second - clusters[cluster].first; }
    double cluster_mean(int cluster) const;
};

struct RankInfo {
    int rank = 0;
    bool borderline = false; ///< some singular value within a factor 10 of the cutoff
    RVector singular_values; ///< descending
};

/// Symmetrizes the input as (A + A*)/2 and diagonalizes. Throws NotSquare,
/// or NotHermitian when |A - A*|_max exceeds rank_tol * max(1, |A|_2).
SpectralData hermitian_eig(const CMatrix& a, const ToleranceConfig& cfg = {});

/// Number of singular values of the stacked vectors exceeding
/// rank_tol * sigma_max; 0 for an all-zero stack.
int numerical_rank(const std::vector<CVector>& vectors, const ToleranceConfig& cfg = {});

/// Rank of a matrix given by its columns, with the singular values and a
/// borderline flag for gap diagnostics.
RankInfo rank_info(const CMatrix& stacked_columns, const ToleranceConfig& cfg = {});

/// QR orthonormalization of an n x k matrix of independent standard complex
/// Gaussians, with the usual phase fix so the distribution is Haar.
/// Deterministic in (n, k, seed); throws BadShape unless 1 <= k <= n.
Isometry haar_isometry(int n, int k, std::uint64_t seed);

CVector haar_unit_vector(int n, std::uint64_t seed);

/// Hilbert-Schmidt inner product trace(B* A). Throws DimensionMismatch.
Complex hs_inner(const CMatrix& a, const CMatrix& b);

/// Counter-based derivation of per-sample seeds from a master seed.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t counter);

/// Operator (spectral) norm.
double spectral_norm(const CMatrix& a);

/// Matrix with independent standard complex Gaussian entries.
CMatrix random_gaussian(int rows, int cols, std::uint64_t seed);

CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, int rows, int cols);

/// Orthonormal basis of ran(T)^perp, as an n x (n-k) isometry.
Isometry complement_isometry(const Isometry& t);
Isometry complement_of_vector(const CVector& unit);

void require_finite(const CMatrix& a);

inline CMatrix identity(int n) { return CMatrix::Identity(n, n); }

} // namespace qgraph
