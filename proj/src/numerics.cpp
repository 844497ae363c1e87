#include "qgraph/numerics.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qgraph {

void ToleranceConfig::validate() const {
    for (double t : {rank_tol, eig_cluster_tol, circle_tol}) {
        if (!(t > 0.0) || !(t < 1e-2)) {
            throw BadParams("tolerances must lie in (0, 1e-2)");
        }
    }
}

void require_finite(const CMatrix& a) {
    if (!a.allFinite()) {
        throw BadParams("matrix contains NaN or Inf entries");
    }
}

Isometry::Isometry(CMatrix columns, double tol) : cols_(std::move(columns)) {
    const int n = static_cast<int>(cols_.rows());
    const int k = static_cast<int>(cols_.cols());
    if (k < 1 || k > n) {
        throw BadShape("isometry needs 1 <= k <= n, got k=" + std::to_string(k) +
                       ", n=" + std::to_string(n));
    }
    require_finite(cols_);
    const double dev = (cols_.adjoint() * cols_ - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (dev > tol) {
        std::ostringstream msg;
        msg << "columns are not orthonormal (deviation " << dev << ")";
        throw BadShape(msg.str());
    }
}

int SpectralData::cluster_of(int index) const {
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        if (index >= clusters[c].first && index < clusters[c].second) return static_cast<int>(c);
    }
    throw BadShape("eigenvalue index out of range");
}

double SpectralData::cluster_mean(int cluster) const {
    const auto [lo, hi] = clusters.at(cluster);
    double sum = 0.0;
    for (int i = lo; i < hi; ++i) sum += eigenvalues[i];
    return sum / (hi - lo);
}

SpectralData hermitian_eig(const CMatrix& a, const ToleranceConfig& cfg) {
    if (a.rows() != a.cols()) {
        throw NotSquare("hermitian_eig needs a square matrix");
    }
    require_finite(a);
    const CMatrix sym = 0.5 * (a + a.adjoint());

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Inconsistent("eigendecomposition failed to converge");
    }

    SpectralData out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    out.spectral_norm = out.eigenvalues.size() ? out.eigenvalues.cwiseAbs().maxCoeff() : 0.0;

    const double herm_dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > cfg.rank_tol * std::max(1.0, out.spectral_norm)) {
        std::ostringstream msg;
        msg << "matrix deviates from Hermitian by " << herm_dev;
        throw NotHermitian(msg.str());
    }

    const int n = static_cast<int>(out.eigenvalues.size());
    const double gap = cfg.eig_cluster_tol * std::max(1.0, out.spectral_norm);
    int start = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || out.eigenvalues[i] - out.eigenvalues[i - 1] > gap) {
            out.clusters.emplace_back(start, i);
            start = i;
        }
    }
    return out;
}

RankInfo rank_info(const CMatrix& stacked_columns, const ToleranceConfig& cfg) {
    RankInfo info;
    Eigen::JacobiSVD<CMatrix> svd(stacked_columns);
    info.singular_values = svd.singularValues();
    if (info.singular_values.size() == 0) return info;
    const double sigma_max = info.singular_values[0];
    const double cutoff = cfg.rank_tol * sigma_max;
    for (int i = 0; i < info.singular_values.size(); ++i) {
        const double s = info.singular_values[i];
        if (s > cutoff) info.rank += 1;
        if (sigma_max > 0.0 && s >= cutoff / 10.0 && s <= cutoff * 10.0) info.borderline = true;
    }
    return info;
}

int numerical_rank(const std::vector<CVector>& vectors, const ToleranceConfig& cfg) {
    if (vectors.empty()) {
        throw BadShape("numerical_rank needs at least one vector");
    }
    const auto len = vectors.front().size();
    CMatrix stack(len, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != len) {
            throw DimensionMismatch("numerical_rank: vectors have unequal lengths");
        }
        stack.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return rank_info(stack, cfg).rank;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t counter) {
    // splitmix64 finalizer over master xor a counter stride
    std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (counter + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CMatrix random_gaussian(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

Isometry haar_isometry(int n, int k, std::uint64_t seed) {
    if (n < 1 || k < 1 || k > n) {
        throw BadShape("haar_isometry needs 1 <= k <= n");
    }
    const CMatrix g = random_gaussian(n, k, seed);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, k);
    const CMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    // phase fix: without it the QR map is not Haar
    for (int j = 0; j < k; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return Isometry(std::move(q), 1e-10);
}

CVector haar_unit_vector(int n, std::uint64_t seed) {
    return haar_isometry(n, 1, seed).matrix().col(0);
}

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("hs_inner: shapes differ");
    }
    return (b.conjugate().cwiseProduct(a)).sum();
}

double spectral_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()[0];
}

CVector vec(const CMatrix& a) {
    CVector v(a.size());
    Eigen::Index idx = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) v[idx++] = a(i, j);
    return v;
}

CMatrix unvec(const CVector& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
        throw DimensionMismatch("unvec: length does not match shape");
    }
    CMatrix a(rows, cols);
    Eigen::Index idx = 0;
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a(i, j) = v[idx++];
    return a;
}

Isometry complement_isometry(const Isometry& t) {
    const int n = t.n();
    const int k = t.k();
    if (k >= n) {
        throw BadShape("complement of a full isometry is empty");
    }
    Eigen::HouseholderQR<CMatrix> qr(t.matrix());
    const CMatrix full = qr.householderQ() * CMatrix::Identity(n, n);
    return Isometry(full.rightCols(n - k), 1e-10);
}

Isometry complement_of_vector(const CVector& unit) {
    return complement_isometry(Isometry(unit, 1e-8));
}

} // namespace qgraph
