#include "qgraph/opsys.hpp"

#include <cmath>

namespace qgraph {

namespace {

constexpr Complex kI{0.0, 1.0};

// Isometric real embedding of Hermitian matrices: diagonal entries, then
// sqrt(2) * (Re, Im) of the strict upper triangle. Preserves the HS inner
// product, so a real SVD of embedded vectors orthonormalizes Hermitians.
RVector embed_hermitian(const CMatrix& h) {
    const int n = static_cast<int>(h.rows());
    RVector v(n * n);
    Eigen::Index idx = 0;
    for (int i = 0; i < n; ++i) v[idx++] = h(i, i).real();
    const double s = std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            v[idx++] = s * h(i, j).real();
            v[idx++] = s * h(i, j).imag();
        }
    }
    return v;
}

CMatrix unembed_hermitian(const RVector& v, int n) {
    CMatrix h(n, n);
    Eigen::Index idx = 0;
    for (int i = 0; i < n; ++i) h(i, i) = v[idx++];
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double re = v[idx++] * s;
            const double im = v[idx++] * s;
            h(i, j) = Complex(re, im);
            h(j, i) = Complex(re, -im);
        }
    }
    return h;
}

CMatrix traceless_part(const CMatrix& m) {
    const int n = static_cast<int>(m.rows());
    return m - (m.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
}

} // namespace

double OperatorSystem::membership_residual(const CMatrix& m) const {
    if (m.rows() != n_ || m.cols() != n_) {
        throw DimensionMismatch("membership_residual: matrix has wrong shape");
    }
    CMatrix rem = m;
    for (const CMatrix& b : basis_) rem -= hs_inner(m, b) * b;
    return rem.norm();
}

OperatorSystem build_system(int n, const std::vector<CMatrix>& generators,
                            const ToleranceConfig& cfg) {
    if (n < 1) throw BadShape("ambient dimension must be positive");
    cfg.validate();

    std::vector<CMatrix> candidates;
    candidates.reserve(2 * generators.size());
    double scale = 0.0;
    for (const CMatrix& g : generators) {
        if (g.rows() != n || g.cols() != n) {
            throw DimensionMismatch("build_system: generator is not n x n");
        }
        require_finite(g);
        scale = std::max(scale, g.norm());
        candidates.push_back(g);
        candidates.push_back(g.adjoint());
    }

    const CMatrix id_norm = CMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n));

    // Complex basis: identity first, then an SVD-orthonormal basis of the
    // traceless parts. Generators are never assumed independent.
    std::vector<CMatrix> basis{id_norm};
    int rank = 0;
    if (!candidates.empty()) {
        CMatrix stack(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(candidates.size()));
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            stack.col(static_cast<Eigen::Index>(j)) = vec(traceless_part(candidates[j]));
        }
        Eigen::JacobiSVD<CMatrix> svd(stack, Eigen::ComputeThinU);
        const RVector& sing = svd.singularValues();
        const double sigma_max = sing.size() ? sing[0] : 0.0;
        const double cutoff = cfg.rank_tol * std::max(sigma_max, scale);
        for (int i = 0; i < sing.size(); ++i) {
            if (sing[i] > cutoff) ++rank;
        }
        for (int i = 0; i < rank; ++i) {
            basis.push_back(unvec(svd.matrixU().col(i), n, n));
        }
    }

    // Hermitian basis: same construction but over the real embedding, fed
    // with the Hermitian and anti-Hermitian parts of the generators.
    std::vector<CMatrix> herm_basis{id_norm};
    if (!candidates.empty()) {
        std::vector<CMatrix> herm_candidates;
        herm_candidates.reserve(2 * generators.size());
        for (const CMatrix& g : generators) {
            herm_candidates.push_back(traceless_part(0.5 * (g + g.adjoint())));
            herm_candidates.push_back(traceless_part((g - g.adjoint()) / (2.0 * kI)));
        }
        Eigen::MatrixXd stack(static_cast<Eigen::Index>(n) * n,
                              static_cast<Eigen::Index>(herm_candidates.size()));
        for (std::size_t j = 0; j < herm_candidates.size(); ++j) {
            stack.col(static_cast<Eigen::Index>(j)) = embed_hermitian(herm_candidates[j]);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeThinU);
        const RVector& sing = svd.singularValues();
        const double sigma_max = sing.size() ? sing[0] : 0.0;
        const double cutoff = cfg.rank_tol * std::max(sigma_max, scale);
        int herm_rank = 0;
        for (int i = 0; i < sing.size(); ++i) {
            if (sing[i] > cutoff) ++herm_rank;
        }
        if (herm_rank != rank) {
            throw Inconsistent("Hermitian basis rank disagrees with complex rank; "
                               "the generator set is numerically degenerate");
        }
        for (int i = 0; i < herm_rank; ++i) {
            herm_basis.push_back(unembed_hermitian(svd.matrixU().col(i), n));
        }
    }

    return OperatorSystem(n, std::move(basis), std::move(herm_basis));
}

OperatorSystem compress(const OperatorSystem& v, const Isometry& t, const ToleranceConfig& cfg) {
    if (t.n() != v.n()) throw DimensionMismatch("compress: isometry ambient dimension differs");
    std::vector<CMatrix> gens;
    gens.reserve(v.dim());
    for (const CMatrix& a : v.basis()) gens.push_back(t.compress(a));
    return build_system(t.k(), gens, cfg);
}

RankInfo compression_rank_info(const OperatorSystem& v, const Isometry& t,
                               const ToleranceConfig& cfg) {
    if (t.n() != v.n()) throw DimensionMismatch("compression_dim: isometry ambient dimension differs");
    const int k = t.k();
    CMatrix stack(static_cast<Eigen::Index>(k) * k, v.dim());
    for (int j = 0; j < v.dim(); ++j) stack.col(j) = vec(t.compress(v.basis()[j]));
    return rank_info(stack, cfg);
}

int compression_dim(const OperatorSystem& v, const Isometry& t, const ToleranceConfig& cfg) {
    return compression_rank_info(v, t, cfg).rank;
}

std::optional<AnticliqueCertificate> is_anticlique(const OperatorSystem& v, const Isometry& t,
                                                   const ToleranceConfig& cfg) {
    if (compression_dim(v, t, cfg) != 1) return std::nullopt;
    AnticliqueCertificate cert{t, {}};
    cert.mus.reserve(v.herm_basis().size());
    for (const CMatrix& h : v.herm_basis()) {
        cert.mus.push_back(t.compress(h).trace() / static_cast<double>(t.k()));
    }
    return cert;
}

bool is_clique(const OperatorSystem& v, const Isometry& t, const ToleranceConfig& cfg) {
    const int k = t.k();
    return compression_dim(v, t, cfg) == k * k;
}

int degree(const OperatorSystem& v, const CVector& unit, const ToleranceConfig& cfg) {
    if (unit.size() != v.n()) throw DimensionMismatch("degree: vector length differs from n");
    if (std::abs(unit.norm() - 1.0) > 1e-10) throw NotUnit("degree: vector is not unit length");
    std::vector<CVector> images;
    images.reserve(v.dim());
    for (const CMatrix& a : v.basis()) images.push_back(a * unit);
    return numerical_rank(images, cfg);
}

int min_degree_estimate(const OperatorSystem& v, int samples, std::uint64_t seed,
                        const ToleranceConfig& cfg) {
    if (samples < 1) throw BadParams("min_degree_estimate needs samples >= 1");
    int best = v.n() + 1;
    for (int i = 0; i < v.n(); ++i) {
        CVector e = CVector::Zero(v.n());
        e[i] = 1.0;
        best = std::min(best, degree(v, e, cfg));
    }
    for (int s = 0; s < samples; ++s) {
        best = std::min(best, degree(v, haar_unit_vector(v.n(), split_seed(seed, s)), cfg));
    }
    return best;
}

OperatorSystem conjugate_system(const OperatorSystem& v, const CMatrix& u,
                                const ToleranceConfig& cfg) {
    if (u.rows() != v.n() || u.cols() != v.n()) {
        throw DimensionMismatch("conjugate_system: unitary has wrong shape");
    }
    std::vector<CMatrix> gens;
    gens.reserve(v.dim());
    for (const CMatrix& a : v.basis()) gens.push_back(u * a * u.adjoint());
    return build_system(v.n(), gens, cfg);
}

double mutual_span_residual(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
    auto one_sided = [](const std::vector<CMatrix>& from, const std::vector<CMatrix>& onto) {
        if (onto.empty()) return from.empty() ? 0.0 : 1.0;
        const int n = static_cast<int>(onto.front().rows());
        CMatrix stack(static_cast<Eigen::Index>(n) * onto.front().cols(),
                      static_cast<Eigen::Index>(onto.size()));
        for (std::size_t j = 0; j < onto.size(); ++j) stack.col(static_cast<Eigen::Index>(j)) = vec(onto[j]);
        Eigen::JacobiSVD<CMatrix> svd(stack, Eigen::ComputeThinU);
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i) {
            if (svd.singularValues()[i] > 1e-12 * svd.singularValues()[0]) ++rank;
        }
        const CMatrix q = svd.matrixU().leftCols(rank);
        double worst = 0.0;
        for (const CMatrix& m : from) {
            const CVector x = vec(m);
            worst = std::max(worst, (x - q * (q.adjoint() * x)).norm());
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

} // namespace qgraph
