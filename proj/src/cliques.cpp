#include "qgraph/cliques.hpp"

#include <cmath>

namespace qgraph {

namespace {

constexpr Complex kI{0.0, 1.0};

CVector basis_vector(int k, int i) {
    CVector e = CVector::Zero(k);
    e[i] = 1.0;
    return e;
}

} // namespace

ParsevalFrame parseval_frame(int k) {
    if (k < 1) throw BadShape("parseval_frame needs k >= 1");
    ParsevalFrame frame;
    frame.k = k;
    frame.raw_vectors.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i) frame.raw_vectors.push_back(basis_vector(k, i));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) frame.raw_vectors.push_back(basis_vector(k, i) + basis_vector(k, j));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) frame.raw_vectors.push_back(basis_vector(k, i) + kI * basis_vector(k, j));

    frame.frame_operator = CMatrix::Zero(k, k);
    for (const CVector& v : frame.raw_vectors) frame.frame_operator += v * v.adjoint();

    // S^{-1/2} through the eigendecomposition of the frame operator; S >= I,
    // so the eigenvalues are safely positive.
    const SpectralData eig = hermitian_eig(frame.frame_operator);
    CMatrix inv_sqrt = CMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        inv_sqrt += (1.0 / std::sqrt(eig.eigenvalues[i])) * eig.eigenvectors.col(i) *
                    eig.eigenvectors.col(i).adjoint();
    }
    frame.vectors.reserve(frame.raw_vectors.size());
    for (const CVector& v : frame.raw_vectors) frame.vectors.push_back(inv_sqrt * v);
    return frame;
}

Isometry parseval_clique(int k) {
    const ParsevalFrame frame = parseval_frame(k);
    CMatrix t(k * k, k);
    for (int r = 0; r < k * k; ++r) t.row(r) = frame.vectors[r].adjoint();
    return Isometry(std::move(t), 1e-10);
}

std::pair<Isometry, CMatrix> k22_witness() {
    CMatrix cols(4, 3);
    const double r2 = 1.0 / std::sqrt(2.0);
    cols.col(0) << r2, -r2, 0.0, 0.0;
    cols.col(1) << 0.0, 0.0, r2, -r2;
    cols.col(2) << 0.5, 0.5, -0.5, -0.5;

    CMatrix kernel = CMatrix::Zero(4, 4);
    kernel.topRightCorner(2, 2).setConstant(1.0);
    kernel.bottomLeftCorner(2, 2).setConstant(-1.0);
    return {Isometry(std::move(cols), 1e-12), kernel};
}

TriangleSearch three_clique_search(const OperatorSystem& v, int samples, std::uint64_t seed,
                                   const ToleranceConfig& cfg) {
    if (v.n() < 3) throw BadShape("three_clique_search needs n >= 3");
    if (samples < 1) throw BadParams("three_clique_search needs samples >= 1");

    TriangleSearch result;
    auto consider = [&](const Isometry& t) {
        const RankInfo info = compression_rank_info(v, t, cfg);
        result.max_dim = std::max(result.max_dim, info.rank);
        result.borderline = result.borderline || info.borderline;
        if (info.rank == 9) result.witness = t;
        return info.rank == 9;
    };

    if (v.n() == 4) {
        result.samples += 1;
        if (consider(k22_witness().first)) return result;
    }
    for (int s = 0; s < samples; ++s) {
        result.samples += 1;
        if (consider(haar_isometry(v.n(), 3, split_seed(seed, s)))) return result;
    }
    return result;
}

std::optional<Isometry> find_three_clique(const OperatorSystem& v, int samples,
                                          std::uint64_t seed, const ToleranceConfig& cfg) {
    return three_clique_search(v, samples, seed, cfg).witness;
}

int generic_compression_dim(const OperatorSystem& v, int r, int samples, std::uint64_t seed,
                            const ToleranceConfig& cfg) {
    if (r < 1 || r > v.n()) throw BadShape("generic_compression_dim needs 1 <= r <= n");
    if (samples < 1) throw BadParams("generic_compression_dim needs samples >= 1");
    int best = 0;
    for (int s = 0; s < samples; ++s) {
        best = std::max(best, compression_dim(v, haar_isometry(v.n(), r, split_seed(seed, s)), cfg));
    }
    return best;
}

} // namespace qgraph
