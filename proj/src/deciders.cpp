#include "qgraph/deciders.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qgraph/anticliques.hpp"
#include "qgraph/gallery.hpp"

namespace qgraph {

TfVerdict decide_triangle_free(const OperatorSystem& v, int samples, std::uint64_t seed,
                               const ToleranceConfig& cfg) {
    if (v.dim() <= 8 || v.n() < 3) {
        // dim(PVP) <= dim(V), so no rank-3 compression can reach dimension 9.
        const int r = std::min(3, v.n());
        const RankInfo info = compression_rank_info(v, haar_isometry(v.n(), r, seed), cfg);
        return NoTriangleFound{1, info.rank, info.borderline};
    }
    const TriangleSearch search = three_clique_search(v, samples, seed, cfg);
    if (search.witness) return HasTriangle{*search.witness, search.borderline};
    return NoTriangleFound{search.samples, search.max_dim, search.borderline};
}

std::optional<CMatrix> recognize_except(const OperatorSystem& v, const ToleranceConfig& cfg) {
    if (v.n() != 4 || v.dim() != 3) return std::nullopt;

    const CMatrix& h1 = v.herm_basis()[1];
    const CMatrix& h2 = v.herm_basis()[2];
    const OperatorSystem model = except_system();

    // Scan for a Hermitian element with exactly two eigenvalue clusters of
    // multiplicity two each; genericity makes the scan robust, so a few
    // random real combinations of the traceless generators suffice.
    std::vector<CMatrix> scan{h1, h2};
    std::mt19937_64 rng(0x5CA7ull);
    std::uniform_real_distribution<double> angle(0.0, M_PI);
    for (int i = 0; i < 64; ++i) {
        const double theta = angle(rng);
        scan.push_back(std::cos(theta) * h1 + std::sin(theta) * h2);
    }

    for (const CMatrix& candidate : scan) {
        const SpectralData eig = hermitian_eig(candidate, cfg);
        if (eig.clusters.size() != 2 || eig.multiplicity(0) != 2 || eig.multiplicity(1) != 2) {
            continue;
        }
        // Eigenbasis ordered so the larger eigenvalue pair comes first.
        CMatrix basis(4, 4);
        basis.col(0) = eig.eigenvectors.col(2);
        basis.col(1) = eig.eigenvectors.col(3);
        basis.col(2) = eig.eigenvectors.col(0);
        basis.col(3) = eig.eigenvectors.col(1);

        // Pick a Hermitian element independent of {I, candidate}: remove the
        // candidate's direction from whichever traceless generator keeps the
        // larger remainder.
        const CMatrix cand_traceless =
            candidate - (candidate.trace() / 4.0) * CMatrix::Identity(4, 4);
        if (cand_traceless.norm() < 1e-12) continue;
        const CMatrix u = cand_traceless / cand_traceless.norm();
        auto strip = [&](const CMatrix& h) -> CMatrix { return h - hs_inner(h, u).real() * u; };
        CMatrix b = strip(h1);
        if (strip(h2).norm() > b.norm()) b = strip(h2);
        if (b.norm() < 1e-8) continue;

        CMatrix bt = basis.adjoint() * b * basis;
        // The diagonal blocks must be scalar: subtract them and require the
        // residue to vanish.
        const Complex beta1 = bt.topLeftCorner(2, 2).trace() / 2.0;
        const Complex beta2 = bt.bottomRightCorner(2, 2).trace() / 2.0;
        CMatrix diag_part = CMatrix::Zero(4, 4);
        diag_part.topLeftCorner(2, 2) = beta1 * CMatrix::Identity(2, 2);
        diag_part.bottomRightCorner(2, 2) = beta2 * CMatrix::Identity(2, 2);
        const CMatrix off = bt - diag_part;
        if (off.topLeftCorner(2, 2).norm() > 1e-7 * std::max(1.0, bt.norm()) ||
            off.bottomRightCorner(2, 2).norm() > 1e-7 * std::max(1.0, bt.norm())) {
            continue;
        }

        // The off-diagonal block must be a nonzero scalar multiple of a
        // unitary: two equal, nonzero singular values.
        const CMatrix block = off.topRightCorner(2, 2);
        Eigen::JacobiSVD<CMatrix> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double s1 = svd.singularValues()[0];
        const double s2 = svd.singularValues()[1];
        if (s1 < 1e-8) continue;
        if (s1 - s2 > cfg.eig_cluster_tol * std::max(1.0, s1)) continue;

        CMatrix rotation = CMatrix::Identity(4, 4);
        rotation.topLeftCorner(2, 2) = svd.matrixU();
        rotation.bottomRightCorner(2, 2) = svd.matrixV();
        const CMatrix g = basis * rotation;

        std::vector<CMatrix> conjugated;
        for (const CMatrix& m : v.basis()) conjugated.push_back(g.adjoint() * m * g);
        if (mutual_span_residual(conjugated, model.basis()) <= 1e-8) return g;
    }
    return std::nullopt;
}

std::optional<Isometry> refute_stf(const OperatorSystem& v, int samples, std::uint64_t seed,
                                   const ToleranceConfig& cfg) {
    const int n = v.n();
    if (n < 3) throw BadShape("refute_stf needs n >= 3");

    auto refutes = [&](const Isometry& q) {
        return !find_two_anticlique_m3(compress(v, q, cfg), cfg).has_value();
    };

    // Structured candidates first: triples of eigenvectors of the Hermitian
    // generators catch the diagonal-style refutations immediately.
    for (std::size_t g = 1; g < v.herm_basis().size(); ++g) {
        const SpectralData eig = hermitian_eig(v.herm_basis()[g], cfg);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                for (int k = j + 1; k < n; ++k) {
                    CMatrix cols(n, 3);
                    cols.col(0) = eig.eigenvectors.col(i);
                    cols.col(1) = eig.eigenvectors.col(j);
                    cols.col(2) = eig.eigenvectors.col(k);
                    Isometry q(std::move(cols), 1e-8);
                    if (refutes(q)) return q;
                }
            }
        }
    }
    for (int s = 0; s < samples; ++s) {
        Isometry q = haar_isometry(n, 3, split_seed(seed, s));
        if (refutes(q)) return q;
    }
    return std::nullopt;
}

StfVerdict decide_strongly_triangle_free(const OperatorSystem& v, const ToleranceConfig& cfg,
                                         int samples, std::uint64_t seed) {
    if (v.n() == 1) return Stf{StfSmallN{}};
    if (v.dim() <= 2) return Stf{StfSmallDim{}};
    if (auto vec = corank_one_anticlique(v, cfg)) return Stf{StfSubBipartite{*vec}};
    if (v.n() == 4 && v.dim() == 3) {
        if (auto g = recognize_except(v, cfg)) return Stf{StfExceptModel{*g}};
    }

    auto witness = refute_stf(v, samples, seed, cfg);
    if (!witness) {
        throw Inconsistent("no classification matched and no refuting compression was found; "
                           "the spectrum is likely too close to a tolerance boundary");
    }
    std::string trace;
    find_two_anticlique_m3(compress(v, *witness, cfg), cfg, &trace);
    return NotStf{*witness, trace};
}

EdgeVerdict edge_predicates(const OperatorSystem& v) {
    return EdgeVerdict{v.dim() <= 3, v.dim() == 1};
}

} // namespace qgraph
