#include "qgraph/coloring.hpp"

#include <cmath>

namespace qgraph {

int Coloring::total_rank() const {
    int total = 0;
    for (const Isometry& part : parts) total += part.k();
    return total;
}

bool validate_coloring(const OperatorSystem& v, const Coloring& c, const ToleranceConfig& cfg) {
    if (c.parts.empty()) return false;
    const int n = v.n();
    for (const Isometry& part : c.parts) {
        if (part.n() != n) throw DimensionMismatch("coloring parts live in the wrong dimension");
    }
    if (c.total_rank() != n) return false;

    CMatrix sum = CMatrix::Zero(n, n);
    for (const Isometry& part : c.parts) sum += part.projection();
    if ((sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) return false;

    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        for (std::size_t j = i + 1; j < c.parts.size(); ++j) {
            const double cross =
                (c.parts[i].matrix().adjoint() * c.parts[j].matrix()).cwiseAbs().maxCoeff();
            if (cross > 1e-10) return false;
        }
    }
    for (const Isometry& part : c.parts) {
        if (!is_anticlique(v, part, cfg)) return false;
    }
    return true;
}

Coloring log_coloring(const CMatrix& a, const ToleranceConfig& cfg) {
    const SpectralData eig = hermitian_eig(a, cfg); // shape and Hermitian checks
    (void)eig;
    const int n = static_cast<int>(a.rows());

    Coloring out;
    CMatrix remaining = CMatrix::Identity(n, n); // isometry onto what is left to color
    while (remaining.cols() > 0) {
        const Isometry rem(remaining, 1e-8);
        const CMatrix compressed = rem.compress(a);
        const AnticliqueCertificate cert = half_anticlique(compressed, cfg);
        out.parts.emplace_back(remaining * cert.isometry.matrix(), 1e-8);
        if (cert.isometry.k() == static_cast<int>(remaining.cols())) break;
        remaining = remaining * complement_isometry(cert.isometry).matrix();
    }
    return out;
}

namespace {

Coloring split_complement_into_singletons(const Isometry& part) {
    Coloring c;
    c.parts.push_back(part);
    const Isometry rest = complement_isometry(part);
    for (int j = 0; j < rest.k(); ++j) {
        c.parts.emplace_back(rest.matrix().col(j), 1e-8);
    }
    return c;
}

} // namespace

ChromaticM4 chromatic_m4(const CMatrix& a, const ToleranceConfig& cfg) {
    if (a.rows() != 4 || a.cols() != 4) throw BadShape("chromatic_m4 needs a 4x4 matrix");
    const SpectralData eig = hermitian_eig(a, cfg);

    ChromaticM4 out;
    if (eig.clusters.size() == 1) {
        out.number = 1;
        out.witness.parts.emplace_back(CMatrix::Identity(4, 4), 1e-10);
        return out;
    }

    // Work with descending eigenvalues l1 >= l2 >= l3 >= l4.
    const double l1 = eig.eigenvalues[3], l2 = eig.eigenvalues[2];
    const double l3 = eig.eigenvalues[1], l4 = eig.eigenvalues[0];
    const CVector v1 = eig.eigenvectors.col(3), v2 = eig.eigenvectors.col(2);
    const CVector v3 = eig.eigenvectors.col(1), v4 = eig.eigenvectors.col(0);

    const double spread = l1 - l4;
    const double tol = cfg.eig_cluster_tol * spread;
    const double middle_gap = l2 - l3;
    const double sum_gap = std::abs((l1 + l4) - (l2 + l3));
    out.borderline = (middle_gap > tol && middle_gap <= 10.0 * tol) ||
                     (sum_gap > tol && sum_gap <= 10.0 * tol);

    if (middle_gap <= tol) {
        // 3-anticlique spanned by the convex mix of the outer eigenvectors
        // plus both middle ones; the complement is a singleton.
        const double t = (l2 - l4) / (l1 - l4);
        CMatrix cols(4, 3);
        cols.col(0) = std::sqrt(t) * v1 + std::sqrt(1.0 - t) * v4;
        cols.col(1) = v2;
        cols.col(2) = v3;
        const Isometry part(std::move(cols), 1e-8);
        out.number = 2;
        out.witness.parts.push_back(part);
        out.witness.parts.push_back(complement_isometry(part));
        return out;
    }
    if (sum_gap <= tol) {
        const double r = 1.0 / std::sqrt(2.0);
        CMatrix plus(4, 2), minus(4, 2);
        plus.col(0) = r * (v1 + v4);
        plus.col(1) = r * (v2 + v3);
        minus.col(0) = r * (v1 - v4);
        minus.col(1) = r * (v2 - v3);
        out.number = 2;
        out.witness.parts.emplace_back(std::move(plus), 1e-8);
        out.witness.parts.emplace_back(std::move(minus), 1e-8);
        return out;
    }

    out.number = 3;
    out.witness = split_complement_into_singletons(half_anticlique(a, cfg).isometry);
    return out;
}

BipartiteHull bipartite_hull(const OperatorSystem& v, const Coloring& c,
                             const ToleranceConfig& cfg) {
    if (c.parts.size() != 2) throw NotAColoring("bipartite_hull needs exactly two parts");
    if (!validate_coloring(v, c, cfg)) throw NotAColoring("the parts do not color the system");

    BipartiteHull hull;
    hull.m = c.parts[0].k();
    hull.n = c.parts[1].k();
    hull.unitary.resize(v.n(), v.n());
    hull.unitary.leftCols(hull.m) = c.parts[0].matrix();
    hull.unitary.rightCols(hull.n) = c.parts[1].matrix();
    return hull;
}

std::optional<Coloring> search_two_coloring(const CMatrix& a, int attempts, std::uint64_t seed,
                                            const ToleranceConfig& cfg) {
    if (a.rows() != 4 || a.cols() != 4) throw BadShape("search_two_coloring needs a 4x4 matrix");
    const OperatorSystem system = build_system(4, {a}, cfg);

    auto try_split = [&](const Isometry& part) -> std::optional<Coloring> {
        if (!is_anticlique(system, part, cfg)) return std::nullopt;
        const Isometry rest = complement_isometry(part);
        if (!is_anticlique(system, rest, cfg)) return std::nullopt;
        Coloring c;
        c.parts = {part, rest};
        return c;
    };

    // Structured candidates first. Plain eigenvector pairs, then the mixed
    // pair splits span{(v_i + v_j)/sqrt(2), (v_k + v_l)/sqrt(2)} whose
    // compressions are scalar when the eigenvalue pair sums agree.
    const SpectralData eig = hermitian_eig(a, cfg);
    const double r = 1.0 / std::sqrt(2.0);
    const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& p : pairings) {
        CMatrix cols(4, 2);
        cols.col(0) = eig.eigenvectors.col(p[0]);
        cols.col(1) = eig.eigenvectors.col(p[1]);
        if (auto c = try_split(Isometry(std::move(cols), 1e-8))) return c;

        CMatrix mixed(4, 2);
        mixed.col(0) = r * (eig.eigenvectors.col(p[0]) + eig.eigenvectors.col(p[1]));
        mixed.col(1) = r * (eig.eigenvectors.col(p[2]) + eig.eigenvectors.col(p[3]));
        if (auto c = try_split(Isometry(std::move(mixed), 1e-8))) return c;
    }
    // Rank-3 anticliques are corank-one anticliques of span(I, A): realize
    // the candidate complements and split off the leftover line.
    for (const CorankComponent& comp : corank_candidates(a, cfg)) {
        std::vector<CVector> complements;
        if (const auto* point = std::get_if<CorankPoint>(&comp)) {
            complements.push_back(point->v);
        } else if (const auto* circ = std::get_if<CorankCircle>(&comp)) {
            for (int j = 0; j < 8; ++j) {
                complements.push_back(circ->realize(std::polar(1.0, j * 0.25 * M_PI)));
            }
        }
        for (const CVector& w : complements) {
            if (auto c = try_split(complement_of_vector(w))) return c;
        }
    }

    for (int attempt = 0; attempt < attempts; ++attempt) {
        const std::uint64_t s = split_seed(seed, attempt);
        // rank-1 + rank-3 split from a random vector
        if (auto c = try_split(complement_of_vector(haar_unit_vector(4, split_seed(s, 0))))) {
            return c;
        }
        // rank-2 members of the anticlique family of a random 3-dim compression
        const Isometry q = haar_isometry(4, 3, split_seed(s, 1));
        const AnticliqueFamily family = classify_two_anticliques_m3(q.compress(a), cfg);
        std::vector<Isometry> members;
        if (const auto* unique = std::get_if<UniqueTwoAnticlique>(&family)) {
            members.push_back(unique->isometry);
        } else if (const auto* circle = std::get_if<CircleTwoAnticliques>(&family)) {
            for (int j = 0; j < 8; ++j) {
                members.push_back(circle->realize(std::polar(1.0, j * 0.25 * M_PI)));
            }
        }
        for (const Isometry& member : members) {
            if (auto c = try_split(Isometry(q.matrix() * member.matrix(), 1e-8))) return c;
        }
    }
    return std::nullopt;
}

} // namespace qgraph
