#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qgraph/opsys.hpp"

namespace qgraph {

/// Every rank-2 projection compresses the matrix to a scalar (scalar input).
struct AllTwoAnticliques {};

/// Exactly one rank-2 anticlique: the eigenspace of the repeated eigenvalue.
struct UniqueTwoAnticlique {
    Isometry isometry;
    double mu = 0.0;
};

/// Rank-2 anticliques of a 3x3 Hermitian with three distinct eigenvalues,
/// parametrized by |z| = 1: the member at z spans v_mid and
/// sqrt(t) v_hi + z sqrt(1-t) v_lo, where t lambda_hi + (1-t) lambda_lo = mu.
struct CircleTwoAnticliques {
    CVector v_mid, v_hi, v_lo;
    double t = 0.0;
    double mu = 0.0;
    double lambda_hi = 0.0;
    double lambda_lo = 0.0;

    Isometry realize(Complex z) const;
};

using AnticliqueFamily = std::variant<AllTwoAnticliques, UniqueTwoAnticlique, CircleTwoAnticliques>;

/// Candidate complement vectors v of a corank-one anticlique I - vv*, per
/// Hermitian generator. Point pins v; Circle2 gives v(z) =
/// sqrt(s) u_plus + z sqrt(1-s) u_minus with s = alpha / (alpha - beta) for
/// the indefinite pair alpha > 0 > beta of the shifted generator.
struct CorankAny {};
struct CorankPoint {
    CVector v;
};
struct CorankCircle {
    CVector u_plus, u_minus;
    double s = 0.0;
    CMatrix shifted; ///< generator minus the compression scalar; members satisfy P M P = 0

    CVector realize(Complex z) const;
};
using CorankComponent = std::variant<CorankAny, CorankPoint, CorankCircle>;

/// The rank-ceil(n/2) anticlique of span(I, A): pair the outer eigenvalues
/// into convex combinations hitting the middle one. mus holds the single
/// compression scalar.
AnticliqueCertificate half_anticlique(const CMatrix& a, const ToleranceConfig& cfg = {});

/// Complete classification of the rank-2 anticliques of a 3x3 Hermitian,
/// keyed by its eigenvalue cluster count.
AnticliqueFamily classify_two_anticliques_m3(const CMatrix& a, const ToleranceConfig& cfg = {});

/// A rank-2 common anticlique for every element of a system in M_3, or
/// nullopt. Classifies the first non-scalar Hermitian generator and
/// intersects the circle constraints imposed by the others. When `trace` is
/// given it receives a short account of how the search ended.
std::optional<AnticliqueCertificate> find_two_anticlique_m3(const OperatorSystem& v,
                                                            const ToleranceConfig& cfg = {},
                                                            std::string* trace = nullptr);

/// Candidate complement vectors contributed by one Hermitian generator:
/// scalars mu come from eigenvalue clusters of multiplicity >= n-2, and the
/// shifted generator must have rank <= 2 with an indefinite sign pattern.
/// An empty result means the generator rules out every corank-one anticlique.
std::vector<CorankComponent> corank_candidates(const CMatrix& h, const ToleranceConfig& cfg = {});

/// Unit v such that I - vv* is an anticlique for the whole system, or
/// nullopt: intersects the per-generator candidate sets and verifies the
/// survivor by direct compression.
std::optional<CVector> corank_one_anticlique(const OperatorSystem& v,
                                             const ToleranceConfig& cfg = {});

} // namespace qgraph
