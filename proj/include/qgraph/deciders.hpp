#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qgraph/cliques.hpp"

namespace qgraph {

/// n = 1: no rank-3 projections exist.
struct StfSmallN {};
/// dim(V) <= 2: every three-dimensional compression is span(I, H).
struct StfSmallDim {};
/// V is unitarily equivalent to the three-dimensional block system in M_4.
struct StfExceptModel {
    CMatrix basis_change; ///< G with {G* A G} spanning that system
};
/// I - vv* is an anticlique; equivalently V sits inside a complete
/// bipartite system with a singleton block, relative to some basis.
struct StfSubBipartite {
    CVector v;
};
using StfCase = std::variant<StfSmallN, StfSmallDim, StfExceptModel, StfSubBipartite>;

struct Stf {
    StfCase kind;
};
struct NotStf {
    Isometry witness; ///< rank-3 isometry whose compression has no rank-2 anticlique
    std::string refutation;
};
using StfVerdict = std::variant<Stf, NotStf>;

/// Short-circuits to NoTriangleFound when dim(v) <= 8 or n < 3 (a nine-
/// dimensional compression image is impossible); otherwise searches.
TfVerdict decide_triangle_free(const OperatorSystem& v, int samples, std::uint64_t seed,
                               const ToleranceConfig& cfg = {});

/// Classification run cheapest-first: ambient size, linear dimension,
/// corank-one anticlique, then the M_4 recognizer. A negative verdict always
/// carries a checkable witness; throws Inconsistent if every classification
/// fails yet no witness turns up within the refutation budget.
StfVerdict decide_strongly_triangle_free(const OperatorSystem& v, const ToleranceConfig& cfg = {},
                                         int samples = 256, std::uint64_t seed = 0);

/// Unitary G with {G* A G : A in v} spanning the exceptional system, when
/// n = 4, dim = 3 and such a G exists.
std::optional<CMatrix> recognize_except(const OperatorSystem& v, const ToleranceConfig& cfg = {});

/// First rank-3 isometry whose compression of v admits no rank-2 anticlique:
/// eigenvector triples of the Hermitian generators first, Haar samples after.
std::optional<Isometry> refute_stf(const OperatorSystem& v, int samples, std::uint64_t seed,
                                   const ToleranceConfig& cfg = {});

struct EdgeVerdict {
    bool edge_free = false;          ///< dim(V) <= 3
    bool strongly_edge_free = false; ///< dim(V) == 1
};
EdgeVerdict edge_predicates(const OperatorSystem& v);

} // namespace qgraph
