#pragma once

#include <optional>

#include "qgraph/anticliques.hpp"
#include "qgraph/opsys.hpp"

namespace qgraph {

/// Projections summing to the identity, each given by an isometry onto its
/// range. A valid coloring of a system has every part be an anticlique.
struct Coloring {
    std::vector<Isometry> parts;

    int ambient() const { return parts.empty() ? 0 : parts.front().n(); }
    int total_rank() const;
};

/// True iff the parts are pairwise orthogonal, sum to the identity, and each
/// is an anticlique for v.
bool validate_coloring(const OperatorSystem& v, const Coloring& c, const ToleranceConfig& cfg = {});

/// Halving construction: repeatedly split off the half-dimension anticlique
/// of the compression of A to what remains. At most floor(log2 n) + 1 parts.
Coloring log_coloring(const CMatrix& a, const ToleranceConfig& cfg = {});

struct ChromaticM4 {
    int number = 0; ///< 1, 2 or 3
    Coloring witness;
    bool borderline = false; ///< an equality test was decided within a factor 10 of tolerance
};

/// Exact chromatic number of a 4x4 Hermitian: 1 iff scalar; 2 iff, with
/// eigenvalues descending, lambda_2 = lambda_3 or
/// lambda_1 + lambda_4 = lambda_2 + lambda_3; else 3. Ships a validated
/// witness coloring in every case.
ChromaticM4 chromatic_m4(const CMatrix& a, const ToleranceConfig& cfg = {});

struct BipartiteHull {
    CMatrix unitary; ///< columns: first part basis then second part basis
    int m = 0;
    int n = 0;
};

/// Basis change from a validated 2-part coloring: conjugating v by the
/// returned unitary puts every element into block form with scalar diagonal
/// blocks. Throws NotAColoring when validation fails.
BipartiteHull bipartite_hull(const OperatorSystem& v, const Coloring& c,
                             const ToleranceConfig& cfg = {});

/// Randomized hunt for a 2-coloring of a 4x4 Hermitian: structured
/// eigenvector splits first, then anticlique families of random
/// three-dimensional compressions paired with complement checks.
std::optional<Coloring> search_two_coloring(const CMatrix& a, int attempts, std::uint64_t seed,
                                            const ToleranceConfig& cfg = {});

} // namespace qgraph
