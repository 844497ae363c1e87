#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgraph/anticliques.hpp"
#include "qgraph/opsys.hpp"

// Brute-force reference implementations used only by tests. They avoid the
// code paths they are checking: rank goes through column-pivoted QR instead
// of SVD, and the anticlique searches are grid or Gauss-Newton solves that
// never touch the eigenvector parametrizations.
namespace qgraph::testing {

int independent_rank(const std::vector<CVector>& vectors, double rel_tol = 1e-9);

CMatrix random_hermitian(int n, std::uint64_t seed, double scale = 1.0);
CMatrix random_unitary(int n, std::uint64_t seed);

/// Grid search (with golden-section refinement) over the candidate rank-2
/// anticliques of the first non-scalar Hermitian generator of a system in
/// M_3: every eigen-choice times `grid` circle points.
std::optional<Isometry> grid_two_anticlique(const OperatorSystem& v, int grid = 720);

/// Gauss-Newton solve for a unit q making the compression of A to the
/// orthocomplement of q scalar. Returns the converged complement vector.
std::optional<CVector> newton_anticlique_complement(const CMatrix& a, std::uint64_t seed,
                                                    int max_iter = 80);

/// Multi-start Gauss-Newton hunt for a corank-one anticlique complement of a
/// whole system; `starts` random starts plus the standard basis.
std::optional<CVector> descent_corank_one(const OperatorSystem& v, int starts,
                                          std::uint64_t seed);

struct CorpusItem {
    std::string name;
    OperatorSystem system;
};

/// Gallery items, unitary conjugates and seeded random systems of dimension
/// 3..10 in M_3..M_6; at least 50 entries with n >= 3.
std::vector<CorpusItem> build_corpus();

} // namespace qgraph::testing
