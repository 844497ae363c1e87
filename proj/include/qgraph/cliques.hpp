#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "qgraph/opsys.hpp"

namespace qgraph {

/// The k^2 vectors e_i, e_i + e_j and e_i + i*e_j (i < j) in C^k, their
/// frame operator S, and the Parseval frame w_r = S^{-1/2} v_r.
struct ParsevalFrame {
    int k = 0;
    std::vector<CVector> raw_vectors;
    CMatrix frame_operator;
    std::vector<CVector> vectors;
};

ParsevalFrame parseval_frame(int k);

/// Rank-k isometry into C^{k^2} with T* e_r = w_r; compressing the diagonal
/// system of M_{k^2} through it yields all of M_k.
Isometry parseval_clique(int k);

/// Maximum of compression_dim over `samples` Haar-random rank-r isometries.
/// The compression rank is maximal off a closed null set, so this is the
/// generic value with overwhelming probability.
int generic_compression_dim(const OperatorSystem& v, int r, int samples, std::uint64_t seed,
                            const ToleranceConfig& cfg = {});

/// First sampled rank-3 isometry with compression dimension 9, if any; the
/// structured rank-3 witness for M_4 is tried before sampling when n = 4.
std::optional<Isometry> find_three_clique(const OperatorSystem& v, int samples,
                                          std::uint64_t seed, const ToleranceConfig& cfg = {});

/// The rank-3 isometry onto the orthocomplement of (1,1,1,1) in C^4 and the
/// matrix spanning the kernel of the induced compression of K_{2,2}.
std::pair<Isometry, CMatrix> k22_witness();

struct HasTriangle {
    Isometry witness;
    bool borderline = false;
};
struct NoTriangleFound {
    int samples = 0;
    int generic_dim = 0;
    bool borderline = false;
};
using TfVerdict = std::variant<HasTriangle, NoTriangleFound>;

/// Shared search core: witness if found, plus the largest compression
/// dimension seen and whether any rank decision was close to the cutoff.
struct TriangleSearch {
    std::optional<Isometry> witness;
    int max_dim = 0;
    int samples = 0;
    bool borderline = false;
};
TriangleSearch three_clique_search(const OperatorSystem& v, int samples, std::uint64_t seed,
                                   const ToleranceConfig& cfg = {});

} // namespace qgraph
