#pragma once

#include "qgraph/opsys.hpp"

namespace qgraph {

/// All diagonal matrices in M_n; spanned by the rank-one projections e_i e_i*.
OperatorSystem diagonal_system(int n);

/// Block matrices [[a I_m, A], [B, b I_n]] in M_{m+n}; dimension 2 + 2mn.
OperatorSystem complete_bipartite(int m, int n);

/// 2x2-block-diagonal matrices in M_4; dimension 8.
OperatorSystem m2_direct_sum();

/// span(I_4) plus all matrices with zero diagonal 2x2 blocks; dimension 9.
OperatorSystem skew_system();

/// span(I_4, A, B) with A = diag(1,1,0,0) and B the block swap
/// [[0, I_2], [I_2, 0]]; dimension 3.
OperatorSystem except_system();

CMatrix except_generator_a();
CMatrix except_generator_b();

/// span(I_n, A) for Hermitian A; dimension 2 unless A is scalar.
OperatorSystem span_ia(const CMatrix& a, const ToleranceConfig& cfg = {});

/// diag((n+1)^n, (n+1)^{n-1}, ..., n+1). Throws Overflow for n > 12.
CMatrix lower_bound_matrix(int n);

/// v extended by r random Gaussian generators (Hermitian ones when
/// `hermitian`, so each adds at most one dimension); adjoint-closed,
/// deterministic per seed. Throws TooLarge when the extension cannot fit.
OperatorSystem random_extension(const OperatorSystem& v, int r, std::uint64_t seed,
                                bool hermitian = false, const ToleranceConfig& cfg = {});

} // namespace qgraph
