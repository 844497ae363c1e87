#pragma once

#include <optional>
#include <vector>

#include "qgraph/numerics.hpp"

namespace qgraph {

/// An adjoint-closed, identity-containing subspace of M_n, stored as a
/// Hilbert-Schmidt-orthonormal basis whose first element is I_n/sqrt(n),
/// together with a Hermitian basis spanning the same space.
class OperatorSystem {
public:
    int n() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    /// HS-orthonormal; basis()[0] == I/sqrt(n), the rest traceless.
    const std::vector<CMatrix>& basis() const { return basis_; }

    /// Hermitian matrices spanning the same space; herm_basis()[0] == I/sqrt(n).
    const std::vector<CMatrix>& herm_basis() const { return herm_basis_; }

    /// Frobenius distance from m to its projection onto the span.
    double membership_residual(const CMatrix& m) const;

private:
    OperatorSystem(int n, std::vector<CMatrix> basis, std::vector<CMatrix> herm_basis)
        : n_(n), basis_(std::move(basis)), herm_basis_(std::move(herm_basis)) {}

    int n_ = 0;
    std::vector<CMatrix> basis_;
    std::vector<CMatrix> herm_basis_;

    friend OperatorSystem build_system(int, const std::vector<CMatrix>&, const ToleranceConfig&);
};

/// Smallest operator system containing the generators: adds I_n and every
/// adjoint, HS-orthonormalizes with rank_tol pruning, then materializes the
/// Hermitian basis from (A + A*)/2 and (A - A*)/(2i) parts.
OperatorSystem build_system(int n, const std::vector<CMatrix>& generators,
                            const ToleranceConfig& cfg = {});

/// Operator system in M_k generated by the compressions T* A T of the basis.
OperatorSystem compress(const OperatorSystem& v, const Isometry& t,
                        const ToleranceConfig& cfg = {});

/// dim span{T* A T : A in basis(v)}; at least 1 since the identity
/// compresses to the identity.
int compression_dim(const OperatorSystem& v, const Isometry& t, const ToleranceConfig& cfg = {});

/// Like compression_dim but with singular values for gap diagnostics.
RankInfo compression_rank_info(const OperatorSystem& v, const Isometry& t,
                               const ToleranceConfig& cfg = {});

/// Witness that T* A T = mu_A I for every Hermitian basis element A; one
/// compression scalar per certified matrix.
struct AnticliqueCertificate {
    Isometry isometry;
    std::vector<Complex> mus;

    Complex mu() const { return mus.empty() ? Complex(0.0) : mus.front(); }
};

/// True (with certificate) iff compression_dim(v, t) == 1.
std::optional<AnticliqueCertificate> is_anticlique(const OperatorSystem& v, const Isometry& t,
                                                   const ToleranceConfig& cfg = {});

/// True iff compression_dim(v, t) == k^2.
bool is_clique(const OperatorSystem& v, const Isometry& t, const ToleranceConfig& cfg = {});

/// dim span{A v : A in basis}. Throws NotUnit unless |v| = 1 within 1e-10.
int degree(const OperatorSystem& v, const CVector& unit, const ToleranceConfig& cfg = {});

/// Minimum of degree over `samples` Haar-random unit vectors plus the n
/// standard basis vectors. An upper bound on the true minimal degree.
int min_degree_estimate(const OperatorSystem& v, int samples, std::uint64_t seed,
                        const ToleranceConfig& cfg = {});

/// System spanned by {U A U* : A in basis(v)} for a unitary U.
OperatorSystem conjugate_system(const OperatorSystem& v, const CMatrix& u,
                                const ToleranceConfig& cfg = {});

/// max over both lists of the residual of each element against the other span.
double mutual_span_residual(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b);

} // namespace qgraph
