#include "qgraph/gallery.hpp"

#include <cmath>

namespace qgraph {

namespace {

CMatrix unit_matrix(int n, int i, int j) {
    CMatrix e = CMatrix::Zero(n, n);
    e(i, j) = 1.0;
    return e;
}

} // namespace

OperatorSystem diagonal_system(int n) {
    if (n < 1) throw BadShape("diagonal_system needs n >= 1");
    std::vector<CMatrix> gens;
    gens.reserve(n);
    for (int i = 0; i < n; ++i) gens.push_back(unit_matrix(n, i, i));
    return build_system(n, gens);
}

OperatorSystem complete_bipartite(int m, int n) {
    if (m < 1 || n < 1) throw BadShape("complete_bipartite needs m, n >= 1");
    const int size = m + n;
    std::vector<CMatrix> gens;
    gens.reserve(2 + m * n);
    CMatrix upper = CMatrix::Zero(size, size);
    upper.topLeftCorner(m, m) = CMatrix::Identity(m, m);
    gens.push_back(upper);
    CMatrix lower = CMatrix::Zero(size, size);
    lower.bottomRightCorner(n, n) = CMatrix::Identity(n, n);
    gens.push_back(lower);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) gens.push_back(unit_matrix(size, i, m + j));
    return build_system(size, gens);
}

OperatorSystem m2_direct_sum() {
    std::vector<CMatrix> gens;
    for (int b : {0, 2})
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) gens.push_back(unit_matrix(4, b + i, b + j));
    return build_system(4, gens);
}

OperatorSystem skew_system() {
    std::vector<CMatrix> gens;
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j) {
            gens.push_back(unit_matrix(4, i, j));
            gens.push_back(unit_matrix(4, j, i));
        }
    return build_system(4, gens);
}

CMatrix except_generator_a() {
    CMatrix a = CMatrix::Zero(4, 4);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    return a;
}

CMatrix except_generator_b() {
    CMatrix b = CMatrix::Zero(4, 4);
    b(0, 2) = b(2, 0) = 1.0;
    b(1, 3) = b(3, 1) = 1.0;
    return b;
}

OperatorSystem except_system() {
    return build_system(4, {except_generator_a(), except_generator_b()});
}

OperatorSystem span_ia(const CMatrix& a, const ToleranceConfig& cfg) {
    hermitian_eig(a, cfg); // shape and Hermitian checks
    return build_system(static_cast<int>(a.rows()), {a}, cfg);
}

CMatrix lower_bound_matrix(int n) {
    if (n < 1) throw BadShape("lower_bound_matrix needs n >= 1");
    if (n > 12) throw Overflow("lower_bound_matrix entries overflow beyond n = 12");
    CMatrix a = CMatrix::Zero(n, n);
    double entry = static_cast<double>(n) + 1.0;
    for (int i = n - 1; i >= 0; --i) {
        a(i, i) = entry;
        entry *= n + 1.0;
    }
    return a;
}

OperatorSystem random_extension(const OperatorSystem& v, int r, std::uint64_t seed,
                                bool hermitian, const ToleranceConfig& cfg) {
    if (r < 1) throw BadParams("random_extension needs r >= 1");
    const int n = v.n();
    const int added = hermitian ? r : 2 * r;
    if (v.dim() + added > n * n) {
        throw TooLarge("extension does not fit in M_n");
    }
    std::vector<CMatrix> gens = v.basis();
    for (int i = 0; i < r; ++i) {
        const CMatrix g = random_gaussian(n, n, split_seed(seed, i));
        gens.push_back(hermitian ? CMatrix(0.5 * (g + g.adjoint())) : g);
    }
    return build_system(n, gens, cfg);
}

} // namespace qgraph
