#include "qgraph/anticliques.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qgraph {

namespace {

// Subsets of the unit circle that arise when intersecting anticlique
// constraints: everything, finitely many points, or nothing.
struct CircleSet {
    enum class Kind { Full, Points, Empty } kind = Kind::Full;
    std::vector<Complex> points;

    static CircleSet full() { return {Kind::Full, {}}; }
    static CircleSet empty() { return {Kind::Empty, {}}; }
    static CircleSet of(std::vector<Complex> pts) { return {Kind::Points, std::move(pts)}; }
};

// a + b z = 0 on |z| = 1.
struct LinearConstraint {
    Complex a, b;
    double scale = 1.0;

    double residual(Complex z) const { return std::abs(a + b * z); }

    CircleSet solutions(double tol) const {
        const double cut = tol * scale;
        if (std::abs(a) <= cut && std::abs(b) <= cut) return CircleSet::full();
        if (std::abs(std::abs(a) - std::abs(b)) > cut) return CircleSet::empty();
        const Complex z0 = -a / b;
        return CircleSet::of({z0 / std::abs(z0)});
    }
};

// Re(c z) = d on |z| = 1.
struct RealConstraint {
    Complex c;
    double d = 0.0;
    double scale = 1.0;

    double residual(Complex z) const { return std::abs((c * z).real() - d); }

    CircleSet solutions(double tol) const {
        const double cut = tol * scale;
        const double mag = std::abs(c);
        if (mag <= cut) {
            return std::abs(d) <= cut ? CircleSet::full() : CircleSet::empty();
        }
        if (std::abs(d) - mag > cut) return CircleSet::empty();
        const double ratio = std::clamp(d / mag, -1.0, 1.0);
        const double theta = std::acos(ratio);
        const double gamma = std::arg(c);
        const Complex z1 = std::polar(1.0, -gamma + theta);
        const Complex z2 = std::polar(1.0, -gamma - theta);
        if (std::abs(z1 - z2) <= 1e-12) return CircleSet::of({z1});
        return CircleSet::of({z1, z2});
    }
};

template <typename Constraint>
CircleSet apply_constraint(const CircleSet& set, const Constraint& cons, double tol) {
    if (set.kind == CircleSet::Kind::Empty) return set;
    if (set.kind == CircleSet::Kind::Full) return cons.solutions(tol);
    std::vector<Complex> kept;
    for (Complex z : set.points) {
        if (cons.residual(z) <= tol * cons.scale) kept.push_back(z);
    }
    return kept.empty() ? CircleSet::empty() : CircleSet::of(std::move(kept));
}

double convex_parameter(double lo, double hi, double target) {
    if (hi - lo <= 0.0) return 1.0;
    return std::clamp((target - lo) / (hi - lo), 0.0, 1.0);
}

} // namespace

Isometry CircleTwoAnticliques::realize(Complex z) const {
    CMatrix cols(v_mid.size(), 2);
    cols.col(0) = v_mid;
    cols.col(1) = std::sqrt(t) * v_hi + z * std::sqrt(1.0 - t) * v_lo;
    return Isometry(std::move(cols), 1e-8);
}

CVector CorankCircle::realize(Complex z) const {
    return std::sqrt(s) * u_plus + z * std::sqrt(1.0 - s) * u_minus;
}

AnticliqueCertificate half_anticlique(const CMatrix& a, const ToleranceConfig& cfg) {
    const SpectralData eig = hermitian_eig(a, cfg);
    const int n = static_cast<int>(eig.eigenvalues.size());
    const int m = n / 2;
    const bool odd = (n % 2) != 0;
    const double lambda = odd ? eig.eigenvalues[m]
                              : 0.5 * (eig.eigenvalues[m - 1] + eig.eigenvalues[m]);

    const double degenerate = cfg.eig_cluster_tol * std::max(1.0, eig.spectral_norm);
    CMatrix cols(n, odd ? m + 1 : m);
    int col = 0;
    if (odd) cols.col(col++) = eig.eigenvectors.col(m);
    for (int i = 1; i <= m; ++i) {
        const int hi = n - i;     // descending position i
        const int lo = i - 1;     // descending position n + 1 - i
        const double span = eig.eigenvalues[hi] - eig.eigenvalues[lo];
        const double t = span <= degenerate
                             ? 1.0
                             : convex_parameter(eig.eigenvalues[lo], eig.eigenvalues[hi], lambda);
        cols.col(col++) = std::sqrt(t) * eig.eigenvectors.col(hi) +
                          std::sqrt(1.0 - t) * eig.eigenvectors.col(lo);
    }
    return AnticliqueCertificate{Isometry(std::move(cols), 1e-8), {Complex(lambda)}};
}

AnticliqueFamily classify_two_anticliques_m3(const CMatrix& a, const ToleranceConfig& cfg) {
    if (a.rows() != 3 || a.cols() != 3) {
        throw BadShape("classify_two_anticliques_m3 needs a 3x3 matrix");
    }
    const SpectralData eig = hermitian_eig(a, cfg);
    const int clusters = static_cast<int>(eig.clusters.size());
    if (clusters == 1) return AllTwoAnticliques{};
    if (clusters == 2) {
        const int repeated = eig.multiplicity(0) == 2 ? 0 : 1;
        const auto [lo, hi] = eig.clusters[repeated];
        CMatrix cols(3, 2);
        cols.col(0) = eig.eigenvectors.col(lo);
        cols.col(1) = eig.eigenvectors.col(lo + 1);
        (void)hi;
        return UniqueTwoAnticlique{Isometry(std::move(cols), 1e-8), eig.cluster_mean(repeated)};
    }
    CircleTwoAnticliques fam;
    fam.lambda_lo = eig.eigenvalues[0];
    fam.mu = eig.eigenvalues[1];
    fam.lambda_hi = eig.eigenvalues[2];
    fam.v_lo = eig.eigenvectors.col(0);
    fam.v_mid = eig.eigenvectors.col(1);
    fam.v_hi = eig.eigenvectors.col(2);
    fam.t = convex_parameter(fam.lambda_lo, fam.lambda_hi, fam.mu);
    return fam;
}

std::optional<AnticliqueCertificate> find_two_anticlique_m3(const OperatorSystem& v,
                                                            const ToleranceConfig& cfg,
                                                            std::string* trace) {
    if (v.n() != 3) throw BadShape("find_two_anticlique_m3 needs a system in M_3");

    auto note = [&](const std::string& msg) {
        if (trace) *trace = msg;
    };
    auto verified = [&](const Isometry& t) { return is_anticlique(v, t, cfg); };

    // herm_basis()[0] is the scalar direction; the rest are traceless and
    // HS-normalized, hence non-scalar.
    std::vector<const CMatrix*> gens;
    for (std::size_t i = 1; i < v.herm_basis().size(); ++i) gens.push_back(&v.herm_basis()[i]);

    if (gens.empty()) {
        note("system is scalar; every rank-2 projection works");
        CMatrix cols = CMatrix::Identity(3, 2);
        return verified(Isometry(std::move(cols)));
    }

    std::size_t first = 0;
    AnticliqueFamily family = classify_two_anticliques_m3(*gens[first], cfg);
    while (std::holds_alternative<AllTwoAnticliques>(family) && first + 1 < gens.size()) {
        family = classify_two_anticliques_m3(*gens[++first], cfg);
    }

    if (std::holds_alternative<AllTwoAnticliques>(family)) {
        note("all generators classified scalar at the cluster tolerance");
        CMatrix cols = CMatrix::Identity(3, 2);
        return verified(Isometry(std::move(cols)));
    }

    if (const auto* unique = std::get_if<UniqueTwoAnticlique>(&family)) {
        auto cert = verified(unique->isometry);
        if (!cert) note("unique candidate from the repeated eigenspace fails another generator");
        return cert;
    }

    const auto& fam = std::get<CircleTwoAnticliques>(family);
    const double rt = std::sqrt(fam.t);
    const double rs = std::sqrt(1.0 - fam.t);

    CircleSet set = CircleSet::full();
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (g == first) continue;
        const CMatrix& h = *gens[g];
        const double scale = std::max(1.0, spectral_norm(h));

        const Complex h_mid_hi = (fam.v_mid.adjoint() * h * fam.v_hi)(0);
        const Complex h_mid_lo = (fam.v_mid.adjoint() * h * fam.v_lo)(0);
        LinearConstraint off{rt * h_mid_hi, rs * h_mid_lo, scale};

        const double h_mm = (fam.v_mid.adjoint() * h * fam.v_mid)(0).real();
        const double h_hh = (fam.v_hi.adjoint() * h * fam.v_hi)(0).real();
        const double h_ll = (fam.v_lo.adjoint() * h * fam.v_lo)(0).real();
        const Complex h_hi_lo = (fam.v_hi.adjoint() * h * fam.v_lo)(0);
        RealConstraint diag{2.0 * rt * rs * h_hi_lo, h_mm - fam.t * h_hh - (1.0 - fam.t) * h_ll,
                            scale};

        set = apply_constraint(set, off, cfg.circle_tol);
        set = apply_constraint(set, diag, cfg.circle_tol);
        if (set.kind == CircleSet::Kind::Empty) {
            std::ostringstream msg;
            msg << "circle constraints of generator " << g + 1 << " have no common solution";
            note(msg.str());
            return std::nullopt;
        }
    }

    std::vector<Complex> candidates =
        set.kind == CircleSet::Kind::Full ? std::vector<Complex>{Complex(1.0)} : set.points;
    std::sort(candidates.begin(), candidates.end(),
              [](Complex lhs, Complex rhs) { return std::arg(lhs) < std::arg(rhs); });

    for (Complex z : candidates) {
        if (auto cert = verified(fam.realize(z))) return cert;
    }
    note("no surviving circle point passed direct compression");
    return std::nullopt;
}

std::vector<CorankComponent> corank_candidates(const CMatrix& h, const ToleranceConfig& cfg) {
    const SpectralData eig = hermitian_eig(h, cfg);
    const int n = static_cast<int>(eig.eigenvalues.size());
    std::vector<CorankComponent> out;

    for (std::size_t c = 0; c < eig.clusters.size(); ++c) {
        const int mult = eig.multiplicity(static_cast<int>(c));
        if (mult < n - 2) continue;
        const double mu = eig.cluster_mean(static_cast<int>(c));
        std::vector<int> outside;
        for (int i = 0; i < n; ++i) {
            if (i < eig.clusters[c].first || i >= eig.clusters[c].second) outside.push_back(i);
        }
        if (outside.empty()) {
            out.push_back(CorankAny{});
        } else if (outside.size() == 1) {
            out.push_back(CorankPoint{eig.eigenvectors.col(outside[0])});
        } else if (outside.size() == 2) {
            const double a0 = eig.eigenvalues[outside[0]] - mu;
            const double a1 = eig.eigenvalues[outside[1]] - mu;
            if (a0 * a1 < 0.0) {
                const int pos = a0 > 0.0 ? outside[0] : outside[1];
                const int neg = a0 > 0.0 ? outside[1] : outside[0];
                const double alpha = eig.eigenvalues[pos] - mu;
                const double beta = eig.eigenvalues[neg] - mu;
                CorankCircle circ;
                circ.u_plus = eig.eigenvectors.col(pos);
                circ.u_minus = eig.eigenvectors.col(neg);
                circ.s = alpha / (alpha - beta);
                circ.shifted = h - mu * CMatrix::Identity(n, n);
                out.push_back(std::move(circ));
            }
            // definite sign pattern: no corank-one anticlique for this scalar
        }
    }
    return out;
}

namespace {

// Does v belong to the zero set {unit v : (I - vv*) M (I - vv*) = 0} of a
// circle component?
bool circle_member(const CVector& v, const CorankCircle& c, double tol) {
    const CMatrix p = CMatrix::Identity(v.size(), v.size()) - v * v.adjoint();
    const CMatrix res = p * c.shifted * p;
    return res.norm() <= tol * std::max(1.0, c.shifted.norm());
}

bool points_aligned(const CVector& a, const CVector& b, double tol) {
    return std::abs(a.dot(b)) >= 1.0 - tol;
}

std::vector<CorankComponent> intersect_pair(const CorankComponent& x, const CorankComponent& y,
                                            const ToleranceConfig& cfg) {
    const double tol = cfg.circle_tol;
    if (std::holds_alternative<CorankAny>(x)) return {y};
    if (std::holds_alternative<CorankAny>(y)) return {x};

    if (const auto* px = std::get_if<CorankPoint>(&x)) {
        if (const auto* py = std::get_if<CorankPoint>(&y)) {
            return points_aligned(px->v, py->v, tol) ? std::vector<CorankComponent>{x}
                                                     : std::vector<CorankComponent>{};
        }
        const auto& cy = std::get<CorankCircle>(y);
        return circle_member(px->v, cy, tol) ? std::vector<CorankComponent>{x}
                                             : std::vector<CorankComponent>{};
    }
    const auto& cx = std::get<CorankCircle>(x);
    if (const auto* py = std::get_if<CorankPoint>(&y)) {
        return circle_member(py->v, cx, tol) ? std::vector<CorankComponent>{y}
                                             : std::vector<CorankComponent>{};
    }
    const auto& cy = std::get<CorankCircle>(y);

    // Members of cx have the form v(z) = xs + z ys. Membership in cy needs
    // v(z) inside span(cy.u_plus, cy.u_minus), and the compression of the
    // shifted generator to the orthocomplement of v(z) must vanish: with
    // coordinates p = u_plus* v and q = u_minus* v this reads
    // alpha |q|^2 + beta |p|^2 = 0.
    const CVector xs = std::sqrt(cx.s) * cx.u_plus;
    const CVector ys = std::sqrt(1.0 - cx.s) * cx.u_minus;

    auto project_out = [&](const CVector& w) -> CVector {
        return w - cy.u_plus * cy.u_plus.dot(w) - cy.u_minus * cy.u_minus.dot(w);
    };
    const CVector xr = project_out(xs);
    const CVector yr = project_out(ys);
    const double nx = xr.norm();
    const double ny = yr.norm();

    CircleSet set = CircleSet::full();
    if (nx > tol || ny > tol) {
        const Complex ip = xr.dot(yr); // xr* yr
        const double min_sq = nx * nx + ny * ny - 2.0 * std::abs(ip);
        if (min_sq > tol * tol) return {};
        if (std::abs(ip) > 0.0) {
            set = CircleSet::of({-std::conj(ip) / std::abs(ip)});
        }
    }

    const CMatrix& m = cy.shifted;
    const double alpha = cy.u_plus.dot(m * cy.u_plus).real();
    const double beta = cy.u_minus.dot(m * cy.u_minus).real();
    const Complex p0 = cy.u_plus.dot(xs), p1 = cy.u_plus.dot(ys);
    const Complex q0 = cy.u_minus.dot(xs), q1 = cy.u_minus.dot(ys);
    const double c0 = alpha * (std::norm(q0) + std::norm(q1)) +
                      beta * (std::norm(p0) + std::norm(p1));
    const Complex w = alpha * q1 * std::conj(q0) + beta * p1 * std::conj(p0);
    const double scale = std::max(1.0, std::abs(alpha) + std::abs(beta));
    set = apply_constraint(set, RealConstraint{w, -0.5 * c0, scale}, tol);

    if (set.kind == CircleSet::Kind::Empty) return {};
    if (set.kind == CircleSet::Kind::Full) return {x}; // the circles coincide on cx
    std::vector<CorankComponent> out;
    for (Complex z : set.points) {
        CVector v = xs + z * ys;
        v /= v.norm();
        if (circle_member(v, cy, tol)) out.push_back(CorankPoint{std::move(v)});
    }
    return out;
}

} // namespace

std::optional<CVector> corank_one_anticlique(const OperatorSystem& v, const ToleranceConfig& cfg) {
    const int n = v.n();
    if (n < 2) throw BadShape("corank_one_anticlique needs n >= 2");

    CVector e1 = CVector::Zero(n);
    e1[0] = 1.0;
    if (n == 2) return e1; // rank-1 compressions are always scalar

    std::vector<CorankComponent> state{CorankAny{}};
    for (std::size_t i = 1; i < v.herm_basis().size(); ++i) {
        const std::vector<CorankComponent> comps = corank_candidates(v.herm_basis()[i], cfg);
        if (comps.empty()) return std::nullopt;
        std::vector<CorankComponent> next;
        for (const auto& a : state) {
            for (const auto& b : comps) {
                auto merged = intersect_pair(a, b, cfg);
                next.insert(next.end(), merged.begin(), merged.end());
            }
        }
        if (next.empty()) return std::nullopt;
        state = std::move(next);
    }

    for (const auto& comp : state) {
        CVector candidate;
        if (std::holds_alternative<CorankAny>(comp)) {
            candidate = e1;
        } else if (const auto* p = std::get_if<CorankPoint>(&comp)) {
            candidate = p->v;
        } else {
            candidate = std::get<CorankCircle>(comp).realize(Complex(1.0));
        }
        if (is_anticlique(v, complement_of_vector(candidate), cfg)) return candidate;
    }
    return std::nullopt;
}

} // namespace qgraph
