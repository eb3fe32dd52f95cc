#include "fene/configspace.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

#include "fene/error.hpp"

namespace fene {

namespace {

/// Three-term recurrence of the monic polynomials orthogonal for (1-s)^alpha s^beta
/// on [0,1]: s q_n = q_{n+1} + a_n q_n + b_n q_{n-1}. Entries n = 0..count-1; b[0] is
/// the total mass of the weight.
struct Recurrence {
    std::vector<double> a;
    std::vector<double> b;
};

Recurrence jacobi_recurrence(int count, double alpha, double beta) {
    Recurrence r;
    r.a.resize(count);
    r.b.resize(count);
    const double ab = alpha + beta;
    for (int n = 0; n < count; ++n) {
        const double two_n = 2.0 * n + ab;
        double ax;
        if (n == 0)
            ax = (beta - alpha) / (ab + 2.0);
        else
            ax = (beta * beta - alpha * alpha) / (two_n * (two_n + 2.0));
        r.a[n] = 0.5 * (ax + 1.0);
        if (n == 0) {
            r.b[0] = std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
        } else if (n == 1) {
            r.b[1] = 0.25 * 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            const double num = 4.0 * n * (n + alpha) * (n + beta) * (n + ab);
            const double den = two_n * two_n * (two_n + 1.0) * (two_n - 1.0);
            r.b[n] = 0.25 * num / den;
        }
    }
    return r;
}

void check_point_in_disk(Point2 R, bool allow_boundary, const char* what) {
    const double s = R[0] * R[0] + R[1] * R[1];
    if (!std::isfinite(s)) throw DomainError(std::string(what) + ": non-finite point");
    if (allow_boundary ? s > 1.0 : s >= 1.0)
        throw DomainError(std::string(what) + ": point outside the configuration disk");
}

}  // namespace

void FeneParams::validate() const {
    if (!(std::isfinite(k) && k > 0.0)) throw DomainError("fene.k must be a finite positive number");
    if (n_r < 2) throw DomainError("fene.n_r must be >= 2");
    if (m_max < 2) throw DomainError("fene.m_max must be >= 2 (the m = +-2 modes carry the stress)");
}

double normalization_constant(double k) {
    if (!std::isfinite(k) || k <= -1.0) throw DomainError("normalization_constant: requires finite k > -1");
    return std::numbers::pi / (k + 1.0);
}

Equilibrium::Equilibrium(double k) : k_(k), c0_(normalization_constant(k)) {}

double Equilibrium::density(Point2 R) const {
    check_point_in_disk(R, true, "equilibrium_density");
    const double s = R[0] * R[0] + R[1] * R[1];
    if (s == 1.0) return 0.0;
    return std::pow(1.0 - s, k_) / c0_;
}

double equilibrium_density(Point2 R, const Equilibrium& eq) { return eq.density(R); }

Point2 potential_gradient(Point2 R, double k) {
    check_point_in_disk(R, false, "potential_gradient");
    const double f = 2.0 * k / (1.0 - (R[0] * R[0] + R[1] * R[1]));
    return {f * R[0], f * R[1]};
}

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw ConstructionError("gauss_jacobi: need at least one node");
    if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
    const Recurrence rec = jacobi_recurrence(n + 1, alpha, beta);

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag[i] = rec.a[i];
    for (int i = 0; i + 1 < n; ++i) sub[i] = std::sqrt(rec.b[i + 1]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConstructionError("gauss_jacobi: eigensolver failed");

    const RadialFamily fam(n + 1, alpha, beta, 1.0);
    std::vector<double> p(n + 1), dp(n + 1);

    QuadratureRule rule;
    rule.alpha = alpha;
    rule.beta = beta;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = solver.eigenvalues()[i];
        for (int it = 0; it < 4; ++it) {
            fam.evaluate(x, p, dp);
            const double step = p[n] / dp[n];
            x -= step;
            if (std::abs(step) < 1e-17) break;
        }
        fam.evaluate(x, p, dp);
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += p[j] * p[j];
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / sum;
    }
    return rule;
}

RadialFamily::RadialFamily(int size, double alpha, double beta, double scale) {
    const Recurrence rec = jacobi_recurrence(size, alpha, beta);
    diag_ = rec.a;
    offdiag_.resize(size);
    for (int n = 0; n + 1 < size; ++n) offdiag_[n] = std::sqrt(rec.b[n + 1]);
    if (size > 0) {
        // the last entry is only needed to evaluate the next polynomial
        const Recurrence ext = jacobi_recurrence(size + 1, alpha, beta);
        offdiag_[size - 1] = std::sqrt(ext.b[size]);
    }
    p0_ = 1.0 / std::sqrt(scale * rec.b[0]);
}

void RadialFamily::evaluate(double s, std::span<double> p, std::span<double> dp) const {
    const int count = std::min<int>(size(), static_cast<int>(p.size()));
    const bool want_d = !dp.empty();
    double pm1 = 0.0, dpm1 = 0.0;
    double pn = p0_, dpn = 0.0;
    for (int n = 0; n < count; ++n) {
        p[n] = pn;
        if (want_d) dp[n] = dpn;
        if (n + 1 == count) break;
        const double bn = n > 0 ? offdiag_[n - 1] : 0.0;
        const double next = ((s - diag_[n]) * pn - bn * pm1) / offdiag_[n];
        const double dnext = (pn + (s - diag_[n]) * dpn - bn * dpm1) / offdiag_[n];
        pm1 = pn;
        dpm1 = dpn;
        pn = next;
        dpn = dnext;
    }
}

Point2 DiskQuadrature::point(int q) const {
    const double r = std::sqrt(s[q]);
    return {r * std::cos(theta[q]), r * std::sin(theta[q])};
}

DiskQuadrature disk_quadrature(const Equilibrium& eq, int radial_nodes, int angular_nodes, double weight_shift) {
    const double alpha = eq.k() + weight_shift;
    if (!(alpha > -1.0)) throw DomainError("disk_quadrature: weight exponent must exceed -1");
    const QuadratureRule radial = gauss_jacobi(radial_nodes, alpha, 0.0);
    DiskQuadrature dq;
    const double scale = std::numbers::pi / (angular_nodes * eq.c0());
    for (int q = 0; q < radial_nodes; ++q) {
        for (int l = 0; l < angular_nodes; ++l) {
            dq.s.push_back(radial.nodes[q]);
            dq.theta.push_back(2.0 * std::numbers::pi * l / angular_nodes);
            dq.weight.push_back(radial.weights[q] * scale);
        }
    }
    return dq;
}

ConfigBasis::ConfigBasis(const FeneParams& params) : params_(params), eq_((params.validate(), params.k)) {
    const double scale = std::numbers::pi / eq_.c0();
    const int nq = node_count();
    for (int m = 0; m <= params_.m_max; ++m) {
        families_.emplace_back(params_.n_r, params_.k, static_cast<double>(m), scale);
        mass_rules_.push_back(gauss_jacobi(nq, params_.k, static_cast<double>(m)));
        stiffness_rules_.push_back(gauss_jacobi(nq, params_.k, static_cast<double>(std::max(m - 1, 0))));
    }
    for (int m = 0; m <= params_.m_max; ++m) {
        const auto G = gram(m);
        for (int i = 0; i < params_.n_r; ++i)
            for (int j = 0; j < params_.n_r; ++j)
                if (std::abs(G[i][j] - (i == j ? 1.0 : 0.0)) > 1e-10)
                    throw ConstructionError("build_basis: Gram matrix of mode m = " + std::to_string(m) +
                                            " is not the identity (quadrature too short)");
    }
}

int ConfigBasis::node_count() const {
    return params_.n_r + static_cast<int>(std::ceil(params_.k)) + 4;
}

const RadialFamily& ConfigBasis::family(int m) const { return families_.at(std::abs(m)); }
const QuadratureRule& ConfigBasis::mass_rule(int m) const { return mass_rules_.at(std::abs(m)); }
const QuadratureRule& ConfigBasis::stiffness_rule(int m) const { return stiffness_rules_.at(std::abs(m)); }

cplx ConfigBasis::value(int m, int n, Point2 R) const {
    const double s = R[0] * R[0] + R[1] * R[1];
    std::vector<double> p(n + 1);
    family(m).evaluate(s, p);
    const cplx z(R[0], m >= 0 ? R[1] : -R[1]);
    return std::pow(z, std::abs(m)) * p[n];
}

std::array<cplx, 2> ConfigBasis::gradient(int m, int n, Point2 R) const {
    const double s = R[0] * R[0] + R[1] * R[1];
    std::vector<double> p(n + 1), dp(n + 1);
    family(m).evaluate(s, p, dp);
    const int am = std::abs(m);
    const cplx z(R[0], m >= 0 ? R[1] : -R[1]);
    const cplx dz2 = m >= 0 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);  // d z / d R2
    const cplx zm = std::pow(z, am);
    const cplx dzm = am > 0 ? static_cast<double>(am) * std::pow(z, am - 1) : cplx(0.0);
    return {dzm * p[n] + zm * dp[n] * 2.0 * R[0], dzm * dz2 * p[n] + zm * dp[n] * 2.0 * R[1]};
}

std::vector<std::vector<double>> ConfigBasis::gram(int m) const {
    const int nr = params_.n_r;
    const QuadratureRule& rule = mass_rule(m);
    const double scale = std::numbers::pi / eq_.c0();
    std::vector<std::vector<double>> G(nr, std::vector<double>(nr, 0.0));
    std::vector<double> p(nr);
    for (int q = 0; q < rule.size(); ++q) {
        family(m).evaluate(rule.nodes[q], p);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nr; ++j) G[i][j] += scale * rule.weights[q] * p[i] * p[j];
    }
    return G;
}

int ConfigBasis::field_index(int m, int n, Part part) const {
    if (m < 0 || m > params_.m_max || n < 0 || n >= params_.n_r) throw DomainError("field_index: out of range");
    if (m == 0) return n;
    return params_.n_r + 2 * ((m - 1) * params_.n_r + n) + (part == Part::im ? 1 : 0);
}

FieldKey ConfigBasis::field_key(int f) const {
    const int nr = params_.n_r;
    if (f < nr) return {0, f, Part::re};
    const int rest = f - nr;
    const int pair = rest / 2;
    return {1 + pair / nr, pair % nr, rest % 2 == 0 ? Part::re : Part::im};
}

double ConfigBasis::real_value(int f, Point2 R) const {
    const FieldKey key = field_key(f);
    const cplx b = value(key.m, key.n, R);
    if (key.m == 0) return b.real();
    return key.part == Part::re ? 2.0 * b.real() : -2.0 * b.imag();
}

Point2 ConfigBasis::real_gradient(int f, Point2 R) const {
    const FieldKey key = field_key(f);
    const auto g = gradient(key.m, key.n, R);
    if (key.m == 0) return {g[0].real(), g[1].real()};
    if (key.part == Part::re) return {2.0 * g[0].real(), 2.0 * g[1].real()};
    return {-2.0 * g[0].imag(), -2.0 * g[1].imag()};
}

ConfigBasis build_basis(const FeneParams& params) { return ConfigBasis(params); }

}  // namespace fene
