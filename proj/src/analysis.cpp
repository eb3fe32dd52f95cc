#include "fene/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fene/error.hpp"

namespace fene {

namespace {

const cplx I(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

void require_exponents(double p, double q, const char* where) {
    if (!(p >= 1.0) || !(q >= p)) throw DomainError(std::string(where) + ": requires 1 <= p <= q");
}

std::pair<RealArray, RealArray> gradient_nodal(const Torus& torus, const SpecArray& f) {
    SpecArray d1 = torus.make_spec(), d2 = torus.make_spec();
    for (std::size_t i = 0; i < f.size(); ++i) {
        d1[i] = I * torus.xi1(i) * f[i];
        d2[i] = I * torus.xi2(i) * f[i];
    }
    return {torus.inverse(d1), torus.inverse(d2)};
}

struct LineFit {
    double slope, intercept, r2, curvature;
    int points;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit: window must contain distinct abscissae");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ssr = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        ssr += r * r;
    }
    const double r2 = syy > 0.0 ? 1.0 - ssr / syy : (ssr == 0.0 ? 1.0 : 0.0);
    double curvature = 0.0;
    if (n >= 3) {
        Eigen::MatrixXd A(n, 3);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            const double c = x[i] - mx;
            A(i, 0) = 1.0;
            A(i, 1) = c;
            A(i, 2) = c * c;
            b[i] = y[i];
        }
        curvature = A.colPivHouseholderQr().solve(b)[2];
    }
    return {slope, intercept, r2, curvature, n};
}

FitResult windowed_fit(const std::vector<double>& t, const std::vector<double>& value, double t0, double t1,
                       bool power) {
    if (t.size() != value.size()) throw DomainError("fit: series length mismatch");
    if (!(t1 > t0) || !(t0 >= 0.0)) throw DomainError("fit: requires t1 > t0 >= 0");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t0 || t[i] > t1) continue;
        if (!(value[i] > 0.0) || !std::isfinite(value[i]))
            throw DomainError("fit: values must be positive in the window");
        x.push_back(power ? std::log1p(t[i]) : t[i]);
        y.push_back(std::log(value[i]));
    }
    if (x.size() < 2) throw DomainError("fit: fewer than two samples in the window");
    const LineFit f = least_squares(x, y);
    return FitResult{f.slope, f.intercept, f.r2, f.curvature, f.points};
}

}  // namespace

// ---------------------------------------------------------------- norms

double lp_norm(const Torus& torus, const RealArray& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f) m = std::max(m, std::abs(v));
        return m;
    }
    std::vector<double> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = p == 1.0 ? std::abs(f[i]) : std::pow(std::abs(f[i]), p);
    return std::pow(torus.cell_area() * pairwise_sum(a.data(), a.size()), 1.0 / p);
}

double lp_norm(const Torus& torus, const RealArray& a, const RealArray& b, double p) {
    RealArray n(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) n[i] = std::hypot(a[i], b[i]);
    return lp_norm(torus, n, p);
}

// ---------------------------------------------------------------- dyadic blocks

double chi_profile(double rho) { return 1.0 - smooth_step((rho - 0.75) / (4.0 / 3.0 - 0.75)); }

double phi_profile(double rho) { return chi_profile(0.5 * rho) - chi_profile(rho); }

DyadicFamily::DyadicFamily(const Torus& torus) : spec_size_(torus.spec_size()) {
    double lo = kInf, hi = 0.0;
    for (std::size_t i = 0; i < spec_size_; ++i) {
        if (torus.xi_sq(i) == 0.0) continue;
        const double r = std::sqrt(torus.xi_sq(i));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    j_min_ = static_cast<int>(std::floor(std::log2(3.0 * lo / 8.0)));
    j_max_ = static_cast<int>(std::ceil(std::log2(4.0 * hi / 3.0)));
    mult_.assign(block_count(), std::vector<double>(spec_size_, 0.0));
    for (std::size_t i = 0; i < spec_size_; ++i) {
        if (torus.xi_sq(i) == 0.0) continue;
        const double r = std::sqrt(torus.xi_sq(i));
        double sum = 0.0;
        for (int j = j_min_; j <= j_max_; ++j) {
            const double v = phi_profile(std::ldexp(r, -j));
            mult_[j - j_min_][i] = v;
            sum += v;
        }
        raw_error_ = std::max(raw_error_, std::abs(sum - 1.0));
        for (int j = j_min_; j <= j_max_; ++j) mult_[j - j_min_][i] /= sum;
    }
}

double DyadicFamily::partition_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < spec_size_; ++i) {
        double sum = 0.0;
        bool any = false;
        for (const auto& m : mult_) {
            sum += m[i];
            any = any || m[i] != 0.0;
        }
        if (any) worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

std::vector<RealArray> dyadic_blocks(const Torus& torus, const DyadicFamily& fam, const SpecArray& f) {
    if (f.size() != fam.spec_size() || torus.spec_size() != fam.spec_size())
        throw DomainError("dyadic_blocks: family range too small for the field's spectrum");
    double scale = 0.0;
    for (const cplx& c : f) scale = std::max(scale, std::abs(c));
    if (std::abs(f[0]) > 1e-12 * scale) throw DomainError("dyadic_blocks: field is not mean-free");
    std::vector<RealArray> out;
    out.reserve(fam.block_count());
    SpecArray b = torus.make_spec();
    for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
        for (std::size_t i = 0; i < f.size(); ++i) b[i] = fam.multiplier(j, i) * f[i];
        out.push_back(torus.inverse(b));
    }
    return out;
}

double besov_b011(const Torus& torus, const DyadicFamily& fam, const SpecArray& f) {
    const std::vector<RealArray> blocks = dyadic_blocks(torus, fam, f);
    double acc = 0.0;
    for (const RealArray& b : blocks) acc += grid_l1(torus, b);
    return acc;
}

double besov_b011(const Torus& torus, const DyadicFamily& fam, const VectorSpec& f) {
    if (f.c1.size() != fam.spec_size() || torus.spec_size() != fam.spec_size())
        throw DomainError("besov_b011: family range too small for the field's spectrum");
    double acc = 0.0;
    SpecArray b1 = torus.make_spec(), b2 = torus.make_spec();
    RealArray n1 = torus.make_real(), n2 = torus.make_real();
    for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
        bool any = false;
        for (std::size_t i = 0; i < f.c1.size(); ++i) {
            const double m = fam.multiplier(j, i);
            b1[i] = m * f.c1[i];
            b2[i] = m * f.c2[i];
            any = any || b1[i] != 0.0 || b2[i] != 0.0;
        }
        if (!any) continue;
        torus.inverse(b1, n1);
        torus.inverse(b2, n2);
        acc += lp_norm(torus, n1, n2, 1.0);
    }
    return acc;
}

// ---------------------------------------------------------------- Bernstein / heat

SpecArray annulus_field(const Torus& torus, double lambda, const CounterRng& rng, std::uint64_t trial) {
    const CounterRng r = rng.split(trial);
    const double L = torus.length();
    const double x0 = L * r.uniform(0), y0 = L * r.uniform(1);
    const double a2 = 0.6 * r.uniform(2), t2 = 2 * std::numbers::pi * r.uniform(3);
    const double a4 = 0.3 * r.uniform(4), t4 = 2 * std::numbers::pi * r.uniform(5);
    SpecArray f = torus.make_spec();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!torus.kept(i) || torus.xi_sq(i) == 0.0) continue;
        const double w = phi_profile(std::sqrt(torus.xi_sq(i)) / lambda);
        if (w == 0.0) continue;
        const double th = std::atan2(torus.xi2(i), torus.xi1(i));
        const double amp = w * (1.0 + a2 * std::cos(2 * (th - t2)) + a4 * std::cos(4 * (th - t4)));
        f[i] = std::polar(amp, -(torus.xi1(i) * x0 + torus.xi2(i) * y0));
    }
    return f;
}

BernsteinReport bernstein_check(const Torus& torus, double lambda, double p, double q, int trials,
                                const CounterRng& rng) {
    require_exponents(p, q, "bernstein_check");
    BernsteinReport rep;
    rep.lambda = lambda;
    rep.p = p;
    rep.q = q;
    rep.trials = trials;
    rep.grad_lower = kInf;
    const double t = 1.0 / (lambda * lambda);
    const double scale_q = std::pow(lambda, 2.0 * (1.0 / p - (std::isinf(q) ? 0.0 : 1.0 / q)));
    for (int k = 0; k < trials; ++k) {
        const SpecArray f = annulus_field(torus, lambda, rng, static_cast<std::uint64_t>(k));
        const RealArray u = torus.inverse(f);
        const double up = lp_norm(torus, u, p);
        if (!(up > 0.0)) throw DomainError("bernstein_check: annulus contains no lattice modes");
        const auto [g1, g2] = gradient_nodal(torus, f);
        const double gr = lp_norm(torus, g1, g2, p) / (lambda * up);
        rep.grad_lower = std::min(rep.grad_lower, gr);
        rep.grad_upper = std::max(rep.grad_upper, gr);
        rep.lq_constant = std::max(rep.lq_constant, lp_norm(torus, u, q) / (scale_q * up));
        const RealArray h = torus.inverse(heat_semigroup(torus, f, t));
        rep.heat_ratio = std::max(rep.heat_ratio, lp_norm(torus, h, p) / up);
    }
    rep.heat_rate = -std::log(rep.heat_ratio);
    return rep;
}

double dyadic_heat_sum_sup(double s, double c, int j_lo, int j_hi, int points_per_octave) {
    const double log_lo = -2.0 * j_hi - 4.0;
    const double log_hi = -2.0 * j_lo + 4.0;
    const int n = static_cast<int>(std::ceil((log_hi - log_lo) * points_per_octave));
    double best = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = std::exp2(log_lo + (log_hi - log_lo) * i / n);
        double sum = 0.0;
        for (int j = j_lo; j <= j_hi; ++j) {
            const double x = t * std::exp2(2.0 * j);
            sum += std::pow(x, s) * std::exp(-c * x);
        }
        best = std::max(best, sum);
    }
    return best;
}

HeatReport heat_lplq_check(const Torus& torus, const std::vector<SpecArray>& fields, double p, double q,
                           const std::vector<double>& times, bool gradient) {
    require_exponents(p, q, "heat_lplq_check");
    HeatReport rep;
    rep.p = p;
    rep.q = q;
    rep.gradient = gradient;
    rep.times = times;
    std::vector<double> norms;
    for (const SpecArray& f : fields) norms.push_back(lp_norm(torus, torus.inverse(f), p));
    const double expo = 1.0 / p - (std::isinf(q) ? 0.0 : 1.0 / q) + (gradient ? 0.5 : 0.0);
    for (double t : times) {
        double best = 0.0;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (!(norms[k] > 0.0)) continue;
            const SpecArray h = heat_semigroup(torus, fields[k], t);
            double nq;
            if (gradient) {
                const auto [g1, g2] = gradient_nodal(torus, h);
                nq = lp_norm(torus, g1, g2, q);
            } else {
                nq = lp_norm(torus, torus.inverse(h), q);
            }
            best = std::max(best, std::pow(t, expo) * nq / norms[k]);
        }
        rep.ratio.push_back(best);
        rep.sup = std::max(rep.sup, best);
    }
    return rep;
}

SpecArray gaussian_field(const Torus& torus, double width) {
    RealArray f = torus.make_real();
    const double c = 0.5 * torus.length();
    for (int iy = 0; iy < torus.ny(); ++iy)
        for (int ix = 0; ix < torus.nx(); ++ix) {
            const double dx = torus.x1(ix) - c, dy = torus.x2(iy) - c;
            f[static_cast<std::size_t>(iy) * torus.nx() + ix] = std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
        }
    return torus.forward(f);
}

double whole_space_window(const Torus& torus) {
    const double r = torus.length() / (2.0 * std::numbers::pi);
    return r * r / 10.0;
}

// ---------------------------------------------------------------- configuration space

PoincareReport poincare_check(const ConfigBasis& basis, const std::vector<ConfigCoeffs>& samples) {
    const FpOperator op(basis, 1.0);
    PoincareReport rep;
    const GapMode gap = spectral_gap_mode(basis);
    rep.lambda1 = gap.lambda;
    rep.min_ratio = kInf;
    for (const ConfigCoeffs& c : samples) {
        if (c(0, 0) != cplx(0.0)) throw DomainError("poincare_check: sample is not mean-zero");
        const double e = entropy(c);
        if (!(e > 0.0)) throw DomainError("poincare_check: zero sample");
        rep.min_ratio = std::min(rep.min_ratio, dissipation(c, op) / e);
        ++rep.samples;
    }
    ConfigCoeffs v(basis.m_max(), basis.n_r());
    for (int n = 0; n < basis.n_r(); ++n) v.set(gap.m, n, gap.eigenvector[n]);
    rep.eigen_ratio = dissipation(v, op) / entropy(v);
    return rep;
}

std::vector<ConfigCoeffs> random_mean_zero(const ConfigBasis& basis, int count, const CounterRng& rng, int max_n,
                                           bool only_m2) {
    const int nr = basis.n_r();
    const int top = max_n < 0 ? nr : std::min(max_n, nr);
    std::vector<ConfigCoeffs> out;
    for (int s = 0; s < count; ++s) {
        const CounterRng r = rng.split(static_cast<std::uint64_t>(s));
        ConfigCoeffs c(basis.m_max(), nr);
        for (int m = 0; m <= basis.m_max(); ++m) {
            if (only_m2 && m != 2) continue;
            for (int n = 0; n < top; ++n) {
                if (m == 0 && n == 0) continue;
                const std::uint64_t key = 2 * static_cast<std::uint64_t>(m * 4096 + n);
                c.set(m, n, cplx(r.normal(key), m == 0 ? 0.0 : r.normal(key + 1)));
            }
        }
        out.push_back(c);
    }
    return out;
}

PEntropyQuadrature::PEntropyQuadrature(const ConfigBasis& basis, int p, int radial, int angular) : p_(p) {
    if (p < 2 || p % 2 != 0) throw DomainError("p_entropy: p must be an even integer >= 2");
    // |g|^p is a polynomial of degree D in (R1, R2); its angular average is of degree D/2 in s
    const int degree = p * (2 * (basis.n_r() - 1) + basis.m_max());
    need_radial_ = degree / 4 + 1;
    need_angular_ = degree + 1;
    if (radial == 0) radial = need_radial_;
    if (angular == 0) angular = need_angular_;
    if (radial < need_radial_ || angular < need_angular_)
        throw DomainError("p_entropy: quadrature node shortage for degree " + std::to_string(degree));
    const DiskQuadrature dq = disk_quadrature(basis.equilibrium(), radial, angular, 0.0);
    const int F = basis.field_count();
    phi_.resize(dq.size(), F);
    weight_.resize(dq.size());
    for (int q = 0; q < dq.size(); ++q) {
        const Point2 R = dq.point(q);
        weight_[q] = dq.weight[q];
        for (int f = 0; f < F; ++f) phi_(q, f) = basis.real_value(f, R);
    }
}

double PEntropyQuadrature::integral(std::span<const double> x) const {
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
    const Eigen::VectorXd g = phi_ * v;
    double acc = 0.0;
    for (Eigen::Index q = 0; q < g.size(); ++q) {
        const double g2 = g[q] * g[q];
        double gp = g2;
        for (int e = 2; e < p_; e += 2) gp *= g2;
        acc += weight_[q] * gp;
    }
    return acc;
}

PEntropy p_entropy(const Torus& torus, const ConfigField& cfg, const PEntropyQuadrature& quad) {
    const std::size_t n = cfg.nodes();
    const int F = cfg.field_count();
    std::vector<int> active;
    for (int f = 0; f < F; ++f)
        if (!cfg.is_zero(f)) active.push_back(f);
    PEntropy out;
    if (active.empty()) return out;
    std::vector<double> dens(n), root(n), x(F, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int f : active) x[f] = cfg.field(f)[i];
        dens[i] = quad.integral(x);
        root[i] = std::pow(dens[i], 1.0 / quad.p());
    }
    out.integral = torus.cell_area() * pairwise_sum(dens.data(), n);
    out.l1lp = torus.cell_area() * pairwise_sum(root.data(), n);
    return out;
}

Eigen::MatrixXd stress_gram(const ConfigBasis& basis, const StressMoments& mom) {
    const int F = basis.field_count();
    const Eigen::Map<const Eigen::VectorXd> a(mom.w11.data(), F), b(mom.w12.data(), F), c(mom.w22.data(), F);
    return a * a.transpose() + 2.0 * b * b.transpose() + c * c.transpose();
}

TauBoundReport tau_bound_check(const ConfigBasis& basis, const std::vector<ConfigCoeffs>& samples,
                               const Torus& torus, const std::vector<ConfigField>& fields,
                               const PEntropyQuadrature& quad) {
    if (!fields.empty() && !(quad.p() * basis.params().k > 1.0))
        throw DomainError("tau_bound_check: the L1 stress bound requires p*k > 1");
    const StressMoments mom = stress_moments(basis);
    const FpOperator op(basis, 1.0);
    const int F = basis.field_count();
    const int nr = basis.n_r();

    // quadratic forms on the mean-zero subspace (field 0 is c_{0,0})
    const Eigen::MatrixXd M = stress_gram(basis, mom).bottomRightCorner(F - 1, F - 1);
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(F, F), D = Eigen::MatrixXd::Zero(F, F);
    for (int a = 0; a < F; ++a) {
        const FieldKey ka = basis.field_key(a);
        W(a, a) = basis.field_weight(a);
        for (int n = 0; n < nr; ++n) {
            const int b = basis.field_index(ka.m, n, ka.part);
            D(a, b) = basis.field_weight(a) * op.stiffness(ka.m)(ka.n, n);
        }
    }
    W = W.bottomRightCorner(F - 1, F - 1).eval();
    D = D.bottomRightCorner(F - 1, F - 1).eval();

    TauBoundReport rep;
    auto top = [&](double lam) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, lam * W + D / lam, Eigen::EigenvaluesOnly);
        return 2.0 * es.eigenvalues().maxCoeff();
    };
    double best_lam = 1.0, best = 0.0;
    for (int i = 0; i <= 240; ++i) {
        const double lam = std::pow(10.0, -4.0 + 8.0 * i / 240.0);
        const double v = top(lam);
        if (v > best) {
            best = v;
            best_lam = lam;
        }
    }
    double lo = std::log(best_lam) - 0.08, hi = std::log(best_lam) + 0.08;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
        if (top(std::exp(a)) > top(std::exp(b)))
            hi = b;
        else
            lo = a;
    }
    rep.pointwise_sup = std::max(best, top(std::exp(0.5 * (lo + hi))));

    for (const ConfigCoeffs& c : samples) {
        const std::vector<double> x = c.to_real();
        const std::array<double, 3> t = stress_at(mom, x);
        const double t2 = t[0] * t[0] + 2.0 * t[1] * t[1] + t[2] * t[2];
        const double ed = std::sqrt(entropy(c) * dissipation(c, op));
        if (ed > 0.0) rep.pointwise_sample = std::max(rep.pointwise_sample, t2 / ed);
        ++rep.samples;
    }

    rep.l1_ratio_min = fields.empty() ? 0.0 : kInf;
    for (const ConfigField& f : fields) {
        const double num = tau_l1(torus, stress(f, mom));
        const double den = p_entropy(torus, f, quad).l1lp;
        if (!(den > 0.0)) continue;
        rep.l1_ratio_max = std::max(rep.l1_ratio_max, num / den);
        rep.l1_ratio_min = std::min(rep.l1_ratio_min, num / den);
        ++rep.fields;
    }
    return rep;
}

double tau_l1(const Torus& torus, const StressField& tau) {
    std::vector<double> a(tau.t11.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = std::sqrt(tau.t11[i] * tau.t11[i] + 2.0 * tau.t12[i] * tau.t12[i] + tau.t22[i] * tau.t22[i]);
    return torus.cell_area() * pairwise_sum(a.data(), a.size());
}

double tau_l2_sq(const Torus& torus, const StressField& tau) {
    std::vector<double> a(tau.t11.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = tau.t11[i] * tau.t11[i] + 2.0 * tau.t12[i] * tau.t12[i] + tau.t22[i] * tau.t22[i];
    return torus.cell_area() * pairwise_sum(a.data(), a.size());
}

// ---------------------------------------------------------------- splitting / fits

double splitting_integral(const Torus& torus, const VelocityField& u, double t) {
    if (!(t >= 0.0)) throw DomainError("splitting_integral: requires t >= 0");
    const double r2 = 2.0 / (1.0 + t);
    std::vector<double> terms;
    for (std::size_t i = 0; i < u.c1.size(); ++i)
        if (torus.xi_sq(i) <= r2) terms.push_back(torus.multiplicity(i) * (std::norm(u.c1[i]) + std::norm(u.c2[i])));
    const double L2 = torus.length() * torus.length();
    return L2 * pairwise_sum(terms.data(), terms.size());
}

double splitting_max(const Torus& torus, const VelocityField& u, double t) {
    const double r2 = 2.0 / (1.0 + t);
    double m = 0.0;
    for (std::size_t i = 0; i < u.c1.size(); ++i)
        if (torus.xi_sq(i) <= r2) m = std::max(m, std::sqrt(std::norm(u.c1[i]) + std::norm(u.c2[i])));
    return torus.length() * torus.length() * m;
}

FitResult decay_fit(const std::vector<double>& t, const std::vector<double>& value, double t0, double t1) {
    return windowed_fit(t, value, t0, t1, true);
}

FitResult exp_fit(const std::vector<double>& t, const std::vector<double>& value, double t0, double t1) {
    return windowed_fit(t, value, t0, t1, false);
}

// ---------------------------------------------------------------- diagnostics

DiagnosticsRecorder::DiagnosticsRecorder(const CoupledSolver& solver, int p, bool with_production)
    : solver_(solver), fam_(solver.torus()), with_production_(with_production) {
    if (p > 0) quad_.emplace(solver.basis(), p);
    if (with_production) production_op_ = drag_operator(solver.basis());
}

void DiagnosticsRecorder::start(const SimState& s) {
    last_t_ = s.t;
    last_norm3_ = std::pow(energy(solver_.torus(), s.u), 1.5);
    cum_u3_ = 0.0;
}

void DiagnosticsRecorder::advance(const SimState& s) {
    const double n3 = std::pow(energy(solver_.torus(), s.u), 1.5);
    cum_u3_ += 0.5 * (s.t - last_t_) * (last_norm3_ + n3);
    last_t_ = s.t;
    last_norm3_ = n3;
}

DiagnosticsRow DiagnosticsRecorder::row(const SimState& s) const {
    const Torus& torus = solver_.torus();
    DiagnosticsRow r;
    r.t = s.t;
    r.energy_u = energy(torus, s.u);
    r.enstrophy = enstrophy(torus, s.u);
    r.entropy2 = entropy(torus, s.cfg);
    r.dissipation = dissipation(torus, s.cfg, solver_.half_operator());
    const StressField tau = stress(s.cfg, solver_.moments());
    r.tau_l2 = tau_l2_sq(torus, tau);
    r.tau_l1 = tau_l1(torus, tau);
    r.besov_b011 = besov_b011(torus, fam_, s.u);
    r.splitting_integral = splitting_integral(torus, s.u, s.t);
    if (quad_) {
        const PEntropy pe = p_entropy(torus, s.cfg, *quad_);
        r.entropy_p = pe.integral;
        r.l1lp_norm = pe.l1lp;
    }
    r.cum_u3 = cum_u3_;
    const NodalVector un = to_nodal(torus, s.u);
    r.u_l1 = lp_norm(torus, un.v1, un.v2, 1.0);
    r.splitting_max = splitting_max(torus, s.u, s.t);
    r.mass_defect = s.cfg.mass_defect();
    if (with_production_)
        r.production = entropy_production(torus, s.cfg, production_op_, sigma(torus, s.u, solver_.options().drag));
    return r;
}

// ---------------------------------------------------------------- run-level checks

BootstrapReport bootstrap_tracker(const std::vector<DiagnosticsRow>& history) {
    BootstrapReport rep;
    if (history.empty()) return rep;
    const double u0_l1 = history.front().u_l1;
    double int_diss = 0.0, int_src = 0.0;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const DiagnosticsRow& r = history[i];
        if (i > 0) {
            const DiagnosticsRow& p = history[i - 1];
            const double dt = r.t - p.t;
            int_diss += 0.5 * dt * (p.dissipation + r.dissipation);
            int_src += 0.5 * dt * (p.energy_u + p.tau_l1 + r.energy_u + r.tau_l1);
        }
        const double cubic = std::cbrt(r.cum_u3) / std::pow(1.0 + r.t, 1.0 / 12.0);
        const double split = r.splitting_integral / (1.0 / std::sqrt(1.0 + r.t) + int_diss);
        const double den = u0_l1 + std::sqrt(2.0 / (1.0 + r.t)) * int_src;
        const double major = den > 0.0 ? r.splitting_max / den : 0.0;
        rep.cubic.push_back(cubic);
        rep.splitting.push_back(split);
        rep.majorant.push_back(major);
        rep.cubic_max = std::max(rep.cubic_max, cubic);
        rep.splitting_max = std::max(rep.splitting_max, split);
        rep.majorant_max = std::max(rep.majorant_max, major);
        rep.finite = rep.finite && std::isfinite(cubic) && std::isfinite(split) && std::isfinite(major);
    }
    return rep;
}

BesovAprioriReport besov_apriori_check(const std::vector<DiagnosticsRow>& history) {
    BesovAprioriReport rep;
    if (history.empty()) return rep;
    rep.besov0 = history.front().besov_b011;
    const double t0 = history.front().t;
    for (const DiagnosticsRow& r : history) {
        rep.sup_besov = std::max(rep.sup_besov, r.besov_b011);
        if (r.t > t0) rep.fitted_c = std::max(rep.fitted_c, std::max(r.besov_b011 - rep.besov0, 0.0) / std::sqrt(r.t - t0));
        rep.finite = rep.finite && std::isfinite(r.besov_b011);
    }
    return rep;
}

LyapunovReport lyapunov_search(const std::vector<DiagnosticsRow>& history, int max_exponent, double rel_slack) {
    LyapunovReport rep;
    for (int e = 0; e <= max_exponent; ++e) {
        const double lam = std::ldexp(1.0, e);
        double worst = 0.0;
        for (std::size_t i = 1; i < history.size(); ++i) {
            const double a = lam * history[i - 1].entropy2 + history[i - 1].energy_u;
            const double b = lam * history[i].entropy2 + history[i].energy_u;
            if (a > 0.0) worst = std::max(worst, (b - a) / a - rel_slack);
            else if (b > 0.0) worst = std::max(worst, kInf);
        }
        rep.worst_increase = worst;
        if (worst <= 0.0) {
            rep.found = true;
            rep.lambda = lam;
            rep.worst_increase = 0.0;
            return rep;
        }
    }
    return rep;
}

double energy_inequality_excess(const std::vector<DiagnosticsRow>& history, double nu) {
    double worst = -kInf;
    for (std::size_t i = 1; i < history.size(); ++i) {
        const DiagnosticsRow& a = history[i - 1];
        const DiagnosticsRow& b = history[i];
        const double dt = b.t - a.t;
        if (!(dt > 0.0)) continue;
        const double diss = 0.5 * nu * (a.enstrophy + b.enstrophy);
        const double src = 0.5 * (a.tau_l2 + b.tau_l2) / nu;
        const double scale = diss + src;
        const double excess = (b.energy_u - a.energy_u) / dt + diss - src;
        worst = std::max(worst, scale > 0.0 ? excess / scale : (excess > 0.0 ? kInf : 0.0));
    }
    return history.size() < 2 ? 0.0 : worst;
}

}  // namespace fene
