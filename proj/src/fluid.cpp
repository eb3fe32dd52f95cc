#include "fene/fluid.hpp"

#include <cmath>
#include <string>

#include "fene/error.hpp"

namespace fene {

namespace {
const cplx I(0.0, 1.0);
}

VectorSpec make_vector_spec(const Torus& torus) { return {torus.make_spec(), torus.make_spec()}; }

VectorSpec to_spectral(const Torus& torus, const NodalVector& v) {
    return {torus.forward(v.v1), torus.forward(v.v2)};
}

NodalVector to_nodal(const Torus& torus, const VectorSpec& v) { return {torus.inverse(v.c1), torus.inverse(v.c2)}; }

VelocityField leray_project(const Torus& torus, const VectorSpec& f) {
    VelocityField out = make_vector_spec(torus);
    for (std::size_t i = 0; i < torus.spec_size(); ++i) {
        const double k2 = torus.xi_sq(i);
        if (k2 == 0.0) continue;
        const double a = torus.xi1(i), b = torus.xi2(i);
        const cplx dot = (a * f.c1[i] + b * f.c2[i]) / k2;
        out.c1[i] = f.c1[i] - a * dot;
        out.c2[i] = f.c2[i] - b * dot;
    }
    return out;
}

SpecArray heat_semigroup(const Torus& torus, const SpecArray& f, double t) {
    if (!(t >= 0.0)) throw DomainError("heat_semigroup: t must be nonnegative");
    SpecArray out = f;
    if (t == 0.0) return out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::exp(-t * torus.xi_sq(i));
    return out;
}

VectorSpec heat_semigroup(const Torus& torus, const VectorSpec& f, double t) {
    return {heat_semigroup(torus, f.c1, t), heat_semigroup(torus, f.c2, t)};
}

RealArray vorticity(const Torus& torus, const VelocityField& u) {
    SpecArray w = torus.make_spec();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = I * (torus.xi1(i) * u.c2[i] - torus.xi2(i) * u.c1[i]);
    return torus.inverse(w);
}

NodalTensor velocity_gradient(const Torus& torus, const VelocityField& u) {
    SpecArray d = torus.make_spec();
    NodalTensor g;
    auto deriv = [&](const SpecArray& f, bool along_x1) {
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = I * (along_x1 ? torus.xi1(i) : torus.xi2(i)) * f[i];
        return torus.inverse(d);
    };
    g.t11 = deriv(u.c1, true);
    g.t12 = deriv(u.c2, true);
    g.t21 = deriv(u.c1, false);
    g.t22 = deriv(u.c2, false);
    return g;
}

double max_speed(const NodalVector& u) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.v1.size(); ++i) m = std::max(m, std::hypot(u.v1[i], u.v2[i]));
    return m;
}

void check_cfl(const Torus& torus, const NodalVector& u, double dt, double limit) {
    const double c = dt * max_speed(u) * torus.kmax();
    if (!std::isfinite(c)) throw BlowUpError("non-finite velocity");
    if (c > limit)
        throw StepSizeError("CFL violation: dt * max|u| * kmax = " + std::to_string(c) + " > " +
                            std::to_string(limit));
}

VectorSpec advection_tendency(const Torus& torus, const NodalVector& u) {
    const std::size_t n = torus.nodes();
    RealArray p = torus.make_real();
    SpecArray f11 = torus.make_spec(), f12 = torus.make_spec(), f22 = torus.make_spec();
    for (std::size_t i = 0; i < n; ++i) p[i] = u.v1[i] * u.v1[i];
    torus.forward(p, f11);
    for (std::size_t i = 0; i < n; ++i) p[i] = u.v1[i] * u.v2[i];
    torus.forward(p, f12);
    for (std::size_t i = 0; i < n; ++i) p[i] = u.v2[i] * u.v2[i];
    torus.forward(p, f22);
    VectorSpec div = make_vector_spec(torus);
    for (std::size_t i = 0; i < torus.spec_size(); ++i) {
        if (!torus.kept(i)) continue;
        const double a = torus.xi1(i), b = torus.xi2(i);
        div.c1[i] = -I * (a * f11[i] + b * f12[i]);
        div.c2[i] = -I * (a * f12[i] + b * f22[i]);
    }
    return leray_project(torus, div);
}

namespace {

VectorSpec tendency(const Torus& torus, const VelocityField& u, const VectorSpec& forcing, double dt,
                    const NsOptions& opts, bool cfl) {
    VectorSpec t = forcing;
    if (opts.advection) {
        const NodalVector un = to_nodal(torus, u);
        if (cfl) check_cfl(torus, un, dt, opts.cfl_limit);
        const VectorSpec adv = advection_tendency(torus, un);
        for (std::size_t i = 0; i < torus.spec_size(); ++i) {
            t.c1[i] += adv.c1[i];
            t.c2[i] += adv.c2[i];
        }
    }
    return t;
}

}  // namespace

VelocityField ns_step(const Torus& torus, const VelocityField& u, const VectorSpec& stress_div, double dt,
                      const NsOptions& opts) {
    if (!(dt > 0.0)) throw DomainError("ns_step: dt must be positive");
    VectorSpec forcing = leray_project(torus, stress_div);
    torus.apply_mask(forcing.c1);
    torus.apply_mask(forcing.c2);

    const std::size_t ns = torus.spec_size();
    std::vector<double> E(ns);
    for (std::size_t i = 0; i < ns; ++i) E[i] = std::exp(-opts.nu * torus.xi_sq(i) * dt);

    const VectorSpec k1 = tendency(torus, u, forcing, dt, opts, true);
    VelocityField stage = make_vector_spec(torus);
    for (std::size_t i = 0; i < ns; ++i) {
        stage.c1[i] = E[i] * (u.c1[i] + dt * k1.c1[i]);
        stage.c2[i] = E[i] * (u.c2[i] + dt * k1.c2[i]);
    }
    const VectorSpec k2 = tendency(torus, stage, forcing, dt, opts, false);
    VelocityField out = make_vector_spec(torus);
    for (std::size_t i = 0; i < ns; ++i) {
        if (torus.xi_sq(i) == 0.0) continue;
        out.c1[i] = E[i] * u.c1[i] + 0.5 * dt * (E[i] * k1.c1[i] + k2.c1[i]);
        out.c2[i] = E[i] * u.c2[i] + 0.5 * dt * (E[i] * k1.c2[i] + k2.c2[i]);
    }
    require_finite(out, "ns_step");
    return out;
}

double energy(const Torus& torus, const VelocityField& u) { return torus.l2_sq(u.c1) + torus.l2_sq(u.c2); }

double enstrophy(const Torus& torus, const VelocityField& u) {
    std::vector<double> terms(torus.spec_size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = torus.multiplicity(i) * torus.xi_sq(i) * (std::norm(u.c1[i]) + std::norm(u.c2[i]));
    return torus.length() * torus.length() * pairwise_sum(terms.data(), terms.size());
}

double divergence_residual(const Torus& torus, const VelocityField& u) {
    double worst = 0.0;
    for (std::size_t i = 0; i < torus.spec_size(); ++i) {
        if (torus.xi_sq(i) == 0.0) continue;
        const double mag = std::sqrt(std::norm(u.c1[i]) + std::norm(u.c2[i]));
        if (mag == 0.0) continue;
        const double div = std::abs(torus.xi1(i) * u.c1[i] + torus.xi2(i) * u.c2[i]);
        worst = std::max(worst, div / (mag * std::sqrt(torus.xi_sq(i))));
    }
    return worst;
}

void require_finite(const VectorSpec& v, const char* where) {
    for (std::size_t i = 0; i < v.c1.size(); ++i)
        if (!std::isfinite(v.c1[i].real()) || !std::isfinite(v.c1[i].imag()) || !std::isfinite(v.c2[i].real()) ||
            !std::isfinite(v.c2[i].imag()))
            throw BlowUpError(std::string(where) + ": non-finite spectral coefficient");
}

}  // namespace fene
