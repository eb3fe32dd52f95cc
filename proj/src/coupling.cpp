#include "fene/coupling.hpp"

#include <cmath>
#include <numbers>

#include "fene/error.hpp"

namespace fene {

namespace {

const cplx I(0.0, 1.0);

double field_dot(const Torus& torus, const RealArray& a, const RealArray& b) {
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
    return torus.cell_area() * pairwise_sum(prod.data(), prod.size());
}

/// -div(u c) at the nodes, dealiased.
RealArray transport_tendency(const Torus& torus, const NodalVector& u, const RealArray& c) {
    const std::size_t n = torus.nodes();
    RealArray p = torus.make_real();
    SpecArray f1 = torus.make_spec(), f2 = torus.make_spec();
    for (std::size_t i = 0; i < n; ++i) p[i] = u.v1[i] * c[i];
    torus.forward(p, f1);
    for (std::size_t i = 0; i < n; ++i) p[i] = u.v2[i] * c[i];
    torus.forward(p, f2);
    for (std::size_t i = 0; i < f1.size(); ++i)
        f1[i] = torus.kept(i) ? -I * (torus.xi1(i) * f1[i] + torus.xi2(i) * f2[i]) : cplx(0.0);
    return torus.inverse(f1);
}

void require_finite(const ConfigField& cfg, const char* where) {
    for (int f = 0; f < cfg.field_count(); ++f)
        for (double v : cfg.field(f))
            if (!std::isfinite(v)) throw BlowUpError(std::string(where) + ": non-finite configuration coefficient");
}

}  // namespace

ConfigField::ConfigField(const ConfigBasis& basis, std::size_t nodes)
    : m_max_(basis.m_max()), n_r_(basis.n_r()), nodes_(nodes),
      fields_(static_cast<std::size_t>(basis.field_count()), RealArray(nodes, 0.0)) {}

RealArray& ConfigField::field(int m, int n, Part part) {
    return fields_[m == 0 ? n : n_r_ + 2 * ((m - 1) * n_r_ + n) + (part == Part::im ? 1 : 0)];
}

const RealArray& ConfigField::field(int m, int n, Part part) const {
    return fields_[m == 0 ? n : n_r_ + 2 * ((m - 1) * n_r_ + n) + (part == Part::im ? 1 : 0)];
}

ConfigCoeffs ConfigField::at(std::size_t node) const {
    std::vector<double> x(fields_.size());
    for (std::size_t f = 0; f < fields_.size(); ++f) x[f] = fields_[f][node];
    return ConfigCoeffs::from_real(x, m_max_, n_r_);
}

void ConfigField::set(std::size_t node, const ConfigCoeffs& c) {
    const std::vector<double> x = c.to_real();
    for (std::size_t f = 0; f < fields_.size(); ++f) fields_[f][node] = x[f];
}

bool ConfigField::is_zero(int f) const {
    for (double v : fields_[f])
        if (v != 0.0) return false;
    return true;
}

double ConfigField::mass_defect() const {
    double worst = 0.0;
    for (double v : fields_[0]) worst = std::max(worst, std::abs(v));
    return worst;
}

StressMoments stress_moments(const ConfigBasis& basis) {
    if (basis.m_max() < 2) throw ConstructionError("stress_moments: m_max >= 2 required");
    const int F = basis.field_count();
    const int nr = basis.n_r();
    const double k = basis.params().k;
    const double c0 = basis.equilibrium().c0();
    StressMoments mom{std::vector<double>(F, 0.0), std::vector<double>(F, 0.0), std::vector<double>(F, 0.0)};
    std::vector<double> p(nr);
    for (int m : {0, 2}) {
        const QuadratureRule rule = gauss_jacobi(basis.node_count(), k - 1.0, 1.0 + 0.5 * m);
        std::vector<double> radial(nr, 0.0);
        for (int q = 0; q < rule.size(); ++q) {
            basis.family(m).evaluate(rule.nodes[q], p);
            for (int n = 0; n < nr; ++n) radial[n] += rule.weights[q] * p[n];
        }
        for (int n = 0; n < nr; ++n) {
            // angular integrals of (cos^2, cos sin, sin^2) against e^{i m theta}
            const double a = k / c0 * std::numbers::pi * radial[n];
            if (m == 0) {
                const int f = basis.field_index(0, n, Part::re);
                mom.w11[f] = a;
                mom.w22[f] = a;
            } else {
                // T = a/2 * (1, i, -1); real layout weights are 2 Re T and -2 Im T
                const int fr = basis.field_index(2, n, Part::re);
                const int fi = basis.field_index(2, n, Part::im);
                mom.w11[fr] = a;
                mom.w22[fr] = -a;
                mom.w12[fi] = -a;
            }
        }
    }
    return mom;
}

std::array<double, 3> stress_at(const StressMoments& mom, std::span<const double> x) {
    std::array<double, 3> t{0.0, 0.0, 0.0};
    for (std::size_t f = 0; f < x.size(); ++f) {
        t[0] += mom.w11[f] * x[f];
        t[1] += mom.w12[f] * x[f];
        t[2] += mom.w22[f] * x[f];
    }
    return t;
}

StressField stress(const ConfigField& cfg, const StressMoments& mom) {
    const std::size_t n = cfg.nodes();
    StressField tau{RealArray(n, 0.0), RealArray(n, 0.0), RealArray(n, 0.0)};
    for (int f = 0; f < cfg.field_count(); ++f) {
        if (mom.w11[f] == 0.0 && mom.w12[f] == 0.0 && mom.w22[f] == 0.0) continue;
        const RealArray& x = cfg.field(f);
        for (std::size_t i = 0; i < n; ++i) {
            tau.t11[i] += mom.w11[f] * x[i];
            tau.t12[i] += mom.w12[f] * x[i];
            tau.t22[i] += mom.w22[f] * x[i];
        }
    }
    return tau;
}

NodalTensor sigma(const Torus& torus, const VelocityField& u, DragMode mode) {
    NodalTensor g = velocity_gradient(torus, u);
    if (mode == DragMode::full) return g;
    NodalTensor s{RealArray(g.t11.size(), 0.0), RealArray(g.t11.size(), 0.0), RealArray(g.t11.size(), 0.0),
                  RealArray(g.t11.size(), 0.0)};
    for (std::size_t i = 0; i < g.t11.size(); ++i) {
        s.t12[i] = 0.5 * (g.t12[i] - g.t21[i]);
        s.t21[i] = -s.t12[i];
    }
    return s;
}

DragOperator drag_operator(const ConfigBasis& basis) {
    const int F = basis.field_count();
    const double k = basis.params().k;
    const DiskQuadrature dq =
        disk_quadrature(basis.equilibrium(), basis.n_r() + basis.m_max() + 4, 4 * basis.m_max() + 8, -1.0);
    DragOperator d;
    for (int ij = 0; ij < 4; ++ij) {
        d.K[ij] = Eigen::MatrixXd::Zero(F, F);
        d.S[ij] = Eigen::VectorXd::Zero(F);
        d.transport[ij] = Eigen::MatrixXd::Zero(F, F);
    }
    d.gram = Eigen::VectorXd(F);
    for (int f = 0; f < F; ++f) d.gram[f] = basis.field_weight(f);

    Eigen::VectorXd phi(F);
    std::vector<Point2> grad(F);
    for (int q = 0; q < dq.size(); ++q) {
        const Point2 R = dq.point(q);
        const double w = dq.weight[q];
        const double one_minus_s = 1.0 - dq.s[q];
        for (int f = 0; f < F; ++f) {
            phi[f] = basis.real_value(f, R);
            grad[f] = basis.real_gradient(f, R);
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const int ij = 2 * i + j;
                const double rr = 2.0 * k * R[i] * R[j];
                d.S[ij] += w * rr * phi;
                for (int b = 0; b < F; ++b) {
                    const double drift = one_minus_s * R[j] * grad[b][i];
                    d.transport[ij].col(b) += w * drift * phi;
                    d.K[ij].col(b) += w * (rr * phi[b] - drift) * phi;
                }
            }
    }
    return d;
}

double entropy_production(const DragOperator& drag, std::span<const double> x, const std::array<double, 4>& s) {
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
    double acc = 0.0;
    for (int ij = 0; ij < 4; ++ij)
        if (s[ij] != 0.0) acc += s[ij] * v.dot(drag.transport[ij] * v);
    return acc;
}

double entropy_production(const Torus& torus, const ConfigField& cfg, const DragOperator& drag,
                          const NodalTensor& sig) {
    const std::size_t n = cfg.nodes();
    std::vector<double> dens(n);
    std::vector<double> x(cfg.field_count());
    for (std::size_t i = 0; i < n; ++i) {
        for (int f = 0; f < cfg.field_count(); ++f) x[f] = cfg.field(f)[i];
        dens[i] = entropy_production(drag, x, {sig.t11[i], sig.t12[i], sig.t21[i], sig.t22[i]});
    }
    return torus.cell_area() * pairwise_sum(dens.data(), n);
}

ConfigField fp_relax_field(const ConfigField& cfg, const FpOperator& op, double dt) {
    ConfigField out = cfg;
    const int nr = cfg.n_r();
    const std::size_t n = cfg.nodes();
    for (int m = 0; m <= cfg.m_max(); ++m) {
        const Eigen::MatrixXd P = dt == op.dt() ? op.propagator(m) : op.propagator_for(m, dt);
        for (Part part : {Part::re, Part::im}) {
            if (m == 0 && part == Part::im) continue;
            bool any = false;
            for (int j = 0; j < nr; ++j) {
                const RealArray& src = cfg.field(m, j, part);
                for (double v : src)
                    if (v != 0.0) {
                        any = true;
                        break;
                    }
                if (any) break;
            }
            if (!any) continue;
            for (int i = 0; i < nr; ++i) {
                RealArray& dst = out.field(m, i, part);
                std::fill(dst.begin(), dst.end(), 0.0);
                for (int j = 0; j < nr; ++j) {
                    const double p = P(i, j);
                    if (p == 0.0) continue;
                    const RealArray& src = cfg.field(m, j, part);
                    for (std::size_t x = 0; x < n; ++x) dst[x] += p * src[x];
                }
            }
        }
    }
    return out;
}

ConfigField rotate_field(const ConfigField& cfg, const RealArray& omega, double dt) {
    ConfigField out = cfg;
    const std::size_t n = cfg.nodes();
    for (int m = 1; m <= cfg.m_max(); ++m) {
        for (int j = 0; j < cfg.n_r(); ++j) {
            RealArray& re = out.field(m, j, Part::re);
            RealArray& im = out.field(m, j, Part::im);
            for (std::size_t x = 0; x < n; ++x) {
                if (re[x] == 0.0 && im[x] == 0.0) continue;
                const double angle = 0.5 * m * omega[x] * dt;
                const double c = std::cos(angle), s = std::sin(angle);
                const double a = re[x], b = im[x];
                re[x] = c * a - s * b;
                im[x] = s * a + c * b;
            }
        }
    }
    return out;
}

ConfigField drag_field(const ConfigField& cfg, const DragOperator& drag, const NodalTensor& sig, double dt) {
    ConfigField out = cfg;
    const int F = cfg.field_count();
    const std::size_t n = cfg.nodes();
    Eigen::VectorXd x(F), k1(F), k2(F), stage(F);
    Eigen::MatrixXd K(F, F);
    Eigen::VectorXd S(F);
    const Eigen::VectorXd inv_gram = drag.gram.cwiseInverse();
    for (std::size_t i = 0; i < n; ++i) {
        const std::array<double, 4> s{sig.t11[i], sig.t12[i], sig.t21[i], sig.t22[i]};
        K.setZero();
        S.setZero();
        for (int ij = 0; ij < 4; ++ij) {
            K += s[ij] * drag.K[ij];
            S += s[ij] * drag.S[ij];
        }
        for (int f = 0; f < F; ++f) x[f] = cfg.field(f)[i];
        k1 = inv_gram.cwiseProduct(K * x + S);
        stage = x + dt * k1;
        k2 = inv_gram.cwiseProduct(K * stage + S);
        x += 0.5 * dt * (k1 + k2);
        for (int f = 0; f < F; ++f) out.field(f)[i] = x[f];
    }
    return out;
}

ConfigField advect_config(const Torus& torus, const ConfigField& cfg, const VelocityField& u, double dt,
                          double cfl_limit) {
    const NodalVector un = to_nodal(torus, u);
    check_cfl(torus, un, dt, cfl_limit);
    ConfigField out = cfg;
    const std::size_t n = torus.nodes();
    for (int f = 0; f < cfg.field_count(); ++f) {
        if (cfg.is_zero(f)) continue;
        const RealArray& c0 = cfg.field(f);
        const RealArray k1 = transport_tendency(torus, un, c0);
        RealArray stage = torus.make_real();
        for (std::size_t i = 0; i < n; ++i) stage[i] = c0[i] + dt * k1[i];
        const RealArray k2 = transport_tendency(torus, un, stage);
        RealArray& dst = out.field(f);
        for (std::size_t i = 0; i < n; ++i) dst[i] = c0[i] + 0.5 * dt * (k1[i] + k2[i]);
    }
    return out;
}

double entropy(const Torus& torus, const ConfigField& cfg) {
    double acc = 0.0;
    for (int f = 0; f < cfg.field_count(); ++f) {
        if (cfg.is_zero(f)) continue;
        const double w = f < cfg.n_r() ? 1.0 : 2.0;
        acc += w * field_dot(torus, cfg.field(f), cfg.field(f));
    }
    return acc;
}

double dissipation(const Torus& torus, const ConfigField& cfg, const FpOperator& op) {
    const int nr = cfg.n_r();
    double acc = 0.0;
    for (int m = 0; m <= cfg.m_max(); ++m) {
        const Eigen::MatrixXd& A = op.stiffness(m);
        const double w = m == 0 ? 1.0 : 2.0;
        for (Part part : {Part::re, Part::im}) {
            if (m == 0 && part == Part::im) continue;
            for (int i = 0; i < nr; ++i) {
                const RealArray& a = cfg.field(m, i, part);
                for (int j = i; j < nr; ++j) {
                    if (A(i, j) == 0.0) continue;
                    const double d = field_dot(torus, a, cfg.field(m, j, part));
                    acc += w * (i == j ? 1.0 : 2.0) * A(i, j) * d;
                }
            }
        }
    }
    return std::max(acc, 0.0);
}

CoupledSolver::CoupledSolver(const FeneParams& fene, const TorusGrid& grid, double dt, const SchemeOptions& opts)
    : fene_(fene),
      torus_(grid),
      basis_(fene),
      dt_(dt),
      opts_(opts),
      half_op_(basis_, 0.5 * dt, opts.propagator),
      moments_(stress_moments(basis_)),
      drag_(opts.drag == DragMode::full ? drag_operator(basis_) : DragOperator{}) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("coupled_step: dt must be positive");
}

SimState CoupledSolver::zero_state() const {
    return SimState{0.0, make_vector_spec(torus_), ConfigField(basis_, torus_.nodes())};
}

VectorSpec CoupledSolver::stress_divergence(const ConfigField& cfg) const {
    const StressField tau = stress(cfg, moments_);
    const SpecArray a = torus_.forward(tau.t11);
    const SpecArray b = torus_.forward(tau.t12);
    const SpecArray c = torus_.forward(tau.t22);
    VectorSpec div = make_vector_spec(torus_);
    for (std::size_t i = 0; i < torus_.spec_size(); ++i) {
        if (!torus_.kept(i)) continue;
        const double x = torus_.xi1(i), y = torus_.xi2(i);
        div.c1[i] = I * (x * a[i] + y * b[i]);
        div.c2[i] = I * (x * b[i] + y * c[i]);
    }
    return leray_project(torus_, div);
}

ConfigField CoupledSolver::drag_half(const ConfigField& cfg, const VelocityField& u, double* before,
                                     double* after) const {
    if (before) *before = entropy(torus_, cfg);
    ConfigField out = opts_.drag == DragMode::corotation
                          ? rotate_field(cfg, vorticity(torus_, u), 0.5 * dt_)
                          : drag_field(cfg, drag_, sigma(torus_, u, DragMode::full), 0.5 * dt_);
    if (after) *after = entropy(torus_, out);
    return out;
}

void CoupledSolver::transport_block(const VelocityField& u0, const ConfigField& c0, VelocityField& u1,
                                    ConfigField& c1) const {
    const std::size_t ns = torus_.spec_size();
    const std::size_t n = torus_.nodes();
    const int F = c0.field_count();
    std::vector<double> E(ns);
    for (std::size_t i = 0; i < ns; ++i) E[i] = std::exp(-opts_.nu * torus_.xi_sq(i) * dt_);

    std::vector<char> active(F);
    bool any_cfg = false;
    for (int f = 0; f < F; ++f) {
        active[f] = !c0.is_zero(f);
        any_cfg = any_cfg || active[f];
    }
    const bool force = opts_.stress_forcing && any_cfg;
    const bool move = opts_.transport && any_cfg;

    auto velocity_tendency = [&](const NodalVector& un, const ConfigField& c) {
        VectorSpec t = force ? stress_divergence(c) : make_vector_spec(torus_);
        if (opts_.advection) {
            const VectorSpec adv = advection_tendency(torus_, un);
            for (std::size_t i = 0; i < ns; ++i) {
                t.c1[i] += adv.c1[i];
                t.c2[i] += adv.c2[i];
            }
        }
        return t;
    };

    const NodalVector un0 = to_nodal(torus_, u0);
    check_cfl(torus_, un0, dt_, opts_.cfl_limit);
    const VectorSpec ku1 = velocity_tendency(un0, c0);
    std::vector<RealArray> kc1(F);
    ConfigField cs = c0;
    if (move)
        for (int f = 0; f < F; ++f) {
            if (!active[f]) continue;
            kc1[f] = transport_tendency(torus_, un0, c0.field(f));
            RealArray& dst = cs.field(f);
            for (std::size_t i = 0; i < n; ++i) dst[i] = c0.field(f)[i] + dt_ * kc1[f][i];
        }
    VelocityField us = make_vector_spec(torus_);
    for (std::size_t i = 0; i < ns; ++i) {
        us.c1[i] = E[i] * (u0.c1[i] + dt_ * ku1.c1[i]);
        us.c2[i] = E[i] * (u0.c2[i] + dt_ * ku1.c2[i]);
    }

    const NodalVector uns = to_nodal(torus_, us);
    const VectorSpec ku2 = velocity_tendency(uns, cs);
    u1 = make_vector_spec(torus_);
    for (std::size_t i = 0; i < ns; ++i) {
        if (torus_.xi_sq(i) == 0.0) continue;
        u1.c1[i] = E[i] * u0.c1[i] + 0.5 * dt_ * (E[i] * ku1.c1[i] + ku2.c1[i]);
        u1.c2[i] = E[i] * u0.c2[i] + 0.5 * dt_ * (E[i] * ku1.c2[i] + ku2.c2[i]);
    }
    c1 = c0;
    if (move)
        for (int f = 0; f < F; ++f) {
            if (!active[f]) continue;
            const RealArray kc2 = transport_tendency(torus_, uns, cs.field(f));
            RealArray& dst = c1.field(f);
            for (std::size_t i = 0; i < n; ++i) dst[i] = c0.field(f)[i] + 0.5 * dt_ * (kc1[f][i] + kc2[i]);
        }
}

SimState CoupledSolver::step(const SimState& state, StepTrace* trace) const {
    ConfigField c = fp_relax_field(state.cfg, half_op_, 0.5 * dt_);
    c = drag_half(c, state.u, trace ? &trace->drag_entropy_before[0] : nullptr,
                  trace ? &trace->drag_entropy_after[0] : nullptr);
    SimState next{state.t + dt_, make_vector_spec(torus_), ConfigField(basis_, torus_.nodes())};
    transport_block(state.u, c, next.u, next.cfg);
    c = drag_half(next.cfg, next.u, trace ? &trace->drag_entropy_before[1] : nullptr,
                  trace ? &trace->drag_entropy_after[1] : nullptr);
    next.cfg = fp_relax_field(c, half_op_, 0.5 * dt_);
    fene::require_finite(next.u, "coupled_step");
    require_finite(next.cfg, "coupled_step");
    return next;
}

SimState coupled_step(const CoupledSolver& solver, const SimState& state, StepTrace* trace) {
    return solver.step(state, trace);
}

}  // namespace fene
