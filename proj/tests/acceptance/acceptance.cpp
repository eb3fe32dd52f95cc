// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
//   fene2d_acceptance [--full]
//
// --full adds the 512^2, L = 128 pi tier of the algebraic-decay criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fene/error.hpp"
#include "fene/harness.hpp"

using namespace fene;

namespace {

constexpr double pi = std::numbers::pi;

double g_mass_defect = 0.0;
int g_mass_runs = 0;

void track_mass(const ConfigField& cfg) {
    g_mass_defect = std::max(g_mass_defect, cfg.mass_defect());
}

void track_mass(const RunResult& r) {
    for (const DiagnosticsRow& row : r.history) g_mass_defect = std::max(g_mass_defect, row.mass_defect);
    track_mass(r.final_state.cfg);
    ++g_mass_runs;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class F>
RealArray nodal_scalar(const Torus& torus, F f) {
    RealArray a = torus.make_real();
    for (int iy = 0; iy < torus.ny(); ++iy)
        for (int ix = 0; ix < torus.nx(); ++ix) a[static_cast<std::size_t>(iy) * torus.nx() + ix] = f(torus.x1(ix), torus.x2(iy));
    return a;
}

/// The gap eigenmode times a smooth envelope, plus some m = 2 content.
ConfigField gap_mode_field(const CoupledSolver& solver, double amplitude, bool envelope, double m2) {
    const ConfigBasis& basis = solver.basis();
    const Torus& torus = solver.torus();
    const GapMode gap = spectral_gap_mode(basis);
    ConfigField cfg(basis, torus.nodes());
    const double k = torus.dk();
    const RealArray env = nodal_scalar(torus, [&](double x, double y) {
        return envelope ? 0.6 + 0.4 * std::cos(k * x) * std::sin(k * y) : 1.0;
    });
    for (int n = 0; n < basis.n_r(); ++n) {
        RealArray& f = cfg.field(gap.m, n, Part::re);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = amplitude * gap.eigenvector[n] * env[i];
    }
    if (m2 != 0.0) {
        RealArray& f = cfg.field(2, 0, Part::im);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += m2 * env[i];
    }
    return cfg;
}

VectorSpec random_velocity(const Torus& torus, const CounterRng& rng, double cut) {
    VectorSpec f = make_vector_spec(torus);
    for (std::size_t i = 0; i < f.c1.size(); ++i) {
        if (!torus.kept(i) || torus.xi_sq(i) == 0.0 || torus.xi_sq(i) > cut * cut) continue;
        f.c1[i] = cplx(rng.normal(4 * i), rng.normal(4 * i + 1));
        f.c2[i] = cplx(rng.normal(4 * i + 2), rng.normal(4 * i + 3));
    }
    return leray_project(torus, to_spectral(torus, to_nodal(torus, f)));
}

// ---------------------------------------------------------------- 1

Outcome corotation_cancellation() {
    const CoupledSolver solver(FeneParams{1.0, 8, 4}, TorusGrid{32, 32, 2 * pi}, 1e-3);
    SimState s = solver.zero_state();
    s.u = taylor_green(solver.torus(), 2.0);
    s.cfg = m2_bump(solver.basis(), solver.torus(), 0.3, 1.0);
    const ConfigField extra = gap_mode_field(solver, 0.2, true, 0.1);
    for (int f = 0; f < s.cfg.field_count(); ++f)
        for (std::size_t i = 0; i < s.cfg.nodes(); ++i) s.cfg.field(f)[i] += extra.field(f)[i];
    double worst = 0.0;
    for (int n = 0; n < 10; ++n) {
        StepTrace tr;
        s = solver.step(s, &tr);
        track_mass(s.cfg);
        for (int h = 0; h < 2; ++h)
            worst = std::max(worst, std::abs(tr.drag_entropy_after[h] - tr.drag_entropy_before[h]) / tr.drag_entropy_before[h]);
    }
    ++g_mass_runs;
    return {worst < 1e-13, "max relative entropy change per rotate half-step = " + sci(worst)};
}

// ---------------------------------------------------------------- 2

Outcome entropy_identity() {
    const FeneParams fene{1.0, 16, 2};
    const double t_end = 0.2;
    std::vector<double> residual;
    for (double dt : {2e-3, 1e-3, 5e-4}) {
        const CoupledSolver solver(fene, TorusGrid{8, 8, 2 * pi}, dt);
        const FpOperator op(solver.basis(), dt);
        SimState s = solver.zero_state();
        ConfigCoeffs c(fene.m_max, fene.n_r);
        for (int m = 0; m <= fene.m_max; ++m) {
            const Eigen::MatrixXd& v = op.eigenvectors(m);
            for (int e = m == 0 ? 1 : 0; e < (m == 0 ? 3 : 2); ++e)
                for (int n = 0; n < fene.n_r; ++n) c.mode(m)[n] += cplx(0.5 / (1 + m + e), 0.2 * m) * v(n, e);
        }
        for (std::size_t i = 0; i < s.cfg.nodes(); ++i) s.cfg.set(i, c);
        double worst = 0.0;
        double e0 = entropy(solver.torus(), s.cfg), d0 = dissipation(solver.torus(), s.cfg, op);
        const int steps = static_cast<int>(std::lround(t_end / dt));
        for (int n = 0; n < steps; ++n) {
            s = solver.step(s);
            const double e1 = entropy(solver.torus(), s.cfg), d1 = dissipation(solver.torus(), s.cfg, op);
            worst = std::max(worst, std::abs(0.5 * (e1 - e0) / dt + 0.5 * (d0 + d1)));
            e0 = e1;
            d0 = d1;
        }
        track_mass(s.cfg);
        ++g_mass_runs;
        residual.push_back(worst);
    }
    const double o1 = std::log2(residual[0] / residual[1]), o2 = std::log2(residual[1] / residual[2]);
    return {std::min(o1, o2) >= 1.9, "residual " + sci(residual[0]) + " -> " + sci(residual[1]) + " -> " +
                                         sci(residual[2]) + ", orders " + fmt("%.3f", o1) + ", " + fmt("%.3f", o2)};
}

// ---------------------------------------------------------------- 3

FitResult entropy_rate(const CoupledSolver& solver, SimState s, double t_end, double t0) {
    std::vector<double> t{s.t}, e{entropy(solver.torus(), s.cfg)};
    const int steps = static_cast<int>(std::lround(t_end / solver.dt()));
    for (int n = 1; n <= steps; ++n) {
        s = solver.step(s);
        if (n % 5 == 0) {
            t.push_back(s.t);
            e.push_back(entropy(solver.torus(), s.cfg));
        }
    }
    track_mass(s.cfg);
    ++g_mass_runs;
    return exp_fit(t, e, t0, t_end);
}

Outcome exponential_decay() {
    const FeneParams fene{1.0, 16, 2};
    const double lam = spectral_gap(ConfigBasis(fene));
    const CoupledSolver pure(fene, TorusGrid{8, 8, 2 * pi}, 0.005);
    SimState a = pure.zero_state();
    a.cfg = gap_mode_field(pure, 0.5, false, 0.0);
    const FitResult fp = entropy_rate(pure, a, 1.0, 0.0);
    const double rel = std::abs(-fp.slope - 2 * lam) / (2 * lam);

    const CoupledSolver coupled(fene, TorusGrid{32, 32, 2 * pi}, 0.005);
    SimState b = coupled.zero_state();
    b.u = low_freq_random(coupled.torus(), 1.0, 3.0, 5);
    b.cfg = gap_mode_field(coupled, 0.5, true, 0.3);
    const FitResult cf = entropy_rate(coupled, b, 1.0, 0.2);
    const bool pass = rel < 0.02 && -cf.slope >= 2 * lam * 0.98;
    return {pass, "2 lambda1 = " + fmt("%.6f", 2 * lam) + ", pure rate = " + fmt("%.6f", -fp.slope) +
                      ", coupled rate = " + fmt("%.6f", -cf.slope)};
}

// ---------------------------------------------------------------- 4

Outcome gap_convergence() {
    double worst = 0.0;
    std::string detail;
    for (double k : {1.0, 2.0}) {
        const double a = spectral_gap(ConfigBasis(FeneParams{k, 24, 2}));
        const double b = spectral_gap(ConfigBasis(FeneParams{k, 32, 2}));
        worst = std::max(worst, std::abs(a - b) / a);
        detail += fmt("k=%g: ", k) + fmt("lambda1 = %.12f", a) + ", rel change " + sci(std::abs(a - b) / a) + "; ";
    }
    return {worst < 1e-8, detail};
}

// ---------------------------------------------------------------- 5

Outcome taylor_green_exact() {
    RunConfig cfg;
    cfg.fene = FeneParams{1.0, 4, 2};
    cfg.grid = TorusGrid{64, 64, 2 * pi};
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.sample_every = 100;
    cfg.u_preset = "taylor_green";
    const RunResult r = run_simulation(cfg, {});
    track_mass(r);
    const Torus torus(cfg.grid);
    const VelocityField exact = heat_semigroup(torus, taylor_green(torus, 1.0), 2.0 * 0.5);
    VectorSpec d = make_vector_spec(torus);
    for (std::size_t i = 0; i < d.c1.size(); ++i) {
        d.c1[i] = r.final_state.u.c1[i] - exact.c1[i];
        d.c2[i] = r.final_state.u.c2[i] - exact.c2[i];
    }
    const double err = std::sqrt(energy(torus, d));
    return {r.status == 0 && err < 1e-6, "L2 error at t = 1: " + sci(err)};
}

// ---------------------------------------------------------------- 6

Outcome energy_and_lyapunov() {
    RunConfig cfg;
    cfg.fene = FeneParams{1.0, 8, 2};
    cfg.grid = TorusGrid{32, 32, 2 * pi};
    cfg.dt = 2e-3;
    cfg.t_end = 2.0;
    cfg.sample_every = 5;
    cfg.u_preset = "low_freq_random";
    cfg.u_amplitude = 1.0;
    cfg.xi_cut = 3.0;
    cfg.g_preset = "m2_bump";
    cfg.g_amplitude = 1.0;
    cfg.envelope_scale = 1.0;
    const RunResult r = run_simulation(cfg, {});
    track_mass(r);
    const double sample_dt = cfg.dt * cfg.sample_every;
    const double excess = energy_inequality_excess(r.history);
    const LyapunovReport ly = lyapunov_search(r.history, cfg.lyapunov_lambda_search_max);
    const bool pass = r.status == 0 && excess <= sample_dt && ly.found;
    return {pass, "energy inequality worst relative excess = " + sci(excess) + " (slack " + sci(sample_dt) +
                      "), lambda* = " + (ly.found ? fmt("%g", ly.lambda) : std::string("none"))};
}

// ---------------------------------------------------------------- 7

struct DecayTier {
    int n;
    double L;
    double lo, hi;
};

Outcome algebraic_decay(const DecayTier& tier) {
    RunConfig cfg;
    cfg.fene = FeneParams{1.0, 4, 2};
    cfg.grid = TorusGrid{tier.n, tier.n, tier.L};
    cfg.dt = 0.04;
    cfg.t_end = 100.0;
    cfg.sample_every = 10;
    cfg.u_preset = "low_freq_random";
    cfg.u_amplitude = 0.5;
    cfg.xi_cut = 1.0;
    cfg.g_preset = "m2_bump";
    cfg.g_amplitude = 0.05;
    cfg.envelope_scale = tier.L / 8;
    const RunResult r = run_simulation(cfg, {});
    if (r.status != 0) return {false, "run stopped: " + r.message};
    track_mass(r);
    const RunResult h = run_heat_baseline(cfg, {});
    auto fit = [](const RunResult& run) {
        std::vector<double> t, v;
        for (const DiagnosticsRow& row : run.history) {
            t.push_back(row.t);
            v.push_back(std::sqrt(row.energy_u));
        }
        return decay_fit(t, v, 5.0, 100.0);
    };
    const FitResult fr = fit(r), fh = fit(h);
    const bool pass = r.status == 0 && fr.slope >= tier.lo && fr.slope <= tier.hi && fr.r2 >= 0.98 &&
                      std::abs(fh.slope + 0.5) <= 0.05;
    return {pass, std::to_string(tier.n) + "^2, " + fmt("L = %.4g: ", tier.L) + "coupled exponent " + fmt("%.4f", fr.slope) +
                      " (r2 " + fmt("%.4f", fr.r2) + "), heat exponent " + fmt("%.4f", fh.slope) + " (r2 " +
                      fmt("%.4f", fh.r2) + ")"};
}

// ---------------------------------------------------------------- 8

Outcome heat_estimates() {
    const Torus torus(TorusGrid{512, 512, 2 * pi * 16});
    const double tw = whole_space_window(torus);
    std::vector<double> times;
    for (int i = 0; i <= 8; ++i) times.push_back(tw * std::pow(2.0, -i));
    const HeatReport g12 = heat_lplq_check(torus, {gaussian_field(torus, 0.5)}, 1.0, 2.0, times, false);
    const double target = 1.0 / std::sqrt(8 * pi);
    const double rel = std::abs(g12.ratio.front() - target) / target;

    const CounterRng rng(5);
    std::vector<SpecArray> fields;
    for (int k = 0; k < 5; ++k) fields.push_back(random_velocity(torus, rng.split(k), 6.0).c1);
    fields.push_back(gaussian_field(torus, 0.5));
    std::vector<double> gt;
    for (int i = 0; i <= 20; ++i) gt.push_back(std::pow(10.0, -3.0 + 3.0 * i / 20.0) * tw);
    const HeatReport gr = heat_lplq_check(torus, fields, 2.0, 2.0, gt, true);
    const double bound = 1.0 / std::sqrt(2 * std::exp(1.0));
    return {rel < 0.01 && gr.sup <= bound + 1e-3,
            "(1,2) ratio at t = " + fmt("%.3g", tw) + ": " + fmt("%.6f", g12.ratio.front()) + " vs " + fmt("%.6f", target) +
                " (" + sci(rel) + "), gradient sup " + fmt("%.6f", gr.sup) + " <= " + fmt("%.6f", bound)};
}

// ---------------------------------------------------------------- 9

Outcome bernstein_suite() {
    const Torus torus(TorusGrid{1024, 1024, 8 * pi});
    double mode_err = 0.0;
    for (int j = 1; j <= 5; ++j) {
        const double lam = std::ldexp(1.0, j);
        const RealArray f = nodal_scalar(torus, [lam](double x, double) { return std::cos(lam * x); });
        SpecArray d = torus.forward(f);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] *= cplx(0.0, torus.xi1(i));
        const RealArray g = torus.inverse(d);
        for (double p : {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()})
            mode_err = std::max(mode_err, std::abs(lp_norm(torus, g, p) / lp_norm(torus, f, p) - lam) / lam);
    }

    const CounterRng rng(11);
    std::vector<double> grad, lq, heat;
    for (int j = 1; j <= 5; ++j) {
        const BernsteinReport r = bernstein_check(torus, std::ldexp(1.0, j), 1.0, 2.0, 20, rng.split(j));
        grad.push_back(r.grad_upper);
        lq.push_back(r.lq_constant);
        heat.push_back(r.heat_rate);
    }
    auto spread = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x / v.size();
        double s = 0.0;
        for (double x : v) s = std::max(s, std::abs(x - mean) / mean);
        return s;
    };
    const double sg = spread(grad), sl = spread(lq), sh = spread(heat);
    double min_rate = 1e300;
    for (double x : heat) min_rate = std::min(min_rate, x);

    const double s1 = dyadic_heat_sum_sup(0.5, 1.0, -6, 6);
    const double s2 = dyadic_heat_sum_sup(0.5, 1.0, -8, 8);
    const double ds = std::abs(s2 - s1) / s1;
    const bool pass = mode_err < 1e-10 && sg <= 0.1 && sl <= 0.1 && sh <= 0.1 && min_rate >= 0.5625 && std::isfinite(s2) &&
                      ds <= 0.01;
    return {pass, "single mode " + sci(mode_err) + "; spread over j: gradient " + sci(sg) + ", Lq " + sci(sl) +
                      ", heat rate " + sci(sh) + " (min " + fmt("%.3f", min_rate) + "); heat sum " + fmt("%.6f", s1) +
                      " -> " + fmt("%.6f", s2)};
}

// ---------------------------------------------------------------- 10

double besov_c(int n) {
    RunConfig cfg;
    cfg.fene = FeneParams{1.0, 6, 2};
    cfg.grid = TorusGrid{n, n, 2 * pi};
    cfg.dt = 2e-3;
    cfg.t_end = 1.0;
    cfg.sample_every = 10;
    cfg.g_preset = "m2_bump";
    cfg.g_amplitude = 2.0;
    cfg.envelope_scale = 1.0;
    const RunResult r = run_simulation(cfg, {});
    track_mass(r);
    const BesovAprioriReport b = besov_apriori_check(r.history);
    return r.status == 0 && b.finite ? b.fitted_c : std::numeric_limits<double>::quiet_NaN();
}

Outcome besov_machinery() {
    const Torus torus(TorusGrid{64, 64, 2 * pi});
    const DyadicFamily fam(torus);
    const CounterRng rng(23);
    double recon = 0.0, embed = 1e300;
    for (int k = 0; k < 100; ++k) {
        const SpecArray f = random_velocity(torus, rng.split(k), 4.0 + (k % 16)).c1;
        const RealArray fn = torus.inverse(f);
        RealArray sum = torus.make_real();
        for (const RealArray& b : dyadic_blocks(torus, fam, f))
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b[i];
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < sum.size(); ++i) {
            num += (sum[i] - fn[i]) * (sum[i] - fn[i]);
            den += fn[i] * fn[i];
        }
        recon = std::max(recon, std::sqrt(num / den));
        embed = std::min(embed, besov_b011(torus, fam, f) / lp_norm(torus, fn, 1.0));
    }
    const Torus fine(TorusGrid{16384, 8, 2 * pi});
    const double bc = besov_b011(fine, DyadicFamily(fine),
                                 fine.forward(nodal_scalar(fine, [](double x, double) { return std::cos(x); })));
    const double c32 = besov_c(32), c64 = besov_c(64);
    const double dc = std::abs(c64 - c32) / c32;
    const bool pass = fam.raw_partition_error() < 1e-10 && recon < 1e-10 && std::abs(bc - 8 * pi) <= 1e-6 &&
                      embed >= 1.0 - 1e-8 && std::isfinite(c32) && dc <= 0.1;
    return {pass, "partition " + sci(fam.raw_partition_error()) + ", reconstruction " + sci(recon) + ", besov(cos) - 8 pi = " +
                      sci(bc - 8 * pi) + ", min besov/L1 " + fmt("%.4f", embed) + ", fitted C " + fmt("%.5f", c32) +
                      " -> " + fmt("%.5f", c64) + " (" + sci(dc) + ")"};
}

// ---------------------------------------------------------------- 11

Outcome p_entropy_ingredients() {
    RunConfig cfg;
    cfg.fene = FeneParams{1.0, 6, 2};
    cfg.grid = TorusGrid{32, 32, 2 * pi};
    cfg.dt = 2e-3;
    cfg.t_end = 1.0;
    cfg.sample_every = 5;
    cfg.u_preset = "low_freq_random";
    cfg.xi_cut = 3.0;
    cfg.g_preset = "m2_bump";
    cfg.g_amplitude = 0.5;
    cfg.envelope_scale = 1.0;
    cfg.p_entropy_p = 4;
    const RunResult r = run_simulation(cfg, {});
    track_mass(r);
    double up_p = 0.0, up_l = 0.0;
    for (std::size_t i = 1; i < r.history.size(); ++i) {
        up_p = std::max(up_p, (r.history[i].entropy_p - r.history[i - 1].entropy_p) / r.history[i - 1].entropy_p);
        up_l = std::max(up_l, (r.history[i].l1lp_norm - r.history[i - 1].l1lp_norm) / r.history[i - 1].l1lp_norm);
    }

    const Torus torus(TorusGrid{8, 8, 2 * pi});
    double ratio[2] = {0.0, 0.0}, lo[2] = {0.0, 0.0};
    int idx = 0;
    for (int nr : {8, 16}) {
        const ConfigBasis basis(FeneParams{1.0, nr, 2});
        const PEntropyQuadrature quad(basis, 4);
        std::vector<ConfigField> fields;
        const CounterRng rng(41);
        for (int s = 0; s < 100; ++s) {
            ConfigField f(basis, torus.nodes());
            const auto c = random_mean_zero(basis, static_cast<int>(torus.nodes()), rng.split(s), 4);
            for (std::size_t i = 0; i < torus.nodes(); ++i) f.set(i, c[i]);
            fields.push_back(std::move(f));
        }
        const TauBoundReport tr = tau_bound_check(basis, {}, torus, fields, quad);
        ratio[idx] = tr.l1_ratio_max;
        lo[idx] = tr.l1_ratio_min;
        ++idx;
    }
    const double dr = std::abs(ratio[1] - ratio[0]) / ratio[0];
    const bool pass = r.status == 0 && up_p <= 0.0 && up_l <= 1e-8 && std::isfinite(ratio[0]) && dr <= 0.05;
    return {pass, "max relative increase: p-entropy " + sci(up_p) + ", L1(Lp) " + sci(up_l) +
                      "; ||tau||_L1 / ||psi - psi_inf||_L1(Lp) in [" + fmt("%.4f", lo[0]) + ", " + fmt("%.4f", ratio[0]) +
                      "], n_r doubling change " + sci(dr)};
}

// ---------------------------------------------------------------- 12

Outcome negative_control() {
    double peak[2] = {0.0, 0.0};
    for (int mode = 0; mode < 2; ++mode) {
        SchemeOptions opts;
        opts.drag = mode == 0 ? DragMode::corotation : DragMode::full;
        const CoupledSolver solver(FeneParams{1.0, 8, 2}, TorusGrid{32, 32, 2 * pi}, 1e-3, opts);
        SimState s = solver.zero_state();
        s.u = taylor_green(solver.torus(), 1.0);
        s.cfg = gap_mode_field(solver, 0.3, true, 0.2);
        const ConfigField bump = m2_bump(solver.basis(), solver.torus(), 0.3, 1.0);
        for (std::size_t i = 0; i < s.cfg.nodes(); ++i) s.cfg.field(2, 0, Part::re)[i] += bump.field(2, 0, Part::re)[i];
        DiagnosticsRecorder rec(solver, 0, true);
        for (int n = 0; n <= 10; ++n) {
            peak[mode] = std::max(peak[mode], std::abs(rec.row(s).production));
            if (n < 10) s = solver.step(s);
        }
        track_mass(s.cfg);
        ++g_mass_runs;
    }
    return {peak[1] > 100 * peak[0], "full drag " + sci(peak[1]) + ", co-rotation " + sci(peak[0])};
}

// ---------------------------------------------------------------- driver

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    bool full = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--full") == 0) full = true;
        else {
            std::fprintf(stderr, "usage: %s [--full]\n", argv[0]);
            return 2;
        }
    }
    std::vector<Criterion> list{
        {1, "corotation_cancellation", 1, corotation_cancellation},
        {2, "entropy_identity", 10, entropy_identity},
        {3, "exponential_entropy_decay", 60, exponential_decay},
        {4, "spectral_gap_convergence", 10, gap_convergence},
        {5, "taylor_green_exact", 30, taylor_green_exact},
        {6, "energy_inequality_lyapunov", 120, energy_and_lyapunov},
        {7, "algebraic_velocity_decay", 300, [] { return algebraic_decay({256, 64 * pi, -0.70, -0.35}); }},
        {8, "heat_lp_lq", 60, heat_estimates},
        {9, "bernstein", 60, bernstein_suite},
        {10, "besov", 120, besov_machinery},
        {11, "p_entropy_and_tau_l1", 120, p_entropy_ingredients},
        {12, "negative_control", 60, negative_control},
    };
    if (full) list.push_back({7, "algebraic_velocity_decay_full", 1800, [] { return algebraic_decay({512, 128 * pi, -0.65, -0.40}); }});

    bool all = true;
    for (const Criterion& c : list) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs <= c.budget_s;
        all = all && pass;
        std::printf("%s %2d %s: %s [%.2f s of %g s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    c.budget_s);
        std::fflush(stdout);
    }
    const bool mass = g_mass_defect < 1e-12;
    all = all && mass;
    std::printf("%s 13 mass_conservation: max |c00| = %.3e over %d runs\n", mass ? "PASS" : "FAIL", g_mass_defect,
                g_mass_runs);
    return all ? 0 : 1;
}
