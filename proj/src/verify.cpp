#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <unistd.h>

#include "fene/error.hpp"
#include "fene/harness.hpp"

namespace fene {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

CheckLine check(std::string name, bool pass, std::string detail) { return {std::move(name), pass, std::move(detail)}; }

double max_abs(const RealArray& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

VectorSpec random_spectral(const Torus& torus, const CounterRng& rng, double cut) {
    VectorSpec f = make_vector_spec(torus);
    for (std::size_t i = 0; i < f.c1.size(); ++i) {
        if (!torus.kept(i) || torus.xi_sq(i) == 0.0 || torus.xi_sq(i) > cut * cut) continue;
        if (torus.mode_x(i) == 0) continue;  // keeps the half-plane data Hermitian
        f.c1[i] = cplx(rng.normal(4 * i), rng.normal(4 * i + 1));
        f.c2[i] = cplx(rng.normal(4 * i + 2), rng.normal(4 * i + 3));
    }
    return f;
}

ConfigField mixed_config(const CoupledSolver& solver, double amplitude) {
    const Torus& torus = solver.torus();
    ConfigField g = m2_bump(solver.basis(), torus, amplitude, 0.25 * torus.length());
    const RealArray& c2 = g.field(2, 0, Part::re);
    RealArray& c01 = g.field(0, 1, Part::re);
    RealArray& c21 = g.field(2, 1, Part::im);
    for (std::size_t i = 0; i < torus.nodes(); ++i) {
        c01[i] = 0.7 * c2[i];
        c21[i] = -0.4 * c2[i];
    }
    return g;
}

std::vector<CheckLine> identities() {
    std::vector<CheckLine> out;
    const CounterRng rng(2024);

    double gram_err = 0.0;
    for (double k : {0.5, 1.0, 2.0}) {
        const ConfigBasis basis(FeneParams{k, 12, 4});
        for (int m = 0; m <= 4; ++m) {
            const auto G = basis.gram(m);
            for (std::size_t i = 0; i < G.size(); ++i)
                for (std::size_t j = 0; j < G.size(); ++j)
                    gram_err = std::max(gram_err, std::abs(G[i][j] - (i == j ? 1.0 : 0.0)));
        }
    }
    out.push_back(check("basis_orthonormal", gram_err < 1e-10, "max |G - I| = " + num(gram_err)));

    const ConfigBasis basis(FeneParams{});
    const FpOperator op(basis, 0.01);
    double asym = 0.0, min_eig = 1.0;
    for (int m = 0; m <= basis.m_max(); ++m) {
        const Eigen::MatrixXd& A = op.stiffness(m);
        asym = std::max(asym, (A - A.transpose()).cwiseAbs().maxCoeff());
        min_eig = std::min(min_eig, op.eigenvalues(m).minCoeff());
    }
    out.push_back(check("stiffness_symmetric_psd", asym < 1e-12 && min_eig > -1e-10,
                        "asymmetry = " + num(asym) + ", min eigenvalue = " + num(min_eig)));

    double rot = 0.0;
    for (const ConfigCoeffs& c : random_mean_zero(basis, 50, rng)) {
        const double e0 = entropy(c);
        rot = std::max(rot, std::abs(entropy(rotate(c, 3.7, 0.01)) - e0) / e0);
    }
    out.push_back(check("rotation_unitary", rot < 1e-14, "max relative entropy change = " + num(rot)));

    const StressMoments mom = stress_moments(basis);
    double trace = 0.0, iso = 0.0;
    for (const ConfigCoeffs& c : random_mean_zero(basis, 50, rng.split(1), -1, true)) {
        const auto t = stress_at(mom, c.to_real());
        trace = std::max(trace, std::abs(t[0] + t[2]) / (std::abs(t[0]) + std::abs(t[1]) + 1e-300));
    }
    for (const ConfigCoeffs& c0 : random_mean_zero(basis, 50, rng.split(2))) {
        ConfigCoeffs c(basis.m_max(), basis.n_r());
        for (int n = 1; n < basis.n_r(); ++n) c.set(0, n, c0(0, n));
        const auto t = stress_at(mom, c.to_real());
        iso = std::max(iso, std::abs(t[1]) + std::abs(t[0] - t[2]));
    }
    out.push_back(check("stress_mode_selectivity", trace < 1e-12 && iso < 1e-12,
                        "m=2 trace/|tau| = " + num(trace) + ", m=0 anisotropy = " + num(iso)));

    const Torus torus(TorusGrid{32, 32, 2.0 * std::numbers::pi});
    const VelocityField u = leray_project(torus, random_spectral(torus, rng.split(3), 8.0));
    const VelocityField uu = leray_project(torus, u);
    double idem = 0.0;
    for (std::size_t i = 0; i < u.c1.size(); ++i) idem = std::max(idem, std::abs(u.c1[i] - uu.c1[i]) + std::abs(u.c2[i] - uu.c2[i]));
    out.push_back(check("leray_projection", divergence_residual(torus, u) < 1e-12 && idem < 1e-14,
                        "divergence = " + num(divergence_residual(torus, u)) + ", idempotence = " + num(idem)));

    const NodalVector un = to_nodal(torus, u);
    std::vector<double> sq(un.v1.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = un.v1[i] * un.v1[i] + un.v2[i] * un.v2[i];
    const double nodal = torus.cell_area() * pairwise_sum(sq.data(), sq.size());
    const double pars = std::abs(nodal - energy(torus, u)) / nodal;
    out.push_back(check("parseval", pars < 1e-12, "relative mismatch = " + num(pars)));

    {
        const CoupledSolver solver(FeneParams{}, TorusGrid{32, 32, 2.0 * std::numbers::pi}, 1e-3);
        const ConfigField g = mixed_config(solver, 0.3);
        const VelocityField v = taylor_green(solver.torus(), 1.0);
        const ConfigField h = advect_config(solver.torus(), g, v, 0.01);
        double drift = 0.0;
        for (int f = 0; f < g.field_count(); ++f) {
            const double a = grid_integral(solver.torus(), g.field(f)), b = grid_integral(solver.torus(), h.field(f));
            const double scale = std::max(lp_norm(solver.torus(), g.field(f), 1.0), 1e-300);
            drift = std::max(drift, std::abs(a - b) / scale);
        }
        out.push_back(check("advection_mass", drift < 1e-12, "max relative change of int c = " + num(drift)));

        const NodalTensor s = sigma(solver.torus(), v, DragMode::corotation);
        const DragOperator d = drag_operator(solver.basis());
        const double prod = std::abs(entropy_production(solver.torus(), g, d, s));
        const double scale = entropy(solver.torus(), g) * max_abs(s.t12);
        out.push_back(check("corotation_cancellation", prod < 1e-13 * scale, "relative production = " + num(prod / scale)));
    }

    {
        RunConfig cfg;
        cfg.grid = TorusGrid{16, 16, 2.0 * std::numbers::pi};
        cfg.u_preset = "low_freq_random";
        cfg.xi_cut = 3.0;
        cfg.g_preset = "m2_bump";
        cfg.envelope_scale = 1.0;
        cfg.t_end = 0.01;
        cfg.dt = 1e-3;
        const std::filesystem::path dir = std::filesystem::temp_directory_path() /
                                          ("fene2d_verify_" + std::to_string(::getpid()));
        const RunResult r = run_simulation(cfg, dir);
        double mass = 0.0;
        for (const DiagnosticsRow& row : r.history) mass = std::max(mass, row.mass_defect);
        out.push_back(check("mass_conservation", r.status == 0 && mass < 1e-12, "max |c00| = " + num(mass)));

        const Checkpoint ck = load_checkpoint(dir / "checkpoint.bin");
        const CoupledSolver solver(cfg.fene, cfg.grid, cfg.dt);
        save_checkpoint(dir / "again.bin", ck.config, checkpoint_state(ck, solver));
        const bool same = read_bytes(dir / "checkpoint.bin") == read_bytes(dir / "again.bin");
        out.push_back(check("checkpoint_roundtrip", same, same ? "byte-identical" : "bytes differ"));
        std::filesystem::remove_all(dir);
    }
    return out;
}

std::vector<CheckLine> lemmas() {
    std::vector<CheckLine> out;
    const CounterRng rng(7);
    const ConfigBasis basis(FeneParams{1.0, 16, 2});
    const PoincareReport pr = poincare_check(basis, random_mean_zero(basis, 1000, rng));
    out.push_back(check("poincare_floor", pr.min_ratio >= pr.lambda1 * (1.0 - 1e-8),
                        "lambda1 = " + num(pr.lambda1) + ", min ratio = " + num(pr.min_ratio)));
    out.push_back(check("poincare_eigenvector", std::abs(pr.eigen_ratio - pr.lambda1) <= 1e-10 * pr.lambda1,
                        "ratio - lambda1 = " + num(pr.eigen_ratio - pr.lambda1)));
    bool rejected = false;
    try {
        ConfigCoeffs c = random_mean_zero(basis, 1, rng)[0];
        c.set(0, 0, 0.5);
        poincare_check(basis, {c});
    } catch (const DomainError&) {
        rejected = true;
    }
    out.push_back(check("poincare_rejects_mean", rejected, ""));

    const Torus torus(TorusGrid{16, 16, 2.0 * std::numbers::pi});
    double c_sample[2], c_l1[2];
    int idx = 0;
    for (int nr : {8, 16}) {
        const ConfigBasis b(FeneParams{1.0, nr, 2});
        const PEntropyQuadrature quad(b, 2);
        std::vector<ConfigField> fields;
        for (int s = 0; s < 10; ++s) {
            ConfigField f(b, torus.nodes());
            const CounterRng r = rng.split(100 + s);
            const auto coeffs = random_mean_zero(b, static_cast<int>(torus.nodes()), r, 4);
            for (std::size_t i = 0; i < torus.nodes(); ++i) f.set(i, coeffs[i]);
            fields.push_back(std::move(f));
        }
        const TauBoundReport tr = tau_bound_check(b, random_mean_zero(b, 100, rng.split(9), 4, true), torus, fields, quad);
        c_sample[idx] = tr.pointwise_sample;
        c_l1[idx] = tr.l1_ratio_max;
        ++idx;
    }
    const double ds = std::abs(c_sample[1] - c_sample[0]) / c_sample[0];
    const double dl = std::abs(c_l1[1] - c_l1[0]) / c_l1[0];
    out.push_back(check("tau_pointwise_stable", std::isfinite(c_sample[0]) && ds < 0.05,
                        "C = " + num(c_sample[0]) + ", change under n_r doubling = " + num(ds)));
    out.push_back(check("tau_l1_stable", std::isfinite(c_l1[0]) && dl < 0.05,
                        "C = " + num(c_l1[0]) + ", change under n_r doubling = " + num(dl)));

    const double s1 = dyadic_heat_sum_sup(0.5, 1.0, -4, 8);
    const double s2 = dyadic_heat_sum_sup(0.5, 1.0, -6, 10);
    out.push_back(check("dyadic_heat_sum", std::abs(s2 - s1) / s1 < 0.01, "sup = " + num(s1) + " -> " + num(s2)));

    {
        const CoupledSolver solver(FeneParams{}, TorusGrid{16, 16, 2.0 * std::numbers::pi}, 1e-3);
        const ConfigField g = mixed_config(solver, 0.3);
        const PEntropyQuadrature q2(solver.basis(), 2);
        const double a = p_entropy(solver.torus(), g, q2).integral, b = entropy(solver.torus(), g);
        out.push_back(check("p_entropy_p2_consistency", std::abs(a - b) <= 1e-10 * b, "relative = " + num(std::abs(a - b) / b)));
    }
    return out;
}

std::vector<CheckLine> bernstein() {
    std::vector<CheckLine> out;
    const Torus torus(TorusGrid{256, 256, 2.0 * std::numbers::pi});
    double worst = 0.0;
    for (int j = 1; j <= 5; ++j) {
        const double lam = std::ldexp(1.0, j);
        RealArray f = torus.make_real();
        for (int iy = 0; iy < torus.ny(); ++iy)
            for (int ix = 0; ix < torus.nx(); ++ix) f[static_cast<std::size_t>(iy) * torus.nx() + ix] = std::cos(lam * torus.x1(ix));
        const SpecArray fs = torus.forward(f);
        SpecArray d = torus.make_spec();
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = cplx(0.0, torus.xi1(i)) * fs[i];
        const RealArray g = torus.inverse(d);
        for (double p : {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()})
            worst = std::max(worst, std::abs(lp_norm(torus, g, p) / lp_norm(torus, f, p) - lam) / lam);
    }
    out.push_back(check("single_mode_ratio", worst < 1e-10, "max relative deviation from 2^j = " + num(worst)));

    const CounterRng rng(11);
    double lo = 1e300, hi = 0.0, hlo = 1e300, hhi = 0.0;
    for (int j = 1; j <= 4; ++j) {
        const BernsteinReport r = bernstein_check(torus, std::ldexp(1.0, j), 2.0, 2.0, 20, rng.split(j));
        lo = std::min(lo, r.grad_upper);
        hi = std::max(hi, r.grad_upper);
        hlo = std::min(hlo, r.heat_rate);
        hhi = std::max(hhi, r.heat_rate);
    }
    out.push_back(check("random_annulus_stable", hi / lo < 1.2 && hhi / hlo < 1.2 && hlo >= 0.5625,
                        "grad constant in [" + num(lo) + ", " + num(hi) + "], heat rate in [" + num(hlo) + ", " + num(hhi) + "]"));
    return out;
}

std::vector<CheckLine> heat() {
    std::vector<CheckLine> out;
    const Torus torus(TorusGrid{512, 512, 2.0 * std::numbers::pi * 16.0});
    const double tw = whole_space_window(torus);
    const HeatReport g12 = heat_lplq_check(torus, {gaussian_field(torus, 0.5)}, 1.0, 2.0, {tw}, false);
    const double target = 1.0 / std::sqrt(8.0 * std::numbers::pi);
    const double rel = std::abs(g12.ratio.back() - target) / target;
    out.push_back(check("heat_l1_l2_gaussian", rel < 0.01, "ratio = " + num(g12.ratio.back()) + ", target = " + num(target)));

    const CounterRng rng(5);
    std::vector<SpecArray> fields;
    for (int k = 0; k < 5; ++k) fields.push_back(random_spectral(torus, rng.split(k), 6.0).c1);
    std::vector<double> times;
    for (int i = 0; i <= 20; ++i) times.push_back(std::pow(10.0, -3.0 + 3.0 * i / 20.0) * tw);
    const HeatReport gr = heat_lplq_check(torus, fields, 2.0, 2.0, times, true);
    const double bound = 1.0 / std::sqrt(2.0 * std::exp(1.0));
    out.push_back(check("heat_gradient_l2", gr.sup <= bound + 1e-3, "sup = " + num(gr.sup) + ", bound = " + num(bound)));
    const HeatReport c22 = heat_lplq_check(torus, fields, 2.0, 2.0, times, false);
    out.push_back(check("heat_contraction", c22.sup <= 1.0 + 1e-12, "sup = " + num(c22.sup)));
    return out;
}

std::vector<CheckLine> negative_control() {
    std::vector<CheckLine> out;
    double peak[2] = {0.0, 0.0};
    for (int mode = 0; mode < 2; ++mode) {
        SchemeOptions opts;
        opts.drag = mode == 0 ? DragMode::corotation : DragMode::full;
        const CoupledSolver solver(FeneParams{}, TorusGrid{32, 32, 2.0 * std::numbers::pi}, 1e-3, opts);
        SimState s = solver.zero_state();
        s.u = taylor_green(solver.torus(), 1.0);
        s.cfg = mixed_config(solver, 0.3);
        DiagnosticsRecorder rec(solver, 0, true);
        for (int n = 0; n <= 10; ++n) {
            peak[mode] = std::max(peak[mode], std::abs(rec.row(s).production));
            if (n < 10) s = solver.step(s);
        }
    }
    out.push_back(check("full_drag_production", peak[1] > 100.0 * peak[0],
                        "full = " + num(peak[1]) + ", corotation = " + num(peak[0])));
    return out;
}

}  // namespace

std::vector<CheckLine> run_suite(const std::string& suite) {
    if (suite == "identities") return identities();
    if (suite == "lemmas") return lemmas();
    if (suite == "bernstein") return bernstein();
    if (suite == "heat") return heat();
    if (suite == "negative-control") return negative_control();
    throw ConfigError("unknown suite: " + suite);
}

}  // namespace fene
