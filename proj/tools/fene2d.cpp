// fene2d: command-line front end.
//
//   fene2d simulate --config run.ini --out dir
//   fene2d heat-baseline --config run.ini --out dir
//   fene2d gap --k 1 --nr 24 [--m-max 2]
//   fene2d verify --suite identities|lemmas|bernstein|heat|negative-control
//   fene2d fit --csv series.csv --col energy_u --t0 5 --t1 100 --model power|exp
//   fene2d besov --checkpoint dir/checkpoint.bin
//
// Exit codes: 0 success, 1 failure (error, blow-up, failed check), 2 usage.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

#include "fene/error.hpp"
#include "fene/harness.hpp"

namespace {

int cmd_gap(double k, int nr, int m_max) {
    const double a = fene::spectral_gap(fene::ConfigBasis(fene::FeneParams{k, nr, m_max}));
    const double b = fene::spectral_gap(fene::ConfigBasis(fene::FeneParams{k, nr + 8, m_max}));
    std::printf("lambda1=%.12f delta=%.3e\n", a, std::abs(b - a));
    return 0;
}

int cmd_fit(const std::string& csv, const std::string& col, double t0, double t1, const std::string& model) {
    const std::vector<double> t = fene::read_csv_column(csv, "t");
    const std::vector<double> v = fene::read_csv_column(csv, col);
    if (model == "power") {
        const fene::FitResult f = fene::decay_fit(t, v, t0, t1);
        std::printf("exponent=%.4f r2=%.4f\n", f.slope, f.r2);
    } else {
        const fene::FitResult f = fene::exp_fit(t, v, t0, t1);
        std::printf("rate=%.4f r2=%.4f\n", -f.slope, f.r2);
    }
    return 0;
}

int cmd_besov(const std::string& path) {
    const fene::Checkpoint ck = fene::load_checkpoint(path);
    const fene::Torus torus(ck.config.grid);
    const fene::DyadicFamily fam(torus);
    const fene::NodalVector u = fene::to_nodal(torus, ck.u);
    std::printf("besov_b011=%.12e l1=%.12e\n", fene::besov_b011(torus, fam, ck.u),
                fene::lp_norm(torus, u.v1, u.v2, 1.0));
    return 0;
}

int cmd_run(const std::string& config, const std::string& out, bool heat) {
    const fene::RunConfig cfg = fene::load_config(config);
    const fene::RunResult r = heat ? fene::run_heat_baseline(cfg, out) : fene::run_simulation(cfg, out);
    if (r.status != 0) std::cerr << "fene2d: run stopped: " << r.message << "\n";
    return r.status;
}

int cmd_verify(const std::string& suite) {
    const std::vector<fene::CheckLine> lines = fene::run_suite(suite);
    fene::print_checks(std::cout, lines);
    for (const auto& l : lines)
        if (!l.pass) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D co-rotation FENE dumbbell numerical lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fene::version_string());

    std::string config, out, suite, csv, col, model = "power", checkpoint;
    double k = 1.0, t0 = 0.0, t1 = 0.0;
    int nr = 24, m_max = 2;

    auto* simulate = app.add_subcommand("simulate", "Run the coupled solver");
    simulate->add_option("--config", config, "Run configuration file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", out, "Output directory")->required();

    auto* heat = app.add_subcommand("heat-baseline", "Linear heat flow from the configured initial velocity");
    heat->add_option("--config", config, "Run configuration file")->required()->check(CLI::ExistingFile);
    heat->add_option("--out", out, "Output directory")->required();

    auto* gap = app.add_subcommand("gap", "Spectral gap of the relaxation operator");
    gap->add_option("--k", k, "Spring exponent")->check(CLI::PositiveNumber);
    gap->add_option("--nr", nr, "Radial degrees per mode")->check(CLI::Range(2, 400));
    gap->add_option("--m-max", m_max, "Largest angular mode")->check(CLI::Range(2, 64));

    auto* verify = app.add_subcommand("verify", "Run a named property suite");
    verify->add_option("--suite", suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"identities", "lemmas", "bernstein", "heat", "negative-control"}));

    auto* fit = app.add_subcommand("fit", "Fit a decay law to a CSV column");
    fit->add_option("--csv", csv, "series.csv")->required()->check(CLI::ExistingFile);
    fit->add_option("--col", col, "Column name")->required();
    fit->add_option("--t0", t0, "Window start")->required();
    fit->add_option("--t1", t1, "Window end")->required();
    fit->add_option("--model", model, "power or exp")->check(CLI::IsMember({"power", "exp"}));

    auto* besov = app.add_subcommand("besov", "Besov and L1 norms of a checkpoint's velocity");
    besov->add_option("--checkpoint", checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*simulate) return cmd_run(config, out, false);
        if (*heat) return cmd_run(config, out, true);
        if (*gap) return cmd_gap(k, nr, m_max);
        if (*verify) return cmd_verify(suite);
        if (*fit) return cmd_fit(csv, col, t0, t1, model);
        if (*besov) return cmd_besov(checkpoint);
    } catch (const std::exception& e) {
        std::cerr << "fene2d: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
