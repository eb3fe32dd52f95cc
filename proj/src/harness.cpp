#include "fene/harness.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#if defined(__SSE__) || defined(__x86_64__)
#include <xmmintrin.h>
#endif

#include "fene/error.hpp"

namespace fene {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

namespace pt = boost::property_tree;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(key + ": invalid number '" + s + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& s) {
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError(key + ": invalid integer '" + s + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError(key + ": invalid boolean '" + s + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& setters() {
    static const std::map<std::string, std::map<std::string, Setter>> table = [] {
        std::map<std::string, std::map<std::string, Setter>> t;
        auto dbl = [](double RunConfig::*m) -> Setter { return [m](RunConfig& c, auto& k, auto& v) { c.*m = parse_double(k, v); }; };
        auto str = [](std::string RunConfig::*m) -> Setter { return [m](RunConfig& c, auto&, auto& v) { c.*m = v; }; };
        t["fene"]["k"] = [](RunConfig& c, auto& k, auto& v) { c.fene.k = parse_double(k, v); };
        t["fene"]["n_r"] = [](RunConfig& c, auto& k, auto& v) { c.fene.n_r = static_cast<int>(parse_int(k, v)); };
        t["fene"]["m_max"] = [](RunConfig& c, auto& k, auto& v) { c.fene.m_max = static_cast<int>(parse_int(k, v)); };
        t["grid"]["nx"] = [](RunConfig& c, auto& k, auto& v) { c.grid.nx = static_cast<int>(parse_int(k, v)); };
        t["grid"]["ny"] = [](RunConfig& c, auto& k, auto& v) { c.grid.ny = static_cast<int>(parse_int(k, v)); };
        t["grid"]["L"] = [](RunConfig& c, auto& k, auto& v) { c.grid.L = parse_double(k, v); };
        t["time"]["dt"] = dbl(&RunConfig::dt);
        t["time"]["t_end"] = dbl(&RunConfig::t_end);
        t["time"]["sample_every"] = [](RunConfig& c, auto& k, auto& v) { c.sample_every = static_cast<int>(parse_int(k, v)); };
        t["drag"]["mode"] = [](RunConfig& c, auto& k, auto& v) {
            if (v == "corotation") c.drag = DragMode::corotation;
            else if (v == "full") c.drag = DragMode::full;
            else throw ConfigError(k + ": expected corotation or full");
        };
        t["init"]["u_preset"] = str(&RunConfig::u_preset);
        t["init"]["u_amplitude"] = dbl(&RunConfig::u_amplitude);
        t["init"]["xi_cut"] = dbl(&RunConfig::xi_cut);
        t["init"]["seed"] = [](RunConfig& c, auto& k, auto& v) {
            std::uint64_t s = 0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
            if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(k + ": invalid seed '" + v + "'");
            c.seed = s;
        };
        t["init"]["u_file"] = str(&RunConfig::u_file);
        t["init"]["g_preset"] = str(&RunConfig::g_preset);
        t["init"]["g_amplitude"] = dbl(&RunConfig::g_amplitude);
        t["init"]["envelope_scale"] = dbl(&RunConfig::envelope_scale);
        t["init"]["g_file"] = str(&RunConfig::g_file);
        t["diagnostics"]["p_entropy_p"] = [](RunConfig& c, auto& k, auto& v) { c.p_entropy_p = static_cast<int>(parse_int(k, v)); };
        t["diagnostics"]["lyapunov_lambda_search_max"] = [](RunConfig& c, auto& k, auto& v) {
            c.lyapunov_lambda_search_max = static_cast<int>(parse_int(k, v));
        };
        t["scheme"]["propagator"] = [](RunConfig& c, auto& k, auto& v) {
            if (v == "exact") c.scheme.propagator = PropagatorKind::exact;
            else if (v == "cn") c.scheme.propagator = PropagatorKind::crank_nicolson;
            else throw ConfigError(k + ": expected exact or cn");
        };
        t["scheme"]["nu"] = [](RunConfig& c, auto& k, auto& v) { c.scheme.nu = parse_double(k, v); };
        t["scheme"]["advection"] = [](RunConfig& c, auto& k, auto& v) { c.scheme.advection = parse_bool(k, v); };
        t["scheme"]["transport"] = [](RunConfig& c, auto& k, auto& v) { c.scheme.transport = parse_bool(k, v); };
        t["scheme"]["stress_forcing"] = [](RunConfig& c, auto& k, auto& v) { c.scheme.stress_forcing = parse_bool(k, v); };
        return t;
    }();
    return table;
}

template <class T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is, const char* what) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw ConfigError(std::string("checkpoint: truncated ") + what);
    return v;
}

void enable_flush_to_zero() {
#if defined(__SSE__) || defined(__x86_64__)
    // FTZ | DAZ: relaxed configuration modes otherwise drift into subnormal arithmetic
    _mm_setcsr(_mm_getcsr() | 0x8040);
#endif
}

void write_outputs(const std::filesystem::path& out_dir, const RunConfig& cfg, const RunResult& res,
                   const SimState& last_good, long long steps) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(out_dir / "series.csv");
    if (!csv) throw ConfigError("cannot write " + (out_dir / "series.csv").string());
    csv << kCsvHeader << '\n';
    for (const DiagnosticsRow& r : res.history) write_csv_row(csv, r);
    save_checkpoint(out_dir / "checkpoint.bin", cfg, last_good);
    std::ofstream man(out_dir / "manifest.txt");
    man << "fene2d " << version_string() << '\n';
    man << "status = " << (res.status == 0 ? "ok" : "blow-up") << '\n';
    if (!res.message.empty()) man << "message = " << res.message << '\n';
    man << "steps = " << steps << '\n';
    man << "t_final = " << fmt(last_good.t) << '\n';
    man << "rows = " << res.history.size() << '\n';
    man << "\n" << canonical_text(cfg);
    if (!csv || !man) throw ConfigError("I/O error writing run outputs");
}

long long step_count(const RunConfig& cfg) {
    const double n = cfg.t_end / cfg.dt;
    const long long steps = std::llround(n);
    if (std::abs(n - static_cast<double>(steps)) > 1e-9 * std::max(1.0, n)) return static_cast<long long>(std::ceil(n));
    return steps;
}

}  // namespace

// ---------------------------------------------------------------- config

void RunConfig::validate() const {
    try {
        fene.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("fene: ") + e.what());
    }
    try {
        grid.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
    if (!(t_end >= 0.0)) throw ConfigError("t_end: must be nonnegative");
    if (sample_every < 1) throw ConfigError("sample_every: must be >= 1");
    if (u_preset != "zero" && u_preset != "taylor_green" && u_preset != "low_freq_random" && u_preset != "file")
        throw ConfigError("u_preset: expected zero, taylor_green, low_freq_random or file");
    if (g_preset != "zero" && g_preset != "m2_bump" && g_preset != "file")
        throw ConfigError("g_preset: expected zero, m2_bump or file");
    if (u_preset == "file" && u_file.empty()) throw ConfigError("u_file: required for u_preset = file");
    if (g_preset == "file" && g_file.empty()) throw ConfigError("g_file: required for g_preset = file");
    if (!(xi_cut > 0.0)) throw ConfigError("xi_cut: must be positive");
    if (p_entropy_p != 0) {
        if (p_entropy_p < 2 || p_entropy_p % 2 != 0) throw ConfigError("p_entropy_p: must be 0 or an even integer >= 2");
        if (!(p_entropy_p * fene.k > 1.0))
            throw ConfigError("p_entropy_p: p * k must exceed 1 (constraint pk > 1 of the L1 stress bound)");
    }
    if (lyapunov_lambda_search_max < 0 || lyapunov_lambda_search_max > 60)
        throw ConfigError("lyapunov_lambda_search_max: must lie in [0, 60]");
    if (!(scheme.nu > 0.0)) throw ConfigError("nu: must be positive");
}

RunConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
    }
    RunConfig cfg;
    const auto& table = setters();
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ConfigError("unknown key: " + section);
        const auto sec = table.find(section);
        if (sec == table.end()) throw ConfigError("unknown section: " + section);
        for (const auto& [key, value] : body) {
            const auto it = sec->second.find(key);
            if (it == sec->second.end()) throw ConfigError("unknown key: " + key);
            it->second(cfg, key, value.data());
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_text(const RunConfig& c) {
    auto b = [](bool v) { return v ? "true" : "false"; };
    std::ostringstream os;
    os << "[fene]\nk = " << fmt(c.fene.k) << "\nn_r = " << c.fene.n_r << "\nm_max = " << c.fene.m_max << "\n";
    os << "[grid]\nnx = " << c.grid.nx << "\nny = " << c.grid.ny << "\nL = " << fmt(c.grid.L) << "\n";
    os << "[time]\ndt = " << fmt(c.dt) << "\nt_end = " << fmt(c.t_end) << "\nsample_every = " << c.sample_every << "\n";
    os << "[drag]\nmode = " << (c.drag == DragMode::corotation ? "corotation" : "full") << "\n";
    os << "[init]\nu_preset = " << c.u_preset << "\nu_amplitude = " << fmt(c.u_amplitude) << "\nxi_cut = " << fmt(c.xi_cut)
       << "\nseed = " << c.seed << "\nu_file = " << c.u_file << "\ng_preset = " << c.g_preset
       << "\ng_amplitude = " << fmt(c.g_amplitude) << "\nenvelope_scale = " << fmt(c.envelope_scale)
       << "\ng_file = " << c.g_file << "\n";
    os << "[diagnostics]\np_entropy_p = " << c.p_entropy_p
       << "\nlyapunov_lambda_search_max = " << c.lyapunov_lambda_search_max << "\n";
    os << "[scheme]\npropagator = " << (c.scheme.propagator == PropagatorKind::exact ? "exact" : "cn")
       << "\nnu = " << fmt(c.scheme.nu) << "\nadvection = " << b(c.scheme.advection)
       << "\ntransport = " << b(c.scheme.transport) << "\nstress_forcing = " << b(c.scheme.stress_forcing) << "\n";
    return os.str();
}

// ---------------------------------------------------------------- presets

VelocityField taylor_green(const Torus& torus, double amplitude) {
    NodalVector v{torus.make_real(), torus.make_real()};
    const double k = torus.dk();
    for (int iy = 0; iy < torus.ny(); ++iy)
        for (int ix = 0; ix < torus.nx(); ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * torus.nx() + ix;
            const double a = k * torus.x1(ix), b = k * torus.x2(iy);
            v.v1[i] = amplitude * std::sin(a) * std::cos(b);
            v.v2[i] = -amplitude * std::cos(a) * std::sin(b);
        }
    return leray_project(torus, to_spectral(torus, v));
}

VelocityField low_freq_random(const Torus& torus, double amplitude, double xi_cut, std::uint64_t seed) {
    const CounterRng rng(seed);
    VectorSpec f = make_vector_spec(torus);
    const double cut2 = xi_cut * xi_cut;
    int count = 0;
    for (std::size_t i = 0; i < f.c1.size(); ++i) {
        if (torus.xi_sq(i) == 0.0 || torus.xi_sq(i) > cut2 || !torus.kept(i)) continue;
        const int kx = torus.mode_x(i);
        int ky = torus.mode_y(i);
        const bool conj = kx == 0 && ky < 0;
        if (conj) ky = -ky;
        const std::uint64_t key =
            2 * (static_cast<std::uint64_t>(ky + torus.ny()) * static_cast<std::uint64_t>(torus.nkx()) + kx);
        const double s = conj ? -1.0 : 1.0;
        f.c1[i] = std::polar(1.0, s * 2.0 * std::numbers::pi * rng.uniform(key));
        f.c2[i] = std::polar(1.0, s * 2.0 * std::numbers::pi * rng.uniform(key + 1));
        ++count;
    }
    VelocityField u = leray_project(torus, f);
    if (count == 0) return u;
    const double scale = amplitude / std::sqrt(static_cast<double>(count));
    for (std::size_t i = 0; i < u.c1.size(); ++i) {
        u.c1[i] *= scale;
        u.c2[i] *= scale;
    }
    return u;
}

ConfigField m2_bump(const ConfigBasis& basis, const Torus& torus, double amplitude, double width) {
    ConfigField cfg(basis, torus.nodes());
    RealArray& c = cfg.field(2, 0, Part::re);
    const double k = torus.dk();
    const double mid = 0.5 * torus.length();
    for (int iy = 0; iy < torus.ny(); ++iy)
        for (int ix = 0; ix < torus.nx(); ++ix) {
            double env = 1.0;
            if (width > 0.0) {
                const double kw = k * width;
                env = std::exp((std::cos(k * (torus.x1(ix) - mid)) + std::cos(k * (torus.x2(iy) - mid)) - 2.0) /
                               (kw * kw));
            }
            c[static_cast<std::size_t>(iy) * torus.nx() + ix] = amplitude * env;
        }
    return cfg;
}

SimState initial_state(const RunConfig& cfg, const CoupledSolver& solver) {
    const Torus& torus = solver.torus();
    SimState s = solver.zero_state();
    if (cfg.u_preset == "taylor_green") s.u = taylor_green(torus, cfg.u_amplitude);
    else if (cfg.u_preset == "low_freq_random") s.u = low_freq_random(torus, cfg.u_amplitude, cfg.xi_cut, cfg.seed);
    else if (cfg.u_preset == "file") s.u = checkpoint_state(load_checkpoint(cfg.u_file), solver).u;
    if (cfg.g_preset == "m2_bump") s.cfg = m2_bump(solver.basis(), torus, cfg.g_amplitude, cfg.envelope_scale);
    else if (cfg.g_preset == "file") s.cfg = checkpoint_state(load_checkpoint(cfg.g_file), solver).cfg;
    return s;
}

// ---------------------------------------------------------------- checkpoint

void save_checkpoint(const std::filesystem::path& path, const RunConfig& cfg, const SimState& state) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write checkpoint " + path.string());
    os.write("FENE2D\0\0", 8);
    put(os, kCheckpointVersion);
    const std::string text = canonical_text(cfg);
    put(os, static_cast<std::uint32_t>(text.size()));
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    put(os, state.t);
    for (const SpecArray* a : {&state.u.c1, &state.u.c2})
        for (const cplx& c : *a) {
            put(os, c.real());
            put(os, c.imag());
        }
    const ConfigField& g = state.cfg;
    for (int m = 0; m <= g.m_max(); ++m)
        for (int n = 0; n < g.n_r(); ++n) {
            const RealArray& re = g.field(m, n, Part::re);
            for (std::size_t i = 0; i < g.nodes(); ++i) {
                put(os, re[i]);
                put(os, m == 0 ? 0.0 : g.field(m, n, Part::im)[i]);
            }
        }
    if (!os) throw ConfigError("I/O error writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot read checkpoint " + path.string());
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, "FENE2D\0\0", 8) != 0) throw ConfigError("checkpoint: bad magic");
    const auto version = get<std::uint32_t>(is, "version");
    if (version != kCheckpointVersion)
        throw ConfigError("checkpoint: version " + std::to_string(version) + " not supported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
    const auto len = get<std::uint32_t>(is, "config length");
    Checkpoint ck;
    ck.config_text.resize(len);
    if (!is.read(ck.config_text.data(), len)) throw ConfigError("checkpoint: truncated config");
    ck.config = parse_config(ck.config_text);
    ck.t = get<double>(is, "time");
    const std::size_t ns = static_cast<std::size_t>(ck.config.grid.ny) * (ck.config.grid.nx / 2 + 1);
    for (SpecArray* a : {&ck.u.c1, &ck.u.c2}) {
        a->resize(ns);
        for (cplx& c : *a) {
            const double re = get<double>(is, "velocity");
            c = cplx(re, get<double>(is, "velocity"));
        }
    }
    const std::size_t count = 2ull * (ck.config.fene.m_max + 1) * ck.config.fene.n_r *
                              static_cast<std::size_t>(ck.config.grid.nx) * ck.config.grid.ny;
    ck.cfg.resize(count);
    for (double& v : ck.cfg) v = get<double>(is, "configuration");
    if (is.peek() != std::char_traits<char>::eof()) throw ConfigError("checkpoint: trailing bytes");
    return ck;
}

SimState checkpoint_state(const Checkpoint& ck, const CoupledSolver& solver) {
    const Torus& torus = solver.torus();
    const ConfigBasis& basis = solver.basis();
    if (ck.config.grid.nx != torus.nx() || ck.config.grid.ny != torus.ny())
        throw ConfigError("checkpoint: grid size does not match the run");
    if (ck.config.fene.m_max != basis.m_max() || ck.config.fene.n_r != basis.n_r())
        throw ConfigError("checkpoint: configuration basis does not match the run");
    SimState s = solver.zero_state();
    s.t = ck.t;
    s.u = ck.u;
    std::size_t k = 0;
    const std::size_t n = torus.nodes();
    for (int m = 0; m <= basis.m_max(); ++m)
        for (int j = 0; j < basis.n_r(); ++j) {
            RealArray& re = s.cfg.field(m, j, Part::re);
            RealArray* im = m == 0 ? nullptr : &s.cfg.field(m, j, Part::im);
            for (std::size_t i = 0; i < n; ++i, k += 2) {
                re[i] = ck.cfg[k];
                if (im) (*im)[i] = ck.cfg[k + 1];
            }
        }
    return s;
}

// ---------------------------------------------------------------- CSV

void write_csv_row(std::ostream& os, const DiagnosticsRow& r) {
    const double v[] = {r.t,        r.energy_u, r.enstrophy,  r.entropy2,           r.dissipation, r.entropy_p,
                        r.tau_l2,   r.tau_l1,   r.besov_b011, r.splitting_integral, r.l1lp_norm,   r.cum_u3};
    for (std::size_t i = 0; i < std::size(v); ++i) os << (i ? "," : "") << fmt(v[i]);
    os << '\n';
}

std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty file");
    int col = -1, idx = 0;
    {
        std::istringstream hs(line);
        std::string name;
        while (std::getline(hs, name, ',')) {
            if (!name.empty() && name.back() == '\r') name.pop_back();
            if (name == column) col = idx;
            ++idx;
        }
    }
    if (col < 0) throw ConfigError("unknown column: " + column);
    std::vector<double> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i <= col; ++i)
            if (!std::getline(ls, cell, ',')) throw ConfigError("line " + std::to_string(lineno) + ": missing column");
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        out.push_back(parse_double(column, cell));
    }
    return out;
}

// ---------------------------------------------------------------- drivers

RunResult run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    enable_flush_to_zero();
    SchemeOptions opts = cfg.scheme;
    opts.drag = cfg.drag;
    const CoupledSolver solver(cfg.fene, cfg.grid, cfg.dt, opts);
    const SimState init = initial_state(cfg, solver);
    DiagnosticsRecorder rec(solver, cfg.p_entropy_p);
    RunResult res;
    rec.start(init);
    res.history.push_back(rec.row(init));
    SimState s = init;
    const long long steps = step_count(cfg);
    long long done = 0;
    for (long long n = 1; n <= steps; ++n) {
        try {
            SimState next = solver.step(s);
            rec.advance(next);
            if (n % cfg.sample_every == 0 || n == steps) {
                const DiagnosticsRow row = rec.row(next);
                if (!std::isfinite(row.energy_u) || !std::isfinite(row.entropy2) || !std::isfinite(row.besov_b011))
                    throw BlowUpError("diagnostics became non-finite");
                res.history.push_back(row);
            }
            s = std::move(next);
            done = n;
        } catch (const BlowUpError& e) {
            res.status = 1;
            res.message = e.what();
            break;
        } catch (const StepSizeError& e) {
            res.status = 1;
            res.message = e.what();
            break;
        }
    }
    write_outputs(out_dir, cfg, res, s, done);
    res.final_state = std::move(s);
    return res;
}

RunResult run_heat_baseline(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    enable_flush_to_zero();
    SchemeOptions opts = cfg.scheme;
    opts.drag = cfg.drag;
    const CoupledSolver solver(cfg.fene, cfg.grid, cfg.dt, opts);
    SimState s = solver.zero_state();
    const VelocityField u0 = initial_state(cfg, solver).u;
    s.u = u0;
    DiagnosticsRecorder rec(solver, cfg.p_entropy_p);
    RunResult res;
    rec.start(s);
    res.history.push_back(rec.row(s));
    const long long steps = step_count(cfg);
    for (long long n = 1; n <= steps; ++n) {
        s.t = static_cast<double>(n) * cfg.dt;
        s.u = heat_semigroup(solver.torus(), u0, cfg.scheme.nu * s.t);
        rec.advance(s);
        if (n % cfg.sample_every == 0 || n == steps) res.history.push_back(rec.row(s));
    }
    write_outputs(out_dir, cfg, res, s, steps);
    res.final_state = std::move(s);
    return res;
}

void print_checks(std::ostream& os, const std::vector<CheckLine>& lines) {
    for (const CheckLine& l : lines) os << (l.pass ? "PASS " : "FAIL ") << l.name << (l.detail.empty() ? "" : "  ") << l.detail << '\n';
}

std::string version_string() { return "0.1.0"; }

}  // namespace fene
