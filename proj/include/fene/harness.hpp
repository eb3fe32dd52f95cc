#pragma once

// Run configuration, initial-data presets, checkpoint and CSV I/O, and the drivers behind
// the command-line tool.
//
// Config grammar: INI-style "key = value" lines under [section] headers; '#' and ';'
// start comments. Sections and keys:
//
//   [fene]        k, n_r, m_max
//   [grid]        nx, ny, L
//   [time]        dt, t_end, sample_every
//   [drag]        mode = corotation | full
//   [init]        u_preset = zero | taylor_green | low_freq_random | file, u_amplitude,
//                 xi_cut, seed, u_file,
//                 g_preset = zero | m2_bump | file, g_amplitude, envelope_scale, g_file
//   [diagnostics] p_entropy_p (0 = off), lyapunov_lambda_search_max
//   [scheme]      propagator = exact | cn, nu, advection, transport, stress_forcing

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fene/analysis.hpp"

namespace fene {

struct RunConfig {
    FeneParams fene;
    TorusGrid grid;
    double dt = 1e-3;
    double t_end = 1.0;
    int sample_every = 10;
    DragMode drag = DragMode::corotation;

    std::string u_preset = "zero";
    double u_amplitude = 1.0;
    double xi_cut = 1.0;
    std::uint64_t seed = 1;
    std::string u_file;
    std::string g_preset = "zero";
    double g_amplitude = 0.1;
    double envelope_scale = 0.0;  ///< bump width; <= 0 means spatially uniform
    std::string g_file;

    int p_entropy_p = 0;
    int lyapunov_lambda_search_max = 10;

    SchemeOptions scheme;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Throws ConfigError ("line N: ..." for syntax, "unknown key: foo", key names for ranges).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
/// Every key, fixed order, doubles printed with %.17g; parse_config round-trips it.
std::string canonical_text(const RunConfig& cfg);

/// u1 = A sin(k x1) cos(k x2), u2 = -A cos(k x1) sin(k x2), k = 2 pi / L.
VelocityField taylor_green(const Torus& torus, double amplitude);
/// Unit-magnitude random-phase modes on 0 < |xi| <= xi_cut, Hermitian, Leray-projected,
/// scaled by amplitude / sqrt(number of half-plane modes).
VelocityField low_freq_random(const Torus& torus, double amplitude, double xi_cut, std::uint64_t seed);
/// c_{2,0}(x) = amplitude * envelope(x), envelope a smooth periodic bump of the given width
/// centred on the torus (1 everywhere if width <= 0).
ConfigField m2_bump(const ConfigBasis& basis, const Torus& torus, double amplitude, double width);

/// Initial state for a configuration (file presets read checkpoints).
SimState initial_state(const RunConfig& cfg, const CoupledSolver& solver);

/// Checkpoint layout (little-endian):
///   "FENE2D\0\0" | u32 version | u32 n + n bytes canonical config | f64 t |
///   u_hat comp 1 then comp 2, ny * (nx/2 + 1) (re, im) f64 pairs, ky-major |
///   c_{m,n}(x) for m = 0..m_max, n = 0..n_r-1, nodes row-major, (re, im) f64 pairs.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
    RunConfig config;
    std::string config_text;
    double t = 0.0;
    VelocityField u;
    std::vector<double> cfg;  ///< raw c_{m,n}(x) pairs in file order
};

void save_checkpoint(const std::filesystem::path& path, const RunConfig& cfg, const SimState& state);
/// Throws ConfigError on a bad magic, version mismatch, or truncated file.
Checkpoint load_checkpoint(const std::filesystem::path& path);
/// Rebuilds the state on the solver's grid; throws ConfigError on a size mismatch.
SimState checkpoint_state(const Checkpoint& ck, const CoupledSolver& solver);

inline const char* const kCsvHeader =
    "t,energy_u,enstrophy,entropy2,dissipation,entropy_p,tau_l2,tau_l1,besov_b011,splitting_integral,"
    "l1lp_norm,cum_u3";

void write_csv_row(std::ostream& os, const DiagnosticsRow& r);
/// Column by header name; throws ConfigError if absent.
std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column);

struct RunResult {
    int status = 0;  ///< 0 ok, 1 blow-up
    std::vector<DiagnosticsRow> history;
    SimState final_state;
    std::string message;
};

/// Integrates cfg and records diagnostics; writes series.csv, checkpoint.bin and
/// manifest.txt to out_dir when it is non-empty.
RunResult run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir);
/// Exact heat flow e^{nu t Delta} u0 from the configured initial velocity, g = 0.
RunResult run_heat_baseline(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// One named check of a verification suite.
struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Suites: identities, lemmas, bernstein, heat, negative-control. Throws ConfigError
/// for an unknown suite.
std::vector<CheckLine> run_suite(const std::string& suite);
void print_checks(std::ostream& os, const std::vector<CheckLine>& lines);

std::string version_string();

}  // namespace fene
