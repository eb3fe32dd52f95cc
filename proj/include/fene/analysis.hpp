#pragma once

// Verification instruments: Littlewood-Paley blocks and the B^0_{1,1} norm, Bernstein
// and heat-semigroup estimates, the weighted Poincare floor, stress bounds, the
// Fourier-splitting integral, decay fits, and the diagnostics row recorded by a run.

#include <cstdint>
#include <optional>
#include <vector>

#include "fene/coupling.hpp"
#include "fene/rng.hpp"

namespace fene {

// ---------------------------------------------------------------- norms

/// (cell-weighted sum |f|^p)^(1/p); p = infinity gives max |f|.
double lp_norm(const Torus& torus, const RealArray& f, double p);
/// Lp norm of the pointwise Euclidean length of a vector field.
double lp_norm(const Torus& torus, const RealArray& a, const RealArray& b, double p);

// ---------------------------------------------------------------- dyadic blocks

/// Smooth step: 1 for rho <= 3/4, 0 for rho >= 4/3.
double chi_profile(double rho);
/// chi(rho / 2) - chi(rho), supported in [3/4, 8/3].
double phi_profile(double rho);

class DyadicFamily {
public:
    explicit DyadicFamily(const Torus& torus);

    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    int block_count() const { return j_max_ - j_min_ + 1; }
    std::size_t spec_size() const { return spec_size_; }

    /// Normalized multiplier of block j at a spectral index.
    double multiplier(int j, std::size_t idx) const { return mult_[j - j_min_][idx]; }
    /// max over nonzero lattice xi of |sum_j phi(2^-j |xi|) - 1| before normalization.
    double raw_partition_error() const { return raw_error_; }
    /// Same after normalization.
    double partition_error() const;

private:
    int j_min_ = 0;
    int j_max_ = -1;
    std::size_t spec_size_ = 0;
    double raw_error_ = 0.0;
    std::vector<std::vector<double>> mult_;
};

/// Delta_j f for j = j_min..j_max. Throws DomainError unless f is mean-free and
/// laid out on the family's grid.
std::vector<RealArray> dyadic_blocks(const Torus& torus, const DyadicFamily& fam, const SpecArray& f);
double besov_b011(const Torus& torus, const DyadicFamily& fam, const SpecArray& f);
/// Vector version: blocks measured in the pointwise Euclidean norm.
double besov_b011(const Torus& torus, const DyadicFamily& fam, const VectorSpec& f);

// ---------------------------------------------------------------- Bernstein / heat

/// Random wave packet with spectrum phi(|xi| / lambda) times random amplitudes,
/// centred at a random point; mean-free.
SpecArray annulus_field(const Torus& torus, double lambda, const CounterRng& rng, std::uint64_t trial);

struct BernsteinReport {
    double lambda = 0.0;
    double p = 2.0, q = 2.0;
    int trials = 0;
    double grad_lower = 0.0;   ///< min ||grad u||_p / (lambda ||u||_p)
    double grad_upper = 0.0;   ///< max of the same
    double lq_constant = 0.0;  ///< max ||u||_q / (lambda^{2(1/p - 1/q)} ||u||_p)
    double heat_ratio = 0.0;   ///< max ||e^{t Delta} u||_p / ||u||_p at t = lambda^-2
    double heat_rate = 0.0;    ///< -log(heat_ratio)
};

/// Throws DomainError unless 1 <= p <= q.
BernsteinReport bernstein_check(const Torus& torus, double lambda, double p, double q, int trials,
                                const CounterRng& rng);

/// sup over t of sum_{j = j_lo..j_hi} t^s 2^{2js} exp(-c t 2^{2j}), t on a log grid
/// covering [2^{-2 j_hi - 4}, 2^{-2 j_lo + 4}].
double dyadic_heat_sum_sup(double s, double c, int j_lo, int j_hi, int points_per_octave = 64);

struct HeatReport {
    double p = 1.0, q = 2.0;
    bool gradient = false;
    std::vector<double> times;
    std::vector<double> ratio;  ///< sup over fields at each time
    double sup = 0.0;
};

/// t^{1/p - 1/q} ||e^{t Delta} f||_q / ||f||_p (times t^{1/2} and grad for the gradient
/// variant), maximized over the fields at each time. Throws DomainError unless
/// 1 <= p <= q.
HeatReport heat_lplq_check(const Torus& torus, const std::vector<SpecArray>& fields, double p, double q,
                           const std::vector<double>& times, bool gradient);

/// exp(-|x - c|^2 / (2 width^2)) centred on the torus, as spectral data.
SpecArray gaussian_field(const Torus& torus, double width);
/// Largest t for which whole-space heat constants are meaningful: (L / 2 pi)^2 / 10.
double whole_space_window(const Torus& torus);

// ---------------------------------------------------------------- configuration space

struct PoincareReport {
    double lambda1 = 0.0;
    double min_ratio = 0.0;
    double eigen_ratio = 0.0;
    int samples = 0;
};

/// dissipation / entropy over the samples and for the gap eigenvector. Throws
/// DomainError if a sample has c_{0,0} != 0 or vanishes.
PoincareReport poincare_check(const ConfigBasis& basis, const std::vector<ConfigCoeffs>& samples);
std::vector<ConfigCoeffs> random_mean_zero(const ConfigBasis& basis, int count, const CounterRng& rng,
                                           int max_n = -1, bool only_m2 = false);

/// Nodal quadrature for int_B |g|^p psi_inf dR with g in the basis span, exact for even p.
class PEntropyQuadrature {
public:
    /// radial/angular = 0 selects the exact counts; explicit counts below them throw
    /// DomainError (node shortage). Throws DomainError unless p is an even integer >= 2.
    PEntropyQuadrature(const ConfigBasis& basis, int p, int radial = 0, int angular = 0);

    int p() const { return p_; }
    int required_radial() const { return need_radial_; }
    int required_angular() const { return need_angular_; }

    /// int_B |g|^p psi_inf dR for one node's real-layout coefficients.
    double integral(std::span<const double> x) const;

private:
    int p_;
    int need_radial_, need_angular_;
    Eigen::MatrixXd phi_;      // quadrature point x field
    Eigen::VectorXd weight_;
};

struct PEntropy {
    double integral = 0.0;  ///< int_x int_B |g|^p psi_inf
    double l1lp = 0.0;      ///< int_x (int_B |g|^p psi_inf)^{1/p}
};

PEntropy p_entropy(const Torus& torus, const ConfigField& cfg, const PEntropyQuadrature& quad);

/// |tau|^2 as a quadratic form in the real layout (Frobenius norm).
Eigen::MatrixXd stress_gram(const ConfigBasis& basis, const StressMoments& mom);

struct TauBoundReport {
    double pointwise_sample = 0.0;  ///< max |tau|^2 / sqrt(entropy * dissipation) over samples
    double pointwise_sup = 0.0;     ///< exact sup over the mean-zero Galerkin space
    double l1_ratio_max = 0.0;      ///< max ||tau||_L1 / ||psi - psi_inf||_{L1(Lp)} over fields
    double l1_ratio_min = 0.0;
    int samples = 0;
    int fields = 0;
};

/// Throws DomainError if quad.p() * k <= 1 and fields are supplied.
TauBoundReport tau_bound_check(const ConfigBasis& basis, const std::vector<ConfigCoeffs>& samples,
                               const Torus& torus, const std::vector<ConfigField>& fields,
                               const PEntropyQuadrature& quad);

/// int |tau| dx with |tau| the Frobenius norm; ||tau||^2_{L2} likewise.
double tau_l1(const Torus& torus, const StressField& tau);
double tau_l2_sq(const Torus& torus, const StressField& tau);

// ---------------------------------------------------------------- splitting / fits

/// L^2 sum of |u_hat|^2 over lattice xi with |xi|^2 <= 2 / (1 + t).
double splitting_integral(const Torus& torus, const VelocityField& u, double t);
/// L^2 max over the same ball of |u_hat(xi)| (Euclidean over components).
double splitting_max(const Torus& torus, const VelocityField& u, double t);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double curvature = 0.0;  ///< quadratic coefficient of a degree-2 fit in the same variables
    int points = 0;
};

/// log(value) against log(1 + t) over t0 <= t <= t1.
FitResult decay_fit(const std::vector<double>& t, const std::vector<double>& value, double t0, double t1);
/// log(value) against t; rate = -slope.
FitResult exp_fit(const std::vector<double>& t, const std::vector<double>& value, double t0, double t1);

// ---------------------------------------------------------------- diagnostics

struct DiagnosticsRow {
    double t = 0.0;
    double energy_u = 0.0;
    double enstrophy = 0.0;
    double entropy2 = 0.0;
    double dissipation = 0.0;
    double entropy_p = 0.0;
    double tau_l2 = 0.0;  ///< squared L2 norm
    double tau_l1 = 0.0;
    double besov_b011 = 0.0;
    double splitting_integral = 0.0;
    double l1lp_norm = 0.0;
    double cum_u3 = 0.0;
    // not part of the CSV schema
    double u_l1 = 0.0;
    double splitting_max = 0.0;
    double mass_defect = 0.0;
    double production = 0.0;  ///< int int (sigma R).grad g g psi_inf for the run's drag
};

/// Evaluates rows for one solver. cum_u3 integrates ||u||^3 by the trapezoid rule over
/// every call to advance().
class DiagnosticsRecorder {
public:
    /// p = 0 disables the p-entropy columns; production is only evaluated on request.
    DiagnosticsRecorder(const CoupledSolver& solver, int p, bool with_production = false);

    void start(const SimState& s);
    void advance(const SimState& s);
    DiagnosticsRow row(const SimState& s) const;

    const DyadicFamily& family() const { return fam_; }

private:
    const CoupledSolver& solver_;
    DyadicFamily fam_;
    std::optional<PEntropyQuadrature> quad_;
    bool with_production_;
    DragOperator production_op_;
    double last_t_ = 0.0;
    double last_norm3_ = 0.0;
    double cum_u3_ = 0.0;
};

// ---------------------------------------------------------------- run-level checks

struct BootstrapReport {
    std::vector<double> cubic;      ///< (int ||u||^3)^{1/3} / (1 + t)^{1/12}
    std::vector<double> splitting;  ///< splitting / ((1 + t)^{-1/2} + int dissipation)
    std::vector<double> majorant;   ///< max_S |u_hat| / (||u0||_L1 + |S| int (||u||^2 + ||tau||_L1))
    double cubic_max = 0.0, splitting_max = 0.0, majorant_max = 0.0;
    bool finite = true;
};

BootstrapReport bootstrap_tracker(const std::vector<DiagnosticsRow>& history);

struct BesovAprioriReport {
    double besov0 = 0.0;
    double sup_besov = 0.0;
    double fitted_c = 0.0;  ///< max over t > 0 of (besov(t) - besov(0))_+ / sqrt(t)
    bool finite = true;
};

BesovAprioriReport besov_apriori_check(const std::vector<DiagnosticsRow>& history);

struct LyapunovReport {
    bool found = false;
    double lambda = 0.0;  ///< smallest power of two making lambda entropy + ||u||^2 nonincreasing
    double worst_increase = 0.0;
};

/// Searches lambda in {2^0, ..., 2^max_exponent}; increases up to rel_slack times the
/// functional's value are tolerated.
LyapunovReport lyapunov_search(const std::vector<DiagnosticsRow>& history, int max_exponent, double rel_slack = 0.0);

/// Largest violation of (E(t1) - E(t0)) / dt + nu avg enstrophy <= avg ||tau||^2 / nu over
/// consecutive rows, relative to nu avg enstrophy + avg ||tau||^2 / nu (averages by the
/// trapezoid rule).
double energy_inequality_excess(const std::vector<DiagnosticsRow>& history, double nu = 1.0);

}  // namespace fene
