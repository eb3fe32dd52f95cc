#pragma once

// Configuration-space dynamics of g = (psi - psi_inf) / psi_inf at one spatial point:
// relaxation dg/dt = psi_inf^{-1} div_R(psi_inf grad_R g) in the weighted Galerkin
// basis, and the co-rotation drift, which in 2D is a rigid rotation of R.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "fene/configspace.hpp"

namespace fene {

/// Coefficients c_{m,n} of g, stored for m >= 0; c_{-m,n} = conj(c_{m,n}).
class ConfigCoeffs {
public:
    ConfigCoeffs(int m_max, int n_r);

    int m_max() const { return m_max_; }
    int n_r() const { return n_r_; }

    /// Any m in [-m_max, m_max].
    cplx operator()(int m, int n) const;
    /// m >= 0; the imaginary part of an m = 0 entry is discarded.
    void set(int m, int n, cplx value);

    std::span<cplx> mode(int m) { return {c_.data() + m * n_r_, static_cast<std::size_t>(n_r_)}; }
    std::span<const cplx> mode(int m) const { return {c_.data() + m * n_r_, static_cast<std::size_t>(n_r_)}; }

    /// Real-layout vector x_f (see ConfigBasis::field_index).
    std::vector<double> to_real() const;
    static ConfigCoeffs from_real(std::span<const double> x, int m_max, int n_r);

private:
    int m_max_;
    int n_r_;
    std::vector<cplx> c_;
};

enum class PropagatorKind { exact, crank_nicolson };

/// <grad b_{m,n}, grad b_{m,n'}>_{psi_inf}; real symmetric, A_{-m} = A_m.
Eigen::MatrixXd stiffness_matrix(const ConfigBasis& basis, int m);

class FpOperator {
public:
    FpOperator(const ConfigBasis& basis, double dt, PropagatorKind kind = PropagatorKind::exact);

    int m_max() const { return static_cast<int>(stiffness_.size()) - 1; }
    int n_r() const { return static_cast<int>(stiffness_.front().rows()); }
    double dt() const { return dt_; }
    PropagatorKind kind() const { return kind_; }

    const Eigen::MatrixXd& stiffness(int m) const;
    /// Eigenpairs of A_m; for m = 0 the constant mode is the first eigenvector.
    const Eigen::VectorXd& eigenvalues(int m) const;
    const Eigen::MatrixXd& eigenvectors(int m) const;
    /// Propagator over dt(); propagator_for builds one for another step.
    const Eigen::MatrixXd& propagator(int m) const;
    Eigen::MatrixXd propagator_for(int m, double dt) const;

private:
    double dt_;
    PropagatorKind kind_;
    std::vector<Eigen::MatrixXd> stiffness_;
    std::vector<Eigen::VectorXd> evals_;
    std::vector<Eigen::MatrixXd> evecs_;
    std::vector<Eigen::MatrixXd> props_;
};

FpOperator assemble_operator(const ConfigBasis& basis, double dt, PropagatorKind kind = PropagatorKind::exact);

/// Relaxation over dt; reuses the operator's propagator when dt == op.dt().
ConfigCoeffs fp_relax(const ConfigCoeffs& coeffs, const FpOperator& op, double dt);

/// Co-rotation drift over dt at vorticity omega: c_{m,n} -> c_{m,n} exp(i m omega dt / 2).
ConfigCoeffs rotate(const ConfigCoeffs& coeffs, double omega, double dt);

/// int_B |psi - psi_inf|^2 / psi_inf dR = sum over all m of |c_{m,n}|^2.
double entropy(const ConfigCoeffs& coeffs);
/// int_B psi_inf |grad_R g|^2 dR = sum_m c_m^* A_m c_m.
double dissipation(const ConfigCoeffs& coeffs, const FpOperator& op);

struct GapMode {
    double lambda = 0.0;
    int m = 0;
    Eigen::VectorXd eigenvector;  ///< radial coefficients of the minimizing mode
};

/// Smallest nonzero eigenvalue of the relaxation operator over all angular modes.
GapMode spectral_gap_mode(const ConfigBasis& basis);
double spectral_gap(const ConfigBasis& basis);

}  // namespace fene
