#pragma once

// Micro-macro coupling: a configuration coefficient field over the torus, the polymer
// stress it exerts on the fluid, the drag acting on it, and the coupled time step
//
//   half relax -> half drag -> {transport of c, Navier-Stokes with P div tau} -> half drag -> half relax

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "fene/configspace.hpp"
#include "fene/fluid.hpp"
#include "fene/fokker_planck.hpp"

namespace fene {

enum class DragMode { corotation, full };

/// One real scalar field per real degree of freedom of ConfigCoeffs (ConfigBasis layout).
class ConfigField {
public:
    ConfigField() = default;
    ConfigField(const ConfigBasis& basis, std::size_t nodes);

    int m_max() const { return m_max_; }
    int n_r() const { return n_r_; }
    int field_count() const { return static_cast<int>(fields_.size()); }
    std::size_t nodes() const { return nodes_; }

    RealArray& field(int f) { return fields_[f]; }
    const RealArray& field(int f) const { return fields_[f]; }
    RealArray& field(int m, int n, Part part);
    const RealArray& field(int m, int n, Part part) const;

    ConfigCoeffs at(std::size_t node) const;
    void set(std::size_t node, const ConfigCoeffs& c);
    bool is_zero(int f) const;

    /// max over x of |c_{0,0}(x)|.
    double mass_defect() const;

private:
    int m_max_ = 0;
    int n_r_ = 0;
    std::size_t nodes_ = 0;
    std::vector<RealArray> fields_;
};

struct StressField {
    RealArray t11, t12, t22;
};

/// tau_ij(x) = sum_f weight_ij[f] x_f(x); only m = 0 and m = 2 fields carry weight.
struct StressMoments {
    std::vector<double> w11, w12, w22;
};

/// int_B 2k R_i R_j / (1 - |R|^2) b_{m,n} psi_inf dR for m in {0, 2}, by Gauss-Jacobi
/// with weight (1 - s)^{k-1} s^{1 + |m|/2}. Throws ConstructionError if m_max < 2.
StressMoments stress_moments(const ConfigBasis& basis);

std::array<double, 3> stress_at(const StressMoments& mom, std::span<const double> x);
StressField stress(const ConfigField& cfg, const StressMoments& mom);

/// sigma(u): (grad u - grad u^T)/2 for co-rotation, grad u for the full drag,
/// with (grad u)_{ij} = d_i u_j.
NodalTensor sigma(const Torus& torus, const VelocityField& u, DragMode mode);

/// Galerkin form of the general drag in the real layout:
///   G dx/dt = sum_ij sigma_ij (K^{ij} x + S^{ij}),
/// from g_t = 2k (1 + g) R.sigma R / (1 - |R|^2) - (sigma R).grad_R g.
/// transport^{ij}_{ab} = <phi_a, R_j d_i phi_b>, so the entropy production
/// int (sigma R).grad g g psi_inf = sum_ij sigma_ij x^T transport^{ij} x.
struct DragOperator {
    std::array<Eigen::MatrixXd, 4> K;          ///< index 2*i + j
    std::array<Eigen::VectorXd, 4> S;
    std::array<Eigen::MatrixXd, 4> transport;
    Eigen::VectorXd gram;                      ///< diag(G)
};

DragOperator drag_operator(const ConfigBasis& basis);

/// int (sigma R).grad_R g g psi_inf dR for one node's coefficients.
double entropy_production(const DragOperator& drag, std::span<const double> x, const std::array<double, 4>& s);

/// Spatial integral of the entropy production for a configuration field.
double entropy_production(const Torus& torus, const ConfigField& cfg, const DragOperator& drag,
                          const NodalTensor& sig);

/// Per-node relaxation over dt (propagator of op if dt == op.dt()).
ConfigField fp_relax_field(const ConfigField& cfg, const FpOperator& op, double dt);
/// Per-node co-rotation over dt at nodal vorticity omega.
ConfigField rotate_field(const ConfigField& cfg, const RealArray& omega, double dt);
/// Per-node full-drag evolution over dt (explicit Heun on the Galerkin system).
ConfigField drag_field(const ConfigField& cfg, const DragOperator& drag, const NodalTensor& sig, double dt);

/// Heun step of c_t + div(u c) = 0 for every coefficient field with u frozen.
ConfigField advect_config(const Torus& torus, const ConfigField& cfg, const VelocityField& u, double dt,
                          double cfl_limit = 0.5);

double entropy(const Torus& torus, const ConfigField& cfg);
double dissipation(const Torus& torus, const ConfigField& cfg, const FpOperator& op);

struct SchemeOptions {
    DragMode drag = DragMode::corotation;
    PropagatorKind propagator = PropagatorKind::exact;
    double nu = 1.0;
    bool advection = true;       ///< fluid self-advection
    bool transport = true;       ///< spatial transport of the configuration
    bool stress_forcing = true;  ///< P div tau in the momentum equation
    double cfl_limit = 0.5;
};

struct SimState {
    double t = 0.0;
    VelocityField u;
    ConfigField cfg;
};

/// Entropy before/after each drag half-step of one coupled step.
struct StepTrace {
    std::array<double, 2> drag_entropy_before{};
    std::array<double, 2> drag_entropy_after{};
};

class CoupledSolver {
public:
    CoupledSolver(const FeneParams& fene, const TorusGrid& grid, double dt, const SchemeOptions& opts = {});

    const Torus& torus() const { return torus_; }
    const ConfigBasis& basis() const { return basis_; }
    const FpOperator& half_operator() const { return half_op_; }
    const StressMoments& moments() const { return moments_; }
    const DragOperator& drag() const { return drag_; }
    const SchemeOptions& options() const { return opts_; }
    double dt() const { return dt_; }

    SimState zero_state() const;
    SimState step(const SimState& state, StepTrace* trace = nullptr) const;

    /// P div tau for a configuration field (dealiased).
    VectorSpec stress_divergence(const ConfigField& cfg) const;

private:
    FeneParams fene_;
    Torus torus_;
    ConfigBasis basis_;
    double dt_;
    SchemeOptions opts_;
    FpOperator half_op_;
    StressMoments moments_;
    DragOperator drag_;

    ConfigField drag_half(const ConfigField& cfg, const VelocityField& u, double* before, double* after) const;
    void transport_block(const VelocityField& u0, const ConfigField& c0, VelocityField& u1, ConfigField& c1) const;
};

SimState coupled_step(const CoupledSolver& solver, const SimState& state, StepTrace* trace = nullptr);

}  // namespace fene
