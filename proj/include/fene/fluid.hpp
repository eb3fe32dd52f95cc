#pragma once

// Pseudo-spectral incompressible Navier-Stokes on the periodic torus with an external
// stress forcing, integrating-factor Heun in time (diffusion exact), 2/3-rule dealiasing.

#include "fene/torus.hpp"

namespace fene {

/// Spectral 2-vector field on a torus (half-plane layout).
struct VectorSpec {
    SpecArray c1;
    SpecArray c2;
};

/// Divergence-free, mean-free spectral velocity.
using VelocityField = VectorSpec;

struct NodalVector {
    RealArray v1;
    RealArray v2;
};

VectorSpec make_vector_spec(const Torus& torus);
VectorSpec to_spectral(const Torus& torus, const NodalVector& v);
NodalVector to_nodal(const Torus& torus, const VectorSpec& v);

/// (I - xi xi^T / |xi|^2) per mode; the xi = 0 mode is zeroed.
VelocityField leray_project(const Torus& torus, const VectorSpec& f);

/// e^{t Delta}: multiplies every mode by exp(-t |xi|^2).
SpecArray heat_semigroup(const Torus& torus, const SpecArray& f, double t);
VectorSpec heat_semigroup(const Torus& torus, const VectorSpec& f, double t);

/// omega = d1 u2 - d2 u1 at the nodes.
RealArray vorticity(const Torus& torus, const VelocityField& u);

/// Nodal velocity gradient (grad u)_{ij} = d_i u_j.
struct NodalTensor {
    RealArray t11, t12, t21, t22;
};
NodalTensor velocity_gradient(const Torus& torus, const VelocityField& u);

struct NsOptions {
    double nu = 1.0;
    bool advection = true;
    double cfl_limit = 0.5;
};

/// One integrating-factor Heun step of u_t + P div(u (x) u) = nu Delta u + P stress_div,
/// with stress_div held fixed over the step.
VelocityField ns_step(const Torus& torus, const VelocityField& u, const VectorSpec& stress_div, double dt,
                      const NsOptions& opts = {});

/// -P div(u (x) u), dealiased, given the nodal velocity.
VectorSpec advection_tendency(const Torus& torus, const NodalVector& u);

/// Throws StepSizeError if dt * max|u| * kmax exceeds the limit.
void check_cfl(const Torus& torus, const NodalVector& u, double dt, double limit);
double max_speed(const NodalVector& u);

double energy(const Torus& torus, const VelocityField& u);     ///< ||u||^2
double enstrophy(const Torus& torus, const VelocityField& u);  ///< ||grad u||^2
/// max over xi != 0 of |xi . u_hat| / |u_hat| (0 for a zero field).
double divergence_residual(const Torus& torus, const VelocityField& u);
void require_finite(const VectorSpec& v, const char* where);

}  // namespace fene
