#pragma once

// Configuration space of a 2D FENE dumbbell: the unit disk B(0,1) carrying the
// equilibrium density psi_inf = (1 - |R|^2)^k / c0, the log spring potential,
// Gauss-Jacobi quadrature in s = |R|^2, and an orthonormal polynomial basis
//
//     b_{m,n}(R) = r^{|m|} p_{|m|,n}(r^2) e^{i m theta},
//
// orthonormal under <f, g> = int_B f conj(g) psi_inf dR.

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace fene {

using Point2 = std::array<double, 2>;
using cplx = std::complex<double>;

struct FeneParams {
    double k = 1.0;  ///< spring-potential exponent
    int n_r = 8;     ///< radial degrees per angular mode
    int m_max = 2;   ///< max |angular wavenumber|

    /// Throws DomainError unless k > 0, n_r >= 2, m_max >= 2.
    void validate() const;
};

/// int_B (1 - |R|^2)^k dR = pi / (k + 1). Accepts any finite k > -1.
double normalization_constant(double k);

class Equilibrium {
public:
    explicit Equilibrium(double k);

    double k() const { return k_; }
    double c0() const { return c0_; }

    /// (1 - |R|^2)^k / c0, exactly zero on the unit circle.
    double density(Point2 R) const;

private:
    double k_;
    double c0_;
};

double equilibrium_density(Point2 R, const Equilibrium& eq);

/// grad U = 2 k R / (1 - |R|^2) for U = -k log(1 - |R|^2); requires |R| < 1.
Point2 potential_gradient(Point2 R, double k);

/// Gauss rule for int_0^1 f(s) (1 - s)^alpha s^beta ds.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double alpha = 0.0;
    double beta = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
    int exact_degree() const { return 2 * size() - 1; }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q) acc += weights[q] * f(nodes[q]);
        return acc;
    }
};

/// n-point Gauss-Jacobi rule on [0,1] (Golub-Welsch, Newton-polished).
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

/// Polynomials on [0,1] orthonormal for the weight scale * (1 - s)^alpha * s^beta,
/// evaluated by their three-term recurrence.
class RadialFamily {
public:
    RadialFamily(int size, double alpha, double beta, double scale);

    int size() const { return static_cast<int>(diag_.size()); }

    /// Values p_0..p_{size-1}(s) and derivatives (dp may be empty).
    void evaluate(double s, std::span<double> p, std::span<double> dp = {}) const;

private:
    std::vector<double> diag_;      // a_n
    std::vector<double> offdiag_;   // sqrt(b_{n+1})
    double p0_;
};

enum class Part { re, im };

/// One real degree of freedom of a Hermitian coefficient array: m = 0 entries are
/// real, m > 0 entries carry a real and an imaginary part (m < 0 is the conjugate).
struct FieldKey {
    int m;
    int n;
    Part part;
};

/// Integrates f(R) (1 - |R|^2)^(k + shift) / c0 over the disk as a flat list of
/// polar points; exact for polynomials in (R1, R2) up to the stated degrees.
struct DiskQuadrature {
    std::vector<double> s;
    std::vector<double> theta;
    std::vector<double> weight;

    int size() const { return static_cast<int>(weight.size()); }
    Point2 point(int q) const;
};

DiskQuadrature disk_quadrature(const Equilibrium& eq, int radial_nodes, int angular_nodes,
                               double weight_shift = 0.0);

class ConfigBasis {
public:
    explicit ConfigBasis(const FeneParams& params);

    const FeneParams& params() const { return params_; }
    const Equilibrium& equilibrium() const { return eq_; }
    int n_r() const { return params_.n_r; }
    int m_max() const { return params_.m_max; }

    /// Radial family for angular mode |m|.
    const RadialFamily& family(int m) const;
    /// Gauss-Jacobi rule with weight (1 - s)^k s^|m| (mass matrices).
    const QuadratureRule& mass_rule(int m) const;
    /// Gauss-Jacobi rule with weight (1 - s)^k s^max(|m|-1, 0) (stiffness matrices).
    const QuadratureRule& stiffness_rule(int m) const;
    /// Number of radial nodes used per mode.
    int node_count() const;

    cplx value(int m, int n, Point2 R) const;
    std::array<cplx, 2> gradient(int m, int n, Point2 R) const;

    /// Gram matrix <b_{m,n}, b_{m,n'}> on the mass rule (identity by construction).
    std::vector<std::vector<double>> gram(int m) const;

    // Real layout: fields ordered m = 0 (n = 0..n_r-1), then for m = 1..m_max the
    // pairs (re, im) for n = 0..n_r-1.
    int field_count() const { return params_.n_r * (1 + 2 * params_.m_max); }
    int field_index(int m, int n, Part part) const;
    FieldKey field_key(int f) const;
    /// <phi_f, phi_f>: 1 for m = 0 fields, 2 otherwise.
    double field_weight(int f) const { return field_key(f).m == 0 ? 1.0 : 2.0; }
    /// Real basis function phi_f with g = sum_f x_f phi_f.
    double real_value(int f, Point2 R) const;
    Point2 real_gradient(int f, Point2 R) const;

private:
    FeneParams params_;
    Equilibrium eq_;
    std::vector<RadialFamily> families_;
    std::vector<QuadratureRule> mass_rules_;
    std::vector<QuadratureRule> stiffness_rules_;
};

ConfigBasis build_basis(const FeneParams& params);

}  // namespace fene
