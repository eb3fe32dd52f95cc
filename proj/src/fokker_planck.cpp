#include "fene/fokker_planck.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fene/error.hpp"

namespace fene {

ConfigCoeffs::ConfigCoeffs(int m_max, int n_r)
    : m_max_(m_max), n_r_(n_r), c_(static_cast<std::size_t>((m_max + 1) * n_r), cplx(0.0)) {}

cplx ConfigCoeffs::operator()(int m, int n) const {
    const cplx v = c_[std::abs(m) * n_r_ + n];
    return m < 0 ? std::conj(v) : v;
}

void ConfigCoeffs::set(int m, int n, cplx value) {
    if (m < 0 || m > m_max_ || n < 0 || n >= n_r_) throw DomainError("ConfigCoeffs::set: index out of range");
    c_[m * n_r_ + n] = m == 0 ? cplx(value.real(), 0.0) : value;
}

std::vector<double> ConfigCoeffs::to_real() const {
    std::vector<double> x(static_cast<std::size_t>(n_r_ * (1 + 2 * m_max_)));
    for (int n = 0; n < n_r_; ++n) x[n] = c_[n].real();
    for (int m = 1; m <= m_max_; ++m)
        for (int n = 0; n < n_r_; ++n) {
            const int f = n_r_ + 2 * ((m - 1) * n_r_ + n);
            x[f] = c_[m * n_r_ + n].real();
            x[f + 1] = c_[m * n_r_ + n].imag();
        }
    return x;
}

ConfigCoeffs ConfigCoeffs::from_real(std::span<const double> x, int m_max, int n_r) {
    ConfigCoeffs c(m_max, n_r);
    for (int n = 0; n < n_r; ++n) c.c_[n] = x[n];
    for (int m = 1; m <= m_max; ++m)
        for (int n = 0; n < n_r; ++n) {
            const int f = n_r + 2 * ((m - 1) * n_r + n);
            c.c_[m * n_r + n] = cplx(x[f], x[f + 1]);
        }
    return c;
}

Eigen::MatrixXd stiffness_matrix(const ConfigBasis& basis, int m) {
    const int nr = basis.n_r();
    const int am = std::abs(m);
    const QuadratureRule& rule = basis.stiffness_rule(am);
    const double scale = std::numbers::pi / basis.equilibrium().c0();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nr, nr);
    std::vector<double> p(nr), dp(nr), radial(nr);
    for (int q = 0; q < rule.size(); ++q) {
        const double s = rule.nodes[q];
        basis.family(am).evaluate(s, p, dp);
        const double w = scale * rule.weights[q];
        if (am == 0) {
            // |d_r g|^2 = 4 s p'^2; the weight carries s^0
            for (int i = 0; i < nr; ++i)
                for (int j = 0; j < nr; ++j) A(i, j) += w * 4.0 * s * dp[i] * dp[j];
        } else {
            // s^{|m|-1} [(|m| p + 2 s p')(|m| p + 2 s p') + m^2 p p]; the weight carries s^{|m|-1}
            for (int i = 0; i < nr; ++i) radial[i] = am * p[i] + 2.0 * s * dp[i];
            for (int i = 0; i < nr; ++i)
                for (int j = 0; j < nr; ++j)
                    A(i, j) += w * (radial[i] * radial[j] + static_cast<double>(am * am) * p[i] * p[j]);
        }
    }
    return 0.5 * (A + A.transpose());
}

FpOperator::FpOperator(const ConfigBasis& basis, double dt, PropagatorKind kind) : dt_(dt), kind_(kind) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("assemble_operator: dt must be positive");
    const int nr = basis.n_r();
    for (int m = 0; m <= basis.m_max(); ++m) {
        Eigen::MatrixXd A = stiffness_matrix(basis, m);
        Eigen::VectorXd evals(nr);
        Eigen::MatrixXd evecs = Eigen::MatrixXd::Zero(nr, nr);
        if (m == 0) {
            // b_{0,0} is constant: its row and column vanish identically
            A.row(0).setZero();
            A.col(0).setZero();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.bottomRightCorner(nr - 1, nr - 1));
            evals[0] = 0.0;
            evals.tail(nr - 1) = es.eigenvalues();
            evecs(0, 0) = 1.0;
            evecs.bottomRightCorner(nr - 1, nr - 1) = es.eigenvectors();
            if (es.eigenvalues()[0] <= 0.0)
                throw ConstructionError("assemble_operator: A_0 is not positive on the mean-zero subspace");
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
            evals = es.eigenvalues();
            evecs = es.eigenvectors();
            if (evals[0] <= 0.0)
                throw ConstructionError("assemble_operator: A_" + std::to_string(m) + " is not positive definite");
        }
        stiffness_.push_back(std::move(A));
        evals_.push_back(std::move(evals));
        evecs_.push_back(std::move(evecs));
    }
    for (int m = 0; m <= basis.m_max(); ++m) props_.push_back(propagator_for(m, dt_));
}

const Eigen::MatrixXd& FpOperator::stiffness(int m) const { return stiffness_.at(std::abs(m)); }
const Eigen::VectorXd& FpOperator::eigenvalues(int m) const { return evals_.at(std::abs(m)); }
const Eigen::MatrixXd& FpOperator::eigenvectors(int m) const { return evecs_.at(std::abs(m)); }
const Eigen::MatrixXd& FpOperator::propagator(int m) const { return props_.at(std::abs(m)); }

Eigen::MatrixXd FpOperator::propagator_for(int m, double dt) const {
    const int am = std::abs(m);
    const int nr = n_r();
    Eigen::MatrixXd P;
    if (kind_ == PropagatorKind::exact) {
        const Eigen::VectorXd decay = (-dt * evals_[am].array()).exp();
        P = evecs_[am] * decay.asDiagonal() * evecs_[am].transpose();
    } else {
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(nr, nr);
        const Eigen::MatrixXd& A = stiffness_[am];
        P = (I + 0.5 * dt * A).ldlt().solve(I - 0.5 * dt * A);
    }
    if (am == 0) {
        // keep the mass coefficient decoupled exactly
        P.row(0).setZero();
        P.col(0).setZero();
        P(0, 0) = 1.0;
    }
    return P;
}

FpOperator assemble_operator(const ConfigBasis& basis, double dt, PropagatorKind kind) {
    return FpOperator(basis, dt, kind);
}

ConfigCoeffs fp_relax(const ConfigCoeffs& coeffs, const FpOperator& op, double dt) {
    ConfigCoeffs out(coeffs.m_max(), coeffs.n_r());
    const int nr = coeffs.n_r();
    for (int m = 0; m <= coeffs.m_max(); ++m) {
        const Eigen::MatrixXd P = dt == op.dt() ? op.propagator(m) : op.propagator_for(m, dt);
        const auto in = coeffs.mode(m);
        auto res = out.mode(m);
        for (int i = 0; i < nr; ++i) {
            cplx acc(0.0);
            for (int j = 0; j < nr; ++j) acc += P(i, j) * in[j];
            res[i] = acc;
        }
    }
    return out;
}

ConfigCoeffs rotate(const ConfigCoeffs& coeffs, double omega, double dt) {
    ConfigCoeffs out = coeffs;
    const double half_angle = 0.5 * omega * dt;
    for (int m = 1; m <= coeffs.m_max(); ++m) {
        const cplx phase = std::polar(1.0, m * half_angle);
        for (cplx& c : out.mode(m)) c *= phase;
    }
    return out;
}

double entropy(const ConfigCoeffs& coeffs) {
    double acc = 0.0;
    for (int m = 0; m <= coeffs.m_max(); ++m) {
        const double w = m == 0 ? 1.0 : 2.0;
        for (const cplx& c : coeffs.mode(m)) acc += w * std::norm(c);
    }
    return acc;
}

double dissipation(const ConfigCoeffs& coeffs, const FpOperator& op) {
    double acc = 0.0;
    const int nr = coeffs.n_r();
    for (int m = 0; m <= coeffs.m_max(); ++m) {
        const Eigen::MatrixXd& A = op.stiffness(m);
        const auto c = coeffs.mode(m);
        double mode_sum = 0.0;
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nr; ++j) mode_sum += A(i, j) * (std::conj(c[i]) * c[j]).real();
        acc += (m == 0 ? 1.0 : 2.0) * mode_sum;
    }
    return std::max(acc, 0.0);
}

GapMode spectral_gap_mode(const ConfigBasis& basis) {
    GapMode best;
    best.lambda = std::numeric_limits<double>::infinity();
    const int nr = basis.n_r();
    for (int m = 0; m <= basis.m_max(); ++m) {
        const Eigen::MatrixXd A = stiffness_matrix(basis, m);
        const int first = m == 0 ? 1 : 0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.bottomRightCorner(nr - first, nr - first));
        if (es.info() != Eigen::Success) throw ConstructionError("spectral_gap: eigensolver did not converge");
        if (es.eigenvalues()[0] < best.lambda) {
            best.lambda = es.eigenvalues()[0];
            best.m = m;
            best.eigenvector = Eigen::VectorXd::Zero(nr);
            best.eigenvector.tail(nr - first) = es.eigenvectors().col(0);
        }
    }
    if (!(best.lambda > 0.0)) throw ConstructionError("spectral_gap: nonpositive gap");
    return best;
}

double spectral_gap(const ConfigBasis& basis) { return spectral_gap_mode(basis).lambda; }

}  // namespace fene
