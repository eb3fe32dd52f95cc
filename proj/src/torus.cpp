#include "fene/torus.hpp"

#include <cmath>

#include "fene/error.hpp"

namespace fene {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

void TorusGrid::validate() const {
    if (!is_pow2(nx) || !is_pow2(ny) || nx < 8 || ny < 8)
        throw DomainError("grid: nx and ny must be powers of two >= 8");
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("grid: L must be positive");
}

Torus::Torus(const TorusGrid& grid) : grid_(grid) {
    grid_.validate();
    const std::size_t ns = spec_size();
    xi1_.resize(ns);
    xi2_.resize(ns);
    xi_sq_.resize(ns);
    mult_.resize(ns);
    mask_.resize(ns);
    const int cut_x = grid_.nx / 3;
    const int cut_y = grid_.ny / 3;
    for (std::size_t idx = 0; idx < ns; ++idx) {
        const int kx = mode_x(idx);
        const int ky = mode_y(idx);
        xi1_[idx] = dk() * kx;
        xi2_[idx] = dk() * ky;
        xi_sq_[idx] = xi1_[idx] * xi1_[idx] + xi2_[idx] * xi2_[idx];
        mult_[idx] = (kx == 0 || kx == grid_.nx / 2) ? 1.0 : 2.0;
        const bool keep = kx <= cut_x && std::abs(ky) <= cut_y;
        mask_[idx] = keep ? 1 : 0;
        if (keep) kmax_ = std::max(kmax_, std::sqrt(xi_sq_[idx]));
    }
    RealArray r = make_real();
    scratch_ = make_spec();
    r2c_ = fftw_plan_dft_r2c_2d(grid_.ny, grid_.nx, r.data(), reinterpret_cast<fftw_complex*>(scratch_.data()),
                                FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r_2d(grid_.ny, grid_.nx, reinterpret_cast<fftw_complex*>(scratch_.data()), r.data(),
                                FFTW_ESTIMATE);
    if (!r2c_ || !c2r_) throw ConstructionError("torus: FFTW planning failed");
}

Torus::~Torus() {
    if (r2c_) fftw_destroy_plan(r2c_);
    if (c2r_) fftw_destroy_plan(c2r_);
}

void Torus::forward(const RealArray& nodal, SpecArray& spec) const {
    spec.resize(spec_size());
    fftw_execute_dft_r2c(r2c_, const_cast<double*>(nodal.data()), reinterpret_cast<fftw_complex*>(spec.data()));
    const double inv = 1.0 / static_cast<double>(nodes());
    for (cplx& c : spec) c *= inv;
}

void Torus::inverse(const SpecArray& spec, RealArray& nodal) const {
    nodal.resize(nodes());
    scratch_.assign(spec.begin(), spec.end());
    fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(scratch_.data()), nodal.data());
}

SpecArray Torus::forward(const RealArray& nodal) const {
    SpecArray s = make_spec();
    forward(nodal, s);
    return s;
}

RealArray Torus::inverse(const SpecArray& spec) const {
    RealArray r = make_real();
    inverse(spec, r);
    return r;
}

double Torus::l2_sq(const SpecArray& spec) const {
    std::vector<double> terms(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) terms[i] = mult_[i] * std::norm(spec[i]);
    return grid_.L * grid_.L * pairwise_sum(terms.data(), terms.size());
}

void Torus::apply_mask(SpecArray& spec) const {
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (!mask_[i]) spec[i] = 0.0;
}

double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 64) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double grid_integral(const Torus& torus, const RealArray& f) {
    return torus.cell_area() * pairwise_sum(f.data(), f.size());
}

double grid_l1(const Torus& torus, const RealArray& f) {
    std::vector<double> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
    return torus.cell_area() * pairwise_sum(a.data(), a.size());
}

}  // namespace fene
