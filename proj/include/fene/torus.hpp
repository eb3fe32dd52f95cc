#pragma once

// Periodic torus [0, L)^2 sampled on nx * ny nodes, with FFTW real transforms.
// Nodal arrays are row-major with x1 fastest: index = iy * nx + ix.
// Spectral arrays hold the half plane kx = 0..nx/2 for every ky, index = iy * nkx + ix,
// and store Fourier-series coefficients f_hat(xi) = (1/N) sum_x f(x) e^{-i xi.x}.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <new>
#include <numbers>
#include <vector>

namespace fene {

using cplx = std::complex<double>;

template <class T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) {}
    T* allocate(std::size_t n) {
        void* p = fftw_malloc(n * sizeof(T));
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) { fftw_free(p); }
    template <class U>
    bool operator==(const FftwAllocator<U>&) const { return true; }
};

using RealArray = std::vector<double, FftwAllocator<double>>;
using SpecArray = std::vector<cplx, FftwAllocator<cplx>>;

struct TorusGrid {
    int nx = 64;
    int ny = 64;
    double L = 2.0 * std::numbers::pi;

    /// Throws DomainError unless nx, ny are powers of two >= 8 and L > 0.
    void validate() const;
};

class Torus {
public:
    explicit Torus(const TorusGrid& grid);
    ~Torus();
    Torus(const Torus&) = delete;
    Torus& operator=(const Torus&) = delete;

    const TorusGrid& grid() const { return grid_; }
    int nx() const { return grid_.nx; }
    int ny() const { return grid_.ny; }
    int nkx() const { return grid_.nx / 2 + 1; }
    std::size_t nodes() const { return static_cast<std::size_t>(grid_.nx) * grid_.ny; }
    std::size_t spec_size() const { return static_cast<std::size_t>(grid_.ny) * nkx(); }
    double length() const { return grid_.L; }
    double cell_area() const { return grid_.L * grid_.L / static_cast<double>(nodes()); }
    double dk() const { return 2.0 * std::numbers::pi / grid_.L; }

    /// Signed integer lattice mode of a spectral index.
    int mode_x(std::size_t idx) const { return static_cast<int>(idx % nkx()); }
    int mode_y(std::size_t idx) const {
        const int iy = static_cast<int>(idx / nkx());
        return iy <= grid_.ny / 2 ? iy : iy - grid_.ny;
    }
    double xi1(std::size_t idx) const { return xi1_[idx]; }
    double xi2(std::size_t idx) const { return xi2_[idx]; }
    double xi_sq(std::size_t idx) const { return xi_sq_[idx]; }
    /// 2/3-rule mask (also removes Nyquist rows/columns).
    bool kept(std::size_t idx) const { return mask_[idx] != 0; }
    /// Multiplicity of a half-plane coefficient in the full lattice (1 or 2).
    double multiplicity(std::size_t idx) const { return mult_[idx]; }
    /// Largest |xi| retained by the dealiasing mask.
    double kmax() const { return kmax_; }

    double x1(int ix) const { return grid_.L * ix / grid_.nx; }
    double x2(int iy) const { return grid_.L * iy / grid_.ny; }

    RealArray make_real() const { return RealArray(nodes(), 0.0); }
    SpecArray make_spec() const { return SpecArray(spec_size(), cplx(0.0)); }

    void forward(const RealArray& nodal, SpecArray& spec) const;
    void inverse(const SpecArray& spec, RealArray& nodal) const;
    SpecArray forward(const RealArray& nodal) const;
    RealArray inverse(const SpecArray& spec) const;

    /// int |f|^2 dx = L^2 sum over the full lattice of |f_hat|^2.
    double l2_sq(const SpecArray& spec) const;
    void apply_mask(SpecArray& spec) const;

private:
    TorusGrid grid_;
    std::vector<double> xi1_, xi2_, xi_sq_, mult_;
    std::vector<unsigned char> mask_;
    double kmax_ = 0.0;
    fftw_plan r2c_ = nullptr;
    fftw_plan c2r_ = nullptr;
    mutable SpecArray scratch_;
};

/// Cell-weighted nodal sums, reduced pairwise in fixed order.
double pairwise_sum(const double* data, std::size_t n);
double grid_integral(const Torus& torus, const RealArray& f);
double grid_l1(const Torus& torus, const RealArray& f);

}  // namespace fene
