#include "mlalpha/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "mlalpha/errors.hpp"

namespace mlalpha {

namespace {

// Field buffers are a few hundred KB each and are allocated and freed
// many times per step; glibc serves blocks that size with mmap/munmap,
// which costs a page-fault sweep on every reuse. Raising the thresholds
// keeps them in the arena.
void tune_allocator_once() {
#if defined(__GLIBC__)
    static std::once_flag flag;
    std::call_once(flag, [] {
        mallopt(M_MMAP_THRESHOLD, 1 << 30);
        mallopt(M_TRIM_THRESHOLD, 1 << 30);
    });
#endif
}

} // namespace

struct SpectralTransform::Impl {
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan r2c{};
    fftw_plan c2r{};

    explicit Impl(const Grid& g) {
        real = fftw_alloc_real(g.physical_size());
        cplx = fftw_alloc_complex(g.spectral_size());
        const int n = g.n;
        r2c = fftw_plan_dft_r2c_3d(n, n, n, real, cplx, FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_3d(n, n, n, cplx, real, FFTW_ESTIMATE);
    }
    ~Impl() {
        fftw_destroy_plan(r2c);
        fftw_destroy_plan(c2r);
        fftw_free(real);
        fftw_free(cplx);
    }
};

SpectralTransform::SpectralTransform(const Grid& grid) : grid_(grid) {
    tune_allocator_once();
    impl_ = std::make_unique<Impl>(grid);
}

SpectralTransform::~SpectralTransform() = default;

void SpectralTransform::forward_into(const double* samples, SpectralScalarField& out) const {
    std::memcpy(impl_->real, samples, sizeof(double) * grid_.physical_size());
    fftw_execute(impl_->r2c);
    const double scale = 1.0 / static_cast<double>(grid_.physical_size());
    const auto* src = reinterpret_cast<const Complex*>(impl_->cplx);
    const std::size_t m = grid_.spectral_size();
    for (std::size_t i = 0; i < m; ++i) out.coeffs[i] = src[i] * scale;
    out.coeffs[0] = Complex{0.0, 0.0}; // zero-mean space
}

SpectralScalarField SpectralTransform::forward(const PhysicalField& f) const {
    if (!(f.grid == grid_))
        throw ConfigError("forward_transform: field grid does not match transform grid");
    if (f.samples.size() != grid_.physical_size())
        throw ConfigError("forward_transform: sample array has wrong dimensions");
    SpectralScalarField out(grid_);
    forward_into(f.samples.data(), out);
    return out;
}

SpectralVectorField SpectralTransform::forward(const PhysicalVectorField& f) const {
    SpectralVectorField out(grid_);
    for (int c = 0; c < 3; ++c) {
        PhysicalField comp(grid_);
        comp.samples = f.components[c];
        out.components[c] = forward(comp);
    }
    return out;
}

namespace {

// Hermitian consistency on the kz = 0 and kz = N/2 planes: the stored
// entry at (-kx,-ky) must be the conjugate of the one at (kx,ky).
void check_self_conjugate_planes(const SpectralScalarField& f) {
    const Grid& g = f.grid;
    const int n = g.n;
    double maxc = 0.0;
    for (const auto& c : f.coeffs) maxc = std::max(maxc, std::abs(c));
    const double tol = kHermitianTolerance * std::max(maxc, 1e-300);
    for (int k : {0, n / 2}) {
        for (int i = 0; i < n; ++i) {
            const int im = (n - i) % n;
            for (int j = 0; j < n; ++j) {
                const int jm = (n - j) % n;
                const Complex a = f.at(i, j, k);
                const Complex b = f.at(im, jm, k);
                if (std::abs(a - std::conj(b)) > tol)
                    throw InvariantViolation("inverse_transform: Hermitian symmetry broken on self-conjugate plane");
            }
        }
    }
    if (std::abs(f.coeffs[0]) > tol)
        throw InvariantViolation("inverse_transform: zero mode is not zero");
}

} // namespace

void SpectralTransform::inverse_unchecked(const SpectralScalarField& f, double* out) const {
    // c2r destroys its input, so always run through the scratch buffer.
    auto* dst = reinterpret_cast<Complex*>(impl_->cplx);
    std::copy(f.coeffs.begin(), f.coeffs.end(), dst);
    fftw_execute(impl_->c2r);
    std::memcpy(out, impl_->real, sizeof(double) * grid_.physical_size());
}

void SpectralTransform::inverse_multiply_accumulate(const SpectralScalarField& f,
                                                    const double* factor, double* acc,
                                                    bool overwrite) const {
    auto* dst = reinterpret_cast<Complex*>(impl_->cplx);
    std::copy(f.coeffs.begin(), f.coeffs.end(), dst);
    fftw_execute(impl_->c2r);
    const double* r = impl_->real;
    const std::size_t m = grid_.physical_size();
    if (overwrite)
        for (std::size_t i = 0; i < m; ++i) acc[i] = factor[i] * r[i];
    else
        for (std::size_t i = 0; i < m; ++i) acc[i] += factor[i] * r[i];
}

PhysicalField SpectralTransform::inverse(const SpectralScalarField& f) const {
    if (!(f.grid == grid_))
        throw ConfigError("inverse_transform: field grid does not match transform grid");
    check_self_conjugate_planes(f);
    PhysicalField out(grid_);
    inverse_unchecked(f, out.samples.data());
    return out;
}

PhysicalVectorField SpectralTransform::inverse(const SpectralVectorField& f) const {
    PhysicalVectorField out(grid_);
    for (int c = 0; c < 3; ++c) {
        check_self_conjugate_planes(f.components[c]);
        inverse_unchecked(f.components[c], out.components[c].data());
    }
    return out;
}

} // namespace mlalpha
