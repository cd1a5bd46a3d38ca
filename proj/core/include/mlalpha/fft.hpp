#ifndef MLALPHA_FFT_HPP
#define MLALPHA_FFT_HPP

#include <memory>

#include "mlalpha/field.hpp"

namespace mlalpha {

/// Owns the FFTW plans and scratch buffers for one grid.
///
/// forward() returns coefficients normalized so that
///   u(x_j) = sum_K u_hat_K exp(2 pi i K.x_j / L),
/// i.e. the raw r2c output divided by N^3; the zero mode is forced to 0.
/// inverse() evaluates that sum back on the collocation points.
///
/// All operations on fields are pure; a transform instance must not be
/// used concurrently because the scratch buffers are shared between
/// calls. Plans are created with FFTW_ESTIMATE so that results are
/// reproducible run to run.
class SpectralTransform {
public:
    explicit SpectralTransform(const Grid& grid);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    const Grid& grid() const { return grid_; }

    SpectralScalarField forward(const PhysicalField& f) const;
    SpectralVectorField forward(const PhysicalVectorField& f) const;

    /// forward() into a preallocated field, no intermediate allocations.
    void forward_into(const double* samples, SpectralScalarField& out) const;

    PhysicalField inverse(const SpectralScalarField& f) const;
    PhysicalVectorField inverse(const SpectralVectorField& f) const;

    /// inverse() without the Hermitian-plane consistency check, for inner
    /// loops that only ever see coefficients produced by this class.
    void inverse_unchecked(const SpectralScalarField& f, double* out) const;

    /// acc[m] = (or +=) factor[m] * inverse(f)[m], fused over the scratch
    /// buffer; the pointwise-product workhorse of the advection term.
    void inverse_multiply_accumulate(const SpectralScalarField& f, const double* factor,
                                     double* acc, bool overwrite) const;

private:
    struct Impl;
    Grid grid_;
    std::unique_ptr<Impl> impl_;
};

/// Relative tolerance used when validating Hermitian symmetry on the
/// self-conjugate kz planes before an inverse transform.
inline constexpr double kHermitianTolerance = 1e-12;

} // namespace mlalpha

#endif
