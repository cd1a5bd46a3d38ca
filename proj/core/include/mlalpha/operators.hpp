#ifndef MLALPHA_OPERATORS_HPP
#define MLALPHA_OPERATORS_HPP

#include "mlalpha/fft.hpp"

namespace mlalpha {

// ---------------------------------------------------------------------------
// Diagonal operators. All act coefficient-wise in Fourier space and
// preserve Hermitian symmetry and the zero mean.
// ---------------------------------------------------------------------------

/// Stokes operator A: multiply each coefficient by 4*pi^2|K|^2/L^2.
SpectralVectorField stokes_apply(const SpectralVectorField& f);

/// Helmholtz-Leray projection onto divergence-free fields:
/// u_hat_K -> u_hat_K - K (K . u_hat_K)/|K|^2. Idempotent; annihilates
/// gradient modes; tags the result divergence_free.
SpectralVectorField leray_project(const SpectralVectorField& f);

/// (I + alpha^2 A) u, the Helmholtz filter relating the rough velocity to
/// the smooth one.
SpectralVectorField helmholtz_filter_apply(const SpectralVectorField& f, double alpha);

/// (I + alpha^2 A)^{-1} u: multiply by L^2/(L^2 + 4 alpha^2 pi^2 |K|^2).
/// Norm contraction for every alpha >= 0; exact inverse of
/// helmholtz_filter_apply.
SpectralVectorField helmholtz_filter_inverse(const SpectralVectorField& f, double alpha);

/// Spectral derivative d/dx_axis (axis in {0,1,2}): multiply by
/// 2 pi i K_axis / L. Modes with |K_axis| = N/2 are zeroed, as an odd
/// derivative has no symmetric representative there.
SpectralScalarField derivative(const SpectralScalarField& f, int axis);
void derivative_into(const SpectralScalarField& f, int axis, SpectralScalarField& out);

/// In-place diagonal kernels for the integration hot path; `scale`
/// multiplies the symbol (e.g. -1 to fold a sign flip into the pass).
void helmholtz_filter_apply_inplace(SpectralVectorField& f, double alpha,
                                    double scale = 1.0);
void helmholtz_filter_inverse_inplace(SpectralVectorField& f, double alpha,
                                      double scale = 1.0);
void leray_project_inplace(SpectralVectorField& f);

/// Zero every mode with any |K_i| > dealias_fraction * N/2 (and the mean).
void apply_dealias_mask(SpectralScalarField& f);
void apply_dealias_mask(SpectralVectorField& f);

/// Spectral coefficients of the pointwise product a*b, truncated by the
/// grid's dealias rule and mean-removed.
SpectralScalarField dealiased_product(const SpectralTransform& transform,
                                      const PhysicalField& a, const PhysicalField& b);

// ---------------------------------------------------------------------------
// Parseval norms: |u|^2 = L^3 sum |u_hat|^2,  ||u||^2 = L^3 sum lam_K |u_hat|^2,
// |Au|^2 = L^3 sum lam_K^2 |u_hat|^2.
// ---------------------------------------------------------------------------

double norm_L2_sq(const SpectralScalarField& f);
double norm_L2_sq(const SpectralVectorField& f);
double norm_H1_sq(const SpectralVectorField& f);
double norm_A_sq(const SpectralVectorField& f);

inline double norm_L2(const SpectralVectorField& f) { return std::sqrt(norm_L2_sq(f)); }
inline double norm_H1(const SpectralVectorField& f) { return std::sqrt(norm_H1_sq(f)); }
inline double norm_A(const SpectralVectorField& f) { return std::sqrt(norm_A_sq(f)); }

/// Real L2 inner product (a, b) = L^3 sum Re(a_hat conj(b_hat)).
double inner_product_L2(const SpectralVectorField& a, const SpectralVectorField& b);

/// |f|^2 + weight * ||f||^2 evaluated against an exact power-of-two
/// scaling 2^exponent, so that ratios of combined norms stay meaningful
/// long after the plain squared sums have underflowed to zero.
/// value() reproduces the plain double (with honest underflow).
struct ScaledCombinedNorm {
    int exponent = 0;        // scale applied to coefficients was 2^-exponent
    double scaled_sum = 0.0; // sum of weighted squared scaled coefficients
    bool zero = true;        // true when the field is identically zero

    double value() const;
    /// this / other, computed before squaring can underflow.
    double ratio(const ScaledCombinedNorm& other) const;
};

ScaledCombinedNorm combined_norm_scaled(const SpectralVectorField& f, double weight);

/// Largest coefficient magnitude over all components (the scaling pivot).
double max_coefficient(const SpectralVectorField& f);

/// Largest divergence residual |K . u_hat_K| relative to the largest
/// coefficient magnitude; 0 for the zero field.
double divergence_residual(const SpectralVectorField& f);

/// Debug validation: zero mean and Hermitian symmetry on the
/// self-conjugate planes. Throws InvariantViolation. Compiled out of the
/// hot path; call sites guard with NDEBUG where appropriate.
void check_field_invariants(const SpectralScalarField& f);
void check_field_invariants(const SpectralVectorField& f);

} // namespace mlalpha

#endif
