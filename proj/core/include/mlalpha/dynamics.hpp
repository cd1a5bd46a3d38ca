#ifndef MLALPHA_DYNAMICS_HPP
#define MLALPHA_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "mlalpha/observation.hpp"
#include "mlalpha/operators.hpp"

namespace mlalpha {

/// Physical parameters of the truth system. The optional forcing is a
/// steady spectral field; it is mean-removed and Leray-projected on
/// construction.
struct ModelParams {
    double nu = 0.75;      // kinematic viscosity, > 0
    double alpha = 0.3;    // filter lengthscale, > 0
    double length = 1.0;   // box period, must match the grid
    std::optional<SpectralVectorField> forcing; // nullopt means f = 0

    static ModelParams make(double nu, double alpha, double length,
                            std::optional<SpectralVectorField> forcing = std::nullopt);

    double sup_forcing_sq() const; // sup_s |f(s)|^2 (steady: just |f|^2)
};

/// Parameters of the assimilated system: guessed lengthscale beta,
/// nudging coefficient eta, and the observation operator resolution.
struct AssimilationParams {
    double beta = 0.35;
    double eta = 1.5;      // >= 0; 0 disables nudging (control runs)
    double h = 0.043;
    InterpolantKind interpolant = InterpolantKind::Modal;

    static AssimilationParams make(double beta, double eta, double h,
                                   InterpolantKind kind = InterpolantKind::Modal);
};

/// Truth and assimilated filtered velocities at a common time.
struct TwinState {
    SpectralVectorField u; // truth
    SpectralVectorField w; // assimilated
    double t = 0.0;

    TwinState(SpectralVectorField u, SpectralVectorField w, double t);
};

/// B(v,u) = P[(v.grad)u] evaluated pseudo-spectrally with the grid's
/// dealias rule; the result is divergence-free and zero-mean.
SpectralVectorField bilinear_B(const SpectralTransform& transform,
                               const SpectralVectorField& v,
                               const SpectralVectorField& u);

/// du/dt for the truth system in filtered-velocity form:
///   du/dt = -nu A u - (I+alpha^2 A)^{-1} B(v,u) + (I+alpha^2 A)^{-1} f,
/// with v = (I+alpha^2 A) u.
SpectralVectorField truth_rhs(const SpectralTransform& transform,
                              const SpectralVectorField& u, const ModelParams& p);

/// dw/dt for the assimilated system:
///   dw/dt = -nu A w - (I+beta^2 A)^{-1} B(z,w) + (I+beta^2 A)^{-1} f
///           - eta P(I_h w - I_h u),
/// with z = (I+beta^2 A) w. u_obs_interp is the precomputed P I_h(u).
SpectralVectorField cda_rhs(const SpectralTransform& transform,
                            const SpectralVectorField& w,
                            const SpectralVectorField& u_obs_interp,
                            const ModelParams& p, const AssimilationParams& a);

/// Explicit (non-diffusive) part of the right-hand sides; the stepper
/// integrates the -nu A term exactly and adds these.
SpectralVectorField truth_nonstiff(const SpectralTransform& transform,
                                   const SpectralVectorField& u, const ModelParams& p);
SpectralVectorField cda_nonstiff(const SpectralTransform& transform,
                                 const SpectralVectorField& w,
                                 const SpectralVectorField& u_obs_interp,
                                 const ModelParams& p, const AssimilationParams& a,
                                 bool include_nudging);

/// Raw collocation samples of the benchmark initial data on [0,1]^3:
/// truth components 0.05 sin(2 pi x z), 0.05 sin(2 pi x y),
/// 0.05 sin(2 pi y z); assimilated components 0.05 sin(pi x)cos(pi y)
/// and cyclic rotations.
PhysicalVectorField sample_truth_initial(const Grid& grid);
PhysicalVectorField sample_assimilated_initial(const Grid& grid);

/// Truth samples plus uniform per-point noise 0.02*X - 0.01, X ~ U[0,1],
/// deterministic per seed.
PhysicalVectorField sample_truth_initial_random(const Grid& grid, std::uint64_t seed);

/// Record of the mean-removal / projection applied to initial data.
struct InitialConditions {
    SpectralVectorField u0;
    SpectralVectorField w0;
    double u0_l2_sq_pre = 0.0;  // |u0|^2 before projection (after mean removal)
    double u0_l2_sq_post = 0.0; // |u0|^2 after projection
    double w0_l2_sq_pre = 0.0;
    double w0_l2_sq_post = 0.0;
};

/// Deterministic benchmark pair: sample, remove the mean, Leray-project.
InitialConditions initial_conditions_deterministic(const SpectralTransform& transform);

/// Same with the noisy truth field; the assimilated side stays smooth.
InitialConditions initial_conditions_random(const SpectralTransform& transform,
                                            std::uint64_t seed);

/// Single-mode divergence-free forcing helper (steady), unit-tested as a
/// nonzero-f path for the a-priori bounds.
SpectralVectorField make_single_mode_forcing(const Grid& grid, int kx, int ky, int kz,
                                             double amplitude);

} // namespace mlalpha

#endif
