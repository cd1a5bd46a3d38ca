#ifndef MLALPHA_OBSERVATION_HPP
#define MLALPHA_OBSERVATION_HPP

#include <cstdint>
#include <string>

#include "mlalpha/operators.hpp"

namespace mlalpha {

enum class InterpolantKind { Modal, VolumeAverage };

std::string to_string(InterpolantKind kind);
InterpolantKind interpolant_kind_from_string(const std::string& s);

/// Observation operator I_h at spatial resolution h, with the constants
/// of its approximation property
///   |I_h g - g|^2 <= c1^2 h^2 ||g||^2 + c2^2 h^4 |Ag|^2.
struct InterpolantSpec {
    InterpolantKind kind = InterpolantKind::Modal;
    double h = 0.043;
    double c1 = 5.656854249492381; // sqrt(32)
    double c2 = 2.0;

    static InterpolantSpec make(InterpolantKind kind, double h, double length,
                                double c1 = 5.656854249492381, double c2 = 2.0);

    /// Modal cutoff m = floor(L/h): the interpolant observes all modes
    /// with |K|_inf <= m.
    int modal_cutoff(double length) const;

    /// Cells per dimension for the volume-average kind, round(L/h).
    int cells_per_dim(double length) const;
};

/// Apply I_h. Modal kind: zero every mode with |K|_inf above the cutoff
/// (a low-pass projection, exactly idempotent). Volume-average kind:
/// average the collocation samples over disjoint cubes of side ~ h,
/// broadcast each cube mean, remove the global mean and transform back.
/// Linear in the field for both kinds.
SpectralVectorField apply_interpolant(const SpectralTransform& transform,
                                      const SpectralVectorField& field,
                                      const InterpolantSpec& spec);

struct ApproximationReport {
    int trials = 0;
    double worst_ratio = 0.0; // max over trials of lhs/rhs
    bool pass = false;
    double boundedness_constant = 0.0; // max |I_h g|/|g| observed
};

/// Empirical check of the approximation property on random smooth
/// zero-mean fields (spectrum ~ |K|^-4, seeded): verifies
/// |I_h g - g|^2 <= c1^2 h^2 ||g||^2 + c2^2 h^4 |Ag|^2 for every trial.
ApproximationReport verify_approximation_property(const SpectralTransform& transform,
                                                  const InterpolantSpec& spec,
                                                  int trials, std::uint64_t seed);

/// Random zero-mean divergence-free field with an algebraically decaying
/// spectrum; shared by the property verifier and the test oracles.
SpectralVectorField random_smooth_field(const Grid& grid, std::uint64_t seed,
                                        double spectral_decay = 4.0);

} // namespace mlalpha

#endif
