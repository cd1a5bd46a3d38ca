#ifndef MLALPHA_ORACLES_HPP
#define MLALPHA_ORACLES_HPP

#include <cstdint>
#include <string>

#include "mlalpha/dynamics.hpp"

namespace mlalpha {

/// Direct convolution-sum evaluation of P[(v.grad)u], truncated by the
/// grid's dealias rule. Quadratic in the mode count; independent of the
/// transform-based pipeline so it can serve as its oracle.
SpectralVectorField brute_force_bilinear(const SpectralVectorField& v,
                                         const SpectralVectorField& u);

struct OracleResult {
    std::string name;
    bool pass = false;
    double worst = 0.0; // suite-specific figure of merit
    std::string detail;
};

/// Compare the pseudo-spectral bilinear term against the convolution sum
/// on an 8^3 grid with random band-limited divergence-free inputs.
OracleResult bilinear_brute_force_oracle(std::uint64_t seed, int pairs = 5,
                                         double tolerance = 1e-12);

/// Integrate xi' + C xi = beta(t) with a dense fourth-order method and
/// confirm the windowed-Gronwall envelope dominates the solution, for the
/// worked beta = 1 case and random (C, M, T, xi0) tuples.
OracleResult gronwall_ode_oracle(std::uint64_t seed, int tuples = 20);

/// Approximation-property verification for both interpolant kinds on
/// random smooth fields (N = 32, h = 0.043, c1 = sqrt(32), c2 = 2).
OracleResult interpolant_property_oracle(int trials = 100, std::uint64_t seed = 7);

} // namespace mlalpha

#endif
