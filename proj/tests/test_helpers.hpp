#ifndef MLALPHA_TEST_HELPERS_HPP
#define MLALPHA_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>

#include "mlalpha/dynamics.hpp"
#include "mlalpha/observation.hpp"
#include "mlalpha/operators.hpp"

namespace mlalpha::testing {

/// Random zero-mean divergence-free field confined to the dealias band,
/// so products evaluated pseudo-spectrally are alias-free.
inline SpectralVectorField random_divfree_band_limited(const Grid& g, std::uint64_t seed,
                                                       double decay = 1.5) {
    SpectralVectorField f = random_smooth_field(g, seed, decay);
    apply_dealias_mask(f);
    leray_project_inplace(f);
    return f;
}

inline double max_abs_difference(const SpectralVectorField& a,
                                 const SpectralVectorField& b) {
    double worst = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.components[c].coeffs.size(); ++i)
            worst = std::max(worst,
                             std::abs(a.components[c].coeffs[i] - b.components[c].coeffs[i]));
    return worst;
}

/// Direct convolution of two band-limited scalar spectra truncated to the
/// dealias mask: the quadratic-product oracle.
inline SpectralScalarField convolve_truncated(const SpectralScalarField& a,
                                              const SpectralScalarField& b) {
    const Grid& g = a.grid;
    const int m = g.dealias_cutoff();
    SpectralScalarField out(g);
    for (int kx = -m; kx <= m; ++kx)
        for (int ky = -m; ky <= m; ++ky)
            for (int kz = 0; kz <= m; ++kz) {
                if (kz == 0 && (kx < 0 || (kx == 0 && ky < 0))) continue;
                if (kx == 0 && ky == 0 && kz == 0) continue;
                Complex sum{0.0, 0.0};
                for (int px = -m; px <= m; ++px)
                    for (int py = -m; py <= m; ++py)
                        for (int pz = -m; pz <= m; ++pz) {
                            const int qx = kx - px, qy = ky - py, qz = kz - pz;
                            if (std::abs(qx) > m || std::abs(qy) > m || std::abs(qz) > m)
                                continue;
                            sum += a.mode(px, py, pz) * b.mode(qx, qy, qz);
                        }
                out.set_mode(kx, ky, kz, sum);
            }
    return out;
}

} // namespace mlalpha::testing

#endif
