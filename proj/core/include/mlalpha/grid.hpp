#ifndef MLALPHA_GRID_HPP
#define MLALPHA_GRID_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "mlalpha/errors.hpp"

namespace mlalpha {

/// Uniform periodic box [0,L]^3 sampled with N collocation points per
/// dimension. Spectral data lives on the half-spectrum r2c layout
/// (kx,ky full range, kz in [0, N/2]); the other half is implied by
/// Hermitian symmetry of real fields.
struct Grid {
    double length = 1.0;            // box period L
    int n = 32;                     // modes per dimension, even, >= 4
    double dealias_fraction = 2.0 / 3.0;

    static Grid make(double length, int n, double dealias_fraction = 2.0 / 3.0) {
        if (!(length > 0.0))
            throw ConfigError("grid: box period must be positive");
        if (n < 4 || n % 2 != 0)
            throw ConfigError("grid: N must be even and at least 4");
        if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
            throw ConfigError("grid: dealias fraction must lie in (0,1]");
        return Grid{length, n, dealias_fraction};
    }

    bool operator==(const Grid&) const = default;

    int nyquist() const { return n / 2; }

    /// Signed wavenumber for a storage index along a full (x or y) axis:
    /// indices 0..N/2 map to 0..N/2, indices N/2+1..N-1 map to negative.
    int wavenumber(int idx) const { return idx <= n / 2 ? idx : idx - n; }

    /// Largest |K_i| kept by the dealias rule: modes with any component
    /// strictly above dealias_fraction * N/2 are zeroed in products.
    int dealias_cutoff() const {
        return static_cast<int>(std::floor(dealias_fraction * (n / 2.0) + 1e-12));
    }

    std::size_t physical_size() const {
        return static_cast<std::size_t>(n) * n * n;
    }
    std::size_t spectral_size() const {
        return static_cast<std::size_t>(n) * n * (n / 2 + 1);
    }

    std::size_t spectral_index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * (n / 2 + 1) + k;
    }
    std::size_t physical_index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }

    /// Collocation coordinate of grid index j in [0, L).
    double coordinate(int j) const { return j * length / n; }

    /// First Stokes eigenvalue 4*pi^2/L^2 (Poincare constant).
    double lambda1() const {
        return 4.0 * M_PI * M_PI / (length * length);
    }

    /// Stokes eigenvalue 4*pi^2|K|^2/L^2 for integer wavevector K.
    double eigenvalue(int kx, int ky, int kz) const {
        const double k2 = static_cast<double>(kx) * kx +
                          static_cast<double>(ky) * ky +
                          static_cast<double>(kz) * kz;
        return 4.0 * M_PI * M_PI * k2 / (length * length);
    }
};

} // namespace mlalpha

#endif
