#ifndef MLALPHA_FIELD_HPP
#define MLALPHA_FIELD_HPP

#include <array>
#include <complex>
#include <vector>

#include "mlalpha/grid.hpp"

namespace mlalpha {

using Complex = std::complex<double>;

/// Real collocation samples of one scalar component, row-major [N][N][N].
struct PhysicalField {
    Grid grid;
    std::vector<double> samples;

    explicit PhysicalField(const Grid& g)
        : grid(g), samples(g.physical_size(), 0.0) {}

    double& at(int i, int j, int k) { return samples[grid.physical_index(i, j, k)]; }
    double at(int i, int j, int k) const { return samples[grid.physical_index(i, j, k)]; }
};

struct PhysicalVectorField {
    Grid grid;
    std::array<std::vector<double>, 3> components;

    explicit PhysicalVectorField(const Grid& g) : grid(g) {
        for (auto& c : components) c.assign(g.physical_size(), 0.0);
    }
};

/// Fourier coefficients of a zero-mean real scalar field in r2c storage.
/// Hermitian symmetry for kz in (0, N/2) is implied by the layout; on the
/// self-conjugate planes kz = 0 and kz = N/2 it is an invariant that
/// coeff(-kx,-ky,kz) == conj(coeff(kx,ky,kz)).
struct SpectralScalarField {
    Grid grid;
    std::vector<Complex> coeffs;

    explicit SpectralScalarField(const Grid& g)
        : grid(g), coeffs(g.spectral_size(), Complex{0.0, 0.0}) {}

    Complex& at(int i, int j, int k) { return coeffs[grid.spectral_index(i, j, k)]; }
    Complex at(int i, int j, int k) const { return coeffs[grid.spectral_index(i, j, k)]; }

    /// Write the coefficient of mode K = (kx,ky,kz) and keep the stored
    /// half-spectrum consistent. Negative kz is folded onto the conjugate
    /// entry; on the self-conjugate kz planes the mirrored (-kx,-ky)
    /// entry is updated as well.
    void set_mode(int kx, int ky, int kz, Complex value);

    /// Coefficient of mode K, reading through the Hermitian fold.
    Complex mode(int kx, int ky, int kz) const;
};

struct SpectralVectorField {
    Grid grid;
    std::array<SpectralScalarField, 3> components;
    bool divergence_free = false;

    explicit SpectralVectorField(const Grid& g)
        : grid(g), components{SpectralScalarField(g), SpectralScalarField(g),
                              SpectralScalarField(g)} {}

    SpectralScalarField& operator[](int c) { return components[c]; }
    const SpectralScalarField& operator[](int c) const { return components[c]; }

    void set_mode(int kx, int ky, int kz, const std::array<Complex, 3>& value) {
        for (int c = 0; c < 3; ++c) components[c].set_mode(kx, ky, kz, value[c]);
    }
};

/// Visit every stored mode; fn(i, j, k, kx, ky, kz, parseval_weight).
/// The weight is 2 for interior kz (each stored entry represents a
/// conjugate pair) and 1 on the kz = 0 and kz = N/2 planes.
template <typename Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
    const int n = g.n;
    const int nzh = n / 2;
    for (int i = 0; i < n; ++i) {
        const int kx = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int ky = g.wavenumber(j);
            for (int k = 0; k <= nzh; ++k) {
                const double w = (k == 0 || k == nzh) ? 1.0 : 2.0;
                fn(i, j, k, kx, ky, k, w);
            }
        }
    }
}

} // namespace mlalpha

#endif
