#include "mlalpha/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlalpha/errors.hpp"

namespace mlalpha {

// --------------------------------------------------------------------------
// Field mode access through the Hermitian fold
// --------------------------------------------------------------------------

void SpectralScalarField::set_mode(int kx, int ky, int kz, Complex value) {
    const int n = grid.n;
    if (kz < 0 || (kz == 0 && (kx < 0 || (kx == 0 && ky < 0)))) {
        // canonical representative lives at -K
        kx = -kx; ky = -ky; kz = -kz; value = std::conj(value);
    }
    const int i = (kx % n + n) % n;
    const int j = (ky % n + n) % n;
    at(i, j, kz) = value;
    if (kz == 0 || kz == n / 2) {
        const int im = (n - i) % n;
        const int jm = (n - j) % n;
        at(im, jm, kz) = std::conj(value);
    }
}

Complex SpectralScalarField::mode(int kx, int ky, int kz) const {
    const int n = grid.n;
    bool conjugate = false;
    if (kz < 0) { kx = -kx; ky = -ky; kz = -kz; conjugate = true; }
    const int i = (kx % n + n) % n;
    const int j = (ky % n + n) % n;
    const Complex v = at(i, j, kz);
    return conjugate ? std::conj(v) : v;
}

// --------------------------------------------------------------------------
// Diagonal operators
// --------------------------------------------------------------------------

namespace {

template <typename Fn>
SpectralVectorField map_modes(const SpectralVectorField& f, Fn&& multiplier) {
    SpectralVectorField out(f.grid);
    out.divergence_free = f.divergence_free;
    for_each_mode(f.grid, [&](int i, int j, int k, int kx, int ky, int kz, double) {
        const double m = multiplier(kx, ky, kz);
        const std::size_t idx = f.grid.spectral_index(i, j, k);
        for (int c = 0; c < 3; ++c)
            out.components[c].coeffs[idx] = f.components[c].coeffs[idx] * m;
    });
    return out;
}

} // namespace

SpectralVectorField stokes_apply(const SpectralVectorField& f) {
    const Grid& g = f.grid;
    return map_modes(f, [&](int kx, int ky, int kz) { return g.eigenvalue(kx, ky, kz); });
}

namespace {

void filter_inplace(SpectralVectorField& f, double alpha, double scale, bool inverse) {
    if (alpha < 0.0) throw ConfigError("helmholtz filter: alpha must be nonnegative");
    const Grid& g = f.grid;
    const double a2 = alpha * alpha;
    for_each_mode(g, [&](int i, int j, int k, int kx, int ky, int kz, double) {
        const double sym = 1.0 + a2 * g.eigenvalue(kx, ky, kz);
        const double m = scale * (inverse ? 1.0 / sym : sym);
        const std::size_t idx = g.spectral_index(i, j, k);
        for (int c = 0; c < 3; ++c) f.components[c].coeffs[idx] *= m;
    });
}

} // namespace

void helmholtz_filter_apply_inplace(SpectralVectorField& f, double alpha, double scale) {
    filter_inplace(f, alpha, scale, false);
}

void helmholtz_filter_inverse_inplace(SpectralVectorField& f, double alpha, double scale) {
    filter_inplace(f, alpha, scale, true);
}

SpectralVectorField helmholtz_filter_apply(const SpectralVectorField& f, double alpha) {
    SpectralVectorField out = f;
    helmholtz_filter_apply_inplace(out, alpha);
    return out;
}

SpectralVectorField helmholtz_filter_inverse(const SpectralVectorField& f, double alpha) {
    SpectralVectorField out = f;
    helmholtz_filter_inverse_inplace(out, alpha);
    return out;
}

void leray_project_inplace(SpectralVectorField& f) {
    const int nyq = f.grid.nyquist();
    for_each_mode(f.grid, [&](int i, int j, int k, int kx, int ky, int kz, double) {
        const double k2 = static_cast<double>(kx) * kx +
                          static_cast<double>(ky) * ky +
                          static_cast<double>(kz) * kz;
        const std::size_t idx = f.grid.spectral_index(i, j, k);
        // K (K . u)/|K|^2 is sign-ambiguous when a component sits at the
        // Nyquist index, so those modes are removed with the gradients
        if (k2 == 0.0 || std::abs(kx) == nyq || std::abs(ky) == nyq ||
            std::abs(kz) == nyq) {
            for (int c = 0; c < 3; ++c) f.components[c].coeffs[idx] = Complex{0.0, 0.0};
            return;
        }
        const Complex dot = static_cast<double>(kx) * f.components[0].coeffs[idx] +
                            static_cast<double>(ky) * f.components[1].coeffs[idx] +
                            static_cast<double>(kz) * f.components[2].coeffs[idx];
        const Complex m = dot / k2;
        f.components[0].coeffs[idx] -= static_cast<double>(kx) * m;
        f.components[1].coeffs[idx] -= static_cast<double>(ky) * m;
        f.components[2].coeffs[idx] -= static_cast<double>(kz) * m;
    });
    f.divergence_free = true;
}

SpectralVectorField leray_project(const SpectralVectorField& f) {
    SpectralVectorField out = f;
    leray_project_inplace(out);
    return out;
}

void derivative_into(const SpectralScalarField& f, int axis, SpectralScalarField& out) {
    if (axis < 0 || axis > 2) throw ConfigError("derivative: axis must be 0, 1 or 2");
    const double two_pi_over_l = 2.0 * M_PI / f.grid.length;
    const int nyq = f.grid.nyquist();
    for_each_mode(f.grid, [&](int i, int j, int k, int kx, int ky, int kz, double) {
        const int kaxis = axis == 0 ? kx : axis == 1 ? ky : kz;
        const std::size_t idx = f.grid.spectral_index(i, j, k);
        if (std::abs(kaxis) == nyq) {
            out.coeffs[idx] = Complex{0.0, 0.0};
            return;
        }
        out.coeffs[idx] = Complex{0.0, two_pi_over_l * kaxis} * f.coeffs[idx];
    });
}

SpectralScalarField derivative(const SpectralScalarField& f, int axis) {
    SpectralScalarField out(f.grid);
    derivative_into(f, axis, out);
    return out;
}

void apply_dealias_mask(SpectralScalarField& f) {
    const int cutoff = f.grid.dealias_cutoff();
    for_each_mode(f.grid, [&](int i, int j, int k, int kx, int ky, int kz, double) {
        if (std::abs(kx) > cutoff || std::abs(ky) > cutoff || std::abs(kz) > cutoff)
            f.coeffs[f.grid.spectral_index(i, j, k)] = Complex{0.0, 0.0};
    });
    f.coeffs[0] = Complex{0.0, 0.0};
}

void apply_dealias_mask(SpectralVectorField& f) {
    for (int c = 0; c < 3; ++c) apply_dealias_mask(f.components[c]);
}

SpectralScalarField dealiased_product(const SpectralTransform& transform,
                                      const PhysicalField& a, const PhysicalField& b) {
    if (!(a.grid == b.grid) || !(a.grid == transform.grid()))
        throw ConfigError("dealiased_product: fields live on different grids");
    PhysicalField prod(a.grid);
    const std::size_t m = a.samples.size();
    for (std::size_t i = 0; i < m; ++i) prod.samples[i] = a.samples[i] * b.samples[i];
    SpectralScalarField out = transform.forward(prod);
    apply_dealias_mask(out);
    return out;
}

// --------------------------------------------------------------------------
// Norms
// --------------------------------------------------------------------------

namespace {

double norm2(const Complex& c) {
    return c.real() * c.real() + c.imag() * c.imag();
}

} // namespace

double norm_L2_sq(const SpectralScalarField& f) {
    const double l3 = std::pow(f.grid.length, 3);
    double s = 0.0;
    for_each_mode(f.grid, [&](int i, int j, int k, int, int, int, double w) {
        s += w * norm2(f.coeffs[f.grid.spectral_index(i, j, k)]);
    });
    return l3 * s;
}

double norm_L2_sq(const SpectralVectorField& f) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) s += norm_L2_sq(f.components[c]);
    return s;
}

double norm_H1_sq(const SpectralVectorField& f) {
    const Grid& g = f.grid;
    const double l3 = std::pow(g.length, 3);
    double s = 0.0;
    for_each_mode(g, [&](int i, int j, int k, int kx, int ky, int kz, double w) {
        const double lam = g.eigenvalue(kx, ky, kz);
        const std::size_t idx = g.spectral_index(i, j, k);
        double m = 0.0;
        for (int c = 0; c < 3; ++c) m += norm2(f.components[c].coeffs[idx]);
        s += w * lam * m;
    });
    return l3 * s;
}

double norm_A_sq(const SpectralVectorField& f) {
    const Grid& g = f.grid;
    const double l3 = std::pow(g.length, 3);
    double s = 0.0;
    for_each_mode(g, [&](int i, int j, int k, int kx, int ky, int kz, double w) {
        const double lam = g.eigenvalue(kx, ky, kz);
        const std::size_t idx = g.spectral_index(i, j, k);
        double m = 0.0;
        for (int c = 0; c < 3; ++c) m += norm2(f.components[c].coeffs[idx]);
        s += w * lam * lam * m;
    });
    return l3 * s;
}

double inner_product_L2(const SpectralVectorField& a, const SpectralVectorField& b) {
    if (!(a.grid == b.grid)) throw ConfigError("inner_product: grid mismatch");
    const double l3 = std::pow(a.grid.length, 3);
    double s = 0.0;
    for_each_mode(a.grid, [&](int i, int j, int k, int, int, int, double w) {
        const std::size_t idx = a.grid.spectral_index(i, j, k);
        for (int c = 0; c < 3; ++c) {
            const Complex& x = a.components[c].coeffs[idx];
            const Complex& y = b.components[c].coeffs[idx];
            s += w * (x.real() * y.real() + x.imag() * y.imag());
        }
    });
    return l3 * s;
}

double max_coefficient(const SpectralVectorField& f) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c)
        for (const auto& x : f.components[c].coeffs)
            m = std::max(m, std::max(std::abs(x.real()), std::abs(x.imag())));
    return m;
}

double ScaledCombinedNorm::value() const {
    if (zero) return 0.0;
    return std::ldexp(std::ldexp(scaled_sum, exponent), exponent);
}

double ScaledCombinedNorm::ratio(const ScaledCombinedNorm& other) const {
    if (other.zero) return zero ? 0.0 : std::numeric_limits<double>::infinity();
    if (zero) return 0.0;
    return std::ldexp(scaled_sum / other.scaled_sum, 2 * (exponent - other.exponent));
}

ScaledCombinedNorm combined_norm_scaled(const SpectralVectorField& f, double weight) {
    const Grid& g = f.grid;
    ScaledCombinedNorm out;
    const double pivot = max_coefficient(f);
    if (pivot == 0.0) return out;
    out.zero = false;
    out.exponent = std::ilogb(pivot) + 1;
    const double l3 = std::pow(g.length, 3);
    double s = 0.0;
    for_each_mode(g, [&](int i, int j, int k, int kx, int ky, int kz, double w) {
        const double lam = g.eigenvalue(kx, ky, kz);
        const std::size_t idx = g.spectral_index(i, j, k);
        double m = 0.0;
        for (int c = 0; c < 3; ++c) {
            const Complex& x = f.components[c].coeffs[idx];
            const double re = std::ldexp(x.real(), -out.exponent);
            const double im = std::ldexp(x.imag(), -out.exponent);
            m += re * re + im * im;
        }
        s += w * (1.0 + weight * lam) * m;
    });
    out.scaled_sum = l3 * s;
    return out;
}

double divergence_residual(const SpectralVectorField& f) {
    const double pivot = max_coefficient(f);
    if (pivot == 0.0) return 0.0;
    const int e = std::ilogb(pivot) + 1;
    double worst = 0.0;
    for_each_mode(f.grid, [&](int i, int j, int k, int kx, int ky, int kz, double) {
        const std::size_t idx = f.grid.spectral_index(i, j, k);
        const Complex dot = static_cast<double>(kx) * f.components[0].coeffs[idx] +
                            static_cast<double>(ky) * f.components[1].coeffs[idx] +
                            static_cast<double>(kz) * f.components[2].coeffs[idx];
        const double knorm = std::sqrt(static_cast<double>(kx) * kx +
                                       static_cast<double>(ky) * ky +
                                       static_cast<double>(kz) * kz);
        if (knorm == 0.0) return;
        const double r = std::abs(Complex{std::ldexp(dot.real(), -e), std::ldexp(dot.imag(), -e)}) / knorm;
        worst = std::max(worst, r);
    });
    return worst;
}

void check_field_invariants(const SpectralScalarField& f) {
    const Grid& g = f.grid;
    const int n = g.n;
    double maxc = 0.0;
    for (const auto& c : f.coeffs) maxc = std::max(maxc, std::abs(c));
    const double tol = 1e-12 * std::max(maxc, 1e-300);
    if (std::abs(f.coeffs[0]) > tol)
        throw InvariantViolation("field invariant: nonzero mean");
    for (int k : {0, n / 2})
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Complex a = f.at(i, j, k);
                const Complex b = f.at((n - i) % n, (n - j) % n, k);
                if (std::abs(a - std::conj(b)) > tol)
                    throw InvariantViolation("field invariant: Hermitian symmetry broken");
            }
}

void check_field_invariants(const SpectralVectorField& f) {
    for (int c = 0; c < 3; ++c) check_field_invariants(f.components[c]);
}

} // namespace mlalpha
