#include "mlalpha/observation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mlalpha/errors.hpp"

namespace mlalpha {

std::string to_string(InterpolantKind kind) {
    return kind == InterpolantKind::Modal ? "modal" : "volume-average";
}

InterpolantKind interpolant_kind_from_string(const std::string& s) {
    if (s == "modal") return InterpolantKind::Modal;
    if (s == "volume-average") return InterpolantKind::VolumeAverage;
    throw ConfigError("unknown interpolant kind '" + s + "' (expected modal or volume-average)");
}

InterpolantSpec InterpolantSpec::make(InterpolantKind kind, double h, double length,
                                      double c1, double c2) {
    if (!(h > 0.0)) throw ConfigError("interpolant: h must be positive");
    if (h > length) throw ConfigError("interpolant: resolution h exceeds the box period");
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw ConfigError("interpolant: approximation constants must be positive");
    return InterpolantSpec{kind, h, c1, c2};
}

int InterpolantSpec::modal_cutoff(double length) const {
    return static_cast<int>(std::floor(length / h));
}

int InterpolantSpec::cells_per_dim(double length) const {
    return std::max(1, static_cast<int>(std::lround(length / h)));
}

namespace {

SpectralVectorField apply_modal(const SpectralVectorField& field, int cutoff) {
    SpectralVectorField out = field;
    for_each_mode(field.grid, [&](int i, int j, int k, int kx, int ky, int kz, double) {
        if (std::abs(kx) > cutoff || std::abs(ky) > cutoff || std::abs(kz) > cutoff) {
            const std::size_t idx = field.grid.spectral_index(i, j, k);
            for (int c = 0; c < 3; ++c)
                out.components[c].coeffs[idx] = Complex{0.0, 0.0};
        }
    });
    return out;
}

SpectralVectorField apply_volume_average(const SpectralTransform& transform,
                                         const SpectralVectorField& field,
                                         int cells) {
    const Grid& g = field.grid;
    const int n = g.n;
    PhysicalVectorField phys = transform.inverse(field);
    PhysicalVectorField averaged(g);

    // cell index of grid line j: floor(j*cells/n); cells need not divide n
    std::vector<int> cell_of(n);
    for (int j = 0; j < n; ++j) cell_of[j] = static_cast<int>(static_cast<long>(j) * cells / n);

    std::vector<double> sums(static_cast<std::size_t>(cells) * cells * cells);
    std::vector<double> counts(sums.size());
    for (int c = 0; c < 3; ++c) {
        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const std::size_t cell =
                        (static_cast<std::size_t>(cell_of[i]) * cells + cell_of[j]) * cells + cell_of[k];
                    sums[cell] += phys.components[c][g.physical_index(i, j, k)];
                    counts[cell] += 1.0;
                }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const std::size_t cell =
                        (static_cast<std::size_t>(cell_of[i]) * cells + cell_of[j]) * cells + cell_of[k];
                    averaged.components[c][g.physical_index(i, j, k)] = sums[cell] / counts[cell];
                }
    }
    // forward() removes the global mean
    SpectralVectorField out = transform.forward(averaged);
    out.divergence_free = false;
    return out;
}

} // namespace

SpectralVectorField apply_interpolant(const SpectralTransform& transform,
                                      const SpectralVectorField& field,
                                      const InterpolantSpec& spec) {
    const double length = field.grid.length;
    if (spec.h > length)
        throw ConfigError("apply_interpolant: resolution h exceeds the box period");
    if (spec.kind == InterpolantKind::Modal)
        return apply_modal(field, spec.modal_cutoff(length));
    return apply_volume_average(transform, field, spec.cells_per_dim(length));
}

SpectralVectorField random_smooth_field(const Grid& grid, std::uint64_t seed,
                                        double spectral_decay) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return (rng() >> 11) * 0x1.0p-53; }; // [0,1)
    SpectralVectorField f(grid);
    const int nyq = grid.nyquist();
    // populate canonical half-spectrum modes; set_mode maintains the fold
    for (int kx = -nyq + 1; kx <= nyq; ++kx)
        for (int ky = -nyq + 1; ky <= nyq; ++ky)
            for (int kz = 0; kz <= nyq; ++kz) {
                if (kz == 0 && (kx < 0 || (kx == 0 && ky < 0))) continue;
                if (kx == 0 && ky == 0 && kz == 0) continue;
                const double kmag = std::sqrt(static_cast<double>(kx) * kx +
                                              static_cast<double>(ky) * ky +
                                              static_cast<double>(kz) * kz);
                const double amp = std::pow(kmag, -spectral_decay);
                for (int c = 0; c < 3; ++c) {
                    const double re = 2.0 * unit() - 1.0;
                    const double im = 2.0 * unit() - 1.0;
                    f.components[c].set_mode(kx, ky, kz, amp * Complex{re, im});
                }
            }
    return leray_project(f);
}

ApproximationReport verify_approximation_property(const SpectralTransform& transform,
                                                  const InterpolantSpec& spec,
                                                  int trials, std::uint64_t seed) {
    if (trials < 1) throw ConfigError("verify_approximation_property: trials must be >= 1");
    const Grid& g = transform.grid();
    ApproximationReport report;
    report.trials = trials;
    report.pass = true;
    for (int t = 0; t < trials; ++t) {
        const SpectralVectorField gfield = random_smooth_field(g, seed + static_cast<std::uint64_t>(t));
        const SpectralVectorField ih = apply_interpolant(transform, gfield, spec);
        SpectralVectorField diff = ih;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < diff.components[c].coeffs.size(); ++i)
                diff.components[c].coeffs[i] -= gfield.components[c].coeffs[i];
        const double lhs = norm_L2_sq(diff);
        const double rhs = spec.c1 * spec.c1 * spec.h * spec.h * norm_H1_sq(gfield) +
                           spec.c2 * spec.c2 * std::pow(spec.h, 4) * norm_A_sq(gfield);
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        report.worst_ratio = std::max(report.worst_ratio, ratio);
        if (lhs > rhs) report.pass = false;
        const double bound = std::sqrt(norm_L2_sq(ih) / norm_L2_sq(gfield));
        report.boundedness_constant = std::max(report.boundedness_constant, bound);
    }
    return report;
}

} // namespace mlalpha
