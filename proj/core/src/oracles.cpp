#include "mlalpha/oracles.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mlalpha/analysis.hpp"
#include "mlalpha/config.hpp"
#include "mlalpha/errors.hpp"

namespace mlalpha {

SpectralVectorField brute_force_bilinear(const SpectralVectorField& v,
                                         const SpectralVectorField& u) {
    if (!(v.grid == u.grid)) throw ConfigError("brute_force_bilinear: grid mismatch");
    const Grid& g = v.grid;
    const int cutoff = g.dealias_cutoff();
    const double two_pi_over_l = 2.0 * M_PI / g.length;

    SpectralVectorField out(g);
    // full convolution over band-limited inputs; output truncated to the
    // dealias mask and projected mode by mode
    for (int kx = -cutoff; kx <= cutoff; ++kx)
        for (int ky = -cutoff; ky <= cutoff; ++ky)
            for (int kz = 0; kz <= cutoff; ++kz) {
                if (kz == 0 && (kx < 0 || (kx == 0 && ky < 0))) continue;
                std::array<Complex, 3> b{};
                for (int px = -cutoff; px <= cutoff; ++px)
                    for (int py = -cutoff; py <= cutoff; ++py)
                        for (int pz = -cutoff; pz <= cutoff; ++pz) {
                            const int qx = kx - px, qy = ky - py, qz = kz - pz;
                            if (std::abs(qx) > cutoff || std::abs(qy) > cutoff ||
                                std::abs(qz) > cutoff)
                                continue;
                            const Complex vp[3] = {v.components[0].mode(px, py, pz),
                                                   v.components[1].mode(px, py, pz),
                                                   v.components[2].mode(px, py, pz)};
                            const Complex iq[3] = {Complex{0.0, two_pi_over_l * qx},
                                                   Complex{0.0, two_pi_over_l * qy},
                                                   Complex{0.0, two_pi_over_l * qz}};
                            for (int i = 0; i < 3; ++i) {
                                const Complex ui = u.components[i].mode(qx, qy, qz);
                                b[i] += (vp[0] * iq[0] + vp[1] * iq[1] + vp[2] * iq[2]) * ui;
                            }
                        }
                // Leray projection of this mode
                const double k2 = static_cast<double>(kx) * kx +
                                  static_cast<double>(ky) * ky +
                                  static_cast<double>(kz) * kz;
                if (k2 > 0.0) {
                    const Complex dot = static_cast<double>(kx) * b[0] +
                                        static_cast<double>(ky) * b[1] +
                                        static_cast<double>(kz) * b[2];
                    const Complex m = dot / k2;
                    b[0] -= static_cast<double>(kx) * m;
                    b[1] -= static_cast<double>(ky) * m;
                    b[2] -= static_cast<double>(kz) * m;
                } else {
                    b = {Complex{0, 0}, Complex{0, 0}, Complex{0, 0}};
                }
                out.set_mode(kx, ky, kz, b);
            }
    out.divergence_free = true;
    return out;
}

namespace {

/// Random zero-mean divergence-free field band-limited to the dealias cutoff.
SpectralVectorField random_band_limited(const Grid& g, std::uint64_t seed) {
    SpectralVectorField f = random_smooth_field(g, seed, 1.0);
    apply_dealias_mask(f);
    return leray_project(f);
}

} // namespace

OracleResult bilinear_brute_force_oracle(std::uint64_t seed, int pairs, double tolerance) {
    const Grid g = Grid::make(1.0, 8);
    SpectralTransform transform(g);
    OracleResult r;
    r.name = "bilinear convolution sum (8^3)";
    r.pass = true;
    for (int p = 0; p < pairs; ++p) {
        const SpectralVectorField v = random_band_limited(g, seed + 2 * p);
        const SpectralVectorField u = random_band_limited(g, seed + 2 * p + 1);
        const SpectralVectorField fast = bilinear_B(transform, v, u);
        const SpectralVectorField slow = brute_force_bilinear(v, u);
        double scale = max_coefficient(slow);
        double worst = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < fast.components[c].coeffs.size(); ++i)
                worst = std::max(worst, std::abs(fast.components[c].coeffs[i] -
                                                 slow.components[c].coeffs[i]));
        const double rel = scale > 0.0 ? worst / scale : worst;
        r.worst = std::max(r.worst, rel);
        if (rel > tolerance) r.pass = false;
    }
    std::ostringstream os;
    os << "worst relative deviation " << r.worst << " over " << pairs << " random pairs";
    r.detail = os.str();
    return r;
}

OracleResult gronwall_ode_oracle(std::uint64_t seed, int tuples) {
    OracleResult r;
    r.name = "windowed Gronwall envelope vs dense ODE solution";
    r.pass = true;

    auto run_case = [&r](double C, double M, double T, double xi0, int harmonics) {
        // beta(t) = (M/T) sin^2(omega t) has window mass M/2 <= M for
        // omega T a multiple of pi; harmonics = 0 means beta constant = M/T
        // with window mass exactly M.
        const double omega = harmonics > 0 ? harmonics * M_PI / T : 0.0;
        auto beta = [&](double t) {
            if (harmonics == 0) return M / T;
            const double s = std::sin(omega * t);
            return M / T * s * s;
        };
        auto f = [&](double t, double xi) { return -C * xi + beta(t); };
        const double horizon = 10.0 * std::max(T, 1.0 / C);
        const int nsteps = 20000;
        const double dt = horizon / nsteps;
        double xi = xi0;
        for (int s = 0; s <= nsteps; ++s) {
            const double t = s * dt;
            const double env = gronwall_envelope(xi0, C, M, T, t, 0.0);
            const double margin = xi - env;
            r.worst = std::max(r.worst, margin);
            if (margin > 1e-9 * std::max(1.0, env)) r.pass = false;
            const double k1 = f(t, xi);
            const double k2 = f(t + dt / 2, xi + dt / 2 * k1);
            const double k3 = f(t + dt / 2, xi + dt / 2 * k2);
            const double k4 = f(t + dt, xi + dt * k3);
            xi += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            if (xi < 0.0) xi = 0.0;
        }
    };

    // worked case: beta = 1, C = 1, T = 1, xi0 = 2 (window mass M = 1)
    run_case(1.0, 1.0, 1.0, 2.0, 0);

    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < tuples; ++i) {
        const double C = 0.1 + 4.9 * unit();
        const double M = 3.0 * unit();
        const double T = 0.2 + 1.8 * unit();
        const double xi0 = 5.0 * unit();
        const int harmonics = 1 + static_cast<int>(3.0 * unit());
        run_case(C, M, T, xi0, harmonics);
    }
    std::ostringstream os;
    os << "largest (solution - envelope) margin " << r.worst << " over " << tuples
       << " random tuples plus the worked constant-forcing case";
    r.detail = os.str();
    return r;
}

OracleResult interpolant_property_oracle(int trials, std::uint64_t seed) {
    const Grid g = Grid::make(1.0, 32);
    SpectralTransform transform(g);
    OracleResult r;
    r.name = "interpolant approximation property (N=32, h=0.043)";
    r.pass = true;
    for (InterpolantKind kind : {InterpolantKind::Modal, InterpolantKind::VolumeAverage}) {
        const InterpolantSpec spec = InterpolantSpec::make(kind, 0.043, g.length);
        const ApproximationReport rep =
            verify_approximation_property(transform, spec, trials, seed);
        r.worst = std::max(r.worst, rep.worst_ratio);
        if (!rep.pass) r.pass = false;
        r.detail += to_string(kind) + ": worst lhs/rhs " + format_double(rep.worst_ratio) +
                    " over " + std::to_string(rep.trials) + " trials; ";
    }
    return r;
}

} // namespace mlalpha
