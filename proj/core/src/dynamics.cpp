#include "mlalpha/dynamics.hpp"

#include <cmath>
#include <random>

#include "mlalpha/errors.hpp"

namespace mlalpha {

ModelParams ModelParams::make(double nu, double alpha, double length,
                              std::optional<SpectralVectorField> forcing) {
    if (!(nu > 0.0)) throw ConfigError("model: viscosity nu must be positive");
    if (!(alpha > 0.0)) throw ConfigError("model: filter length alpha must be positive");
    if (!(length > 0.0)) throw ConfigError("model: box period must be positive");
    ModelParams p;
    p.nu = nu;
    p.alpha = alpha;
    p.length = length;
    if (forcing) {
        if (forcing->grid.length != length)
            throw ConfigError("model: forcing grid period does not match");
        SpectralVectorField f = leray_project(*forcing);
        for (int c = 0; c < 3; ++c) f.components[c].coeffs[0] = Complex{0.0, 0.0};
        p.forcing = std::move(f);
    }
    return p;
}

double ModelParams::sup_forcing_sq() const {
    return forcing ? norm_L2_sq(*forcing) : 0.0;
}

AssimilationParams AssimilationParams::make(double beta, double eta, double h,
                                            InterpolantKind kind) {
    if (!(beta > 0.0)) throw ConfigError("assimilation: beta must be positive");
    if (eta < 0.0) throw ConfigError("assimilation: eta must be nonnegative");
    if (!(h > 0.0)) throw ConfigError("assimilation: h must be positive");
    return AssimilationParams{beta, eta, h, kind};
}

TwinState::TwinState(SpectralVectorField u_, SpectralVectorField w_, double t_)
    : u(std::move(u_)), w(std::move(w_)), t(t_) {
    if (!(u.grid == w.grid))
        throw ConfigError("twin state: truth and assimilated fields live on different grids");
}

SpectralVectorField bilinear_B(const SpectralTransform& transform,
                               const SpectralVectorField& v,
                               const SpectralVectorField& u) {
    const Grid& g = transform.grid();
    if (!(v.grid == g) || !(u.grid == g))
        throw ConfigError("bilinear_B: grid mismatch");

    // (v.grad)u in convective form: transform v and the nine derivatives
    // of u to collocation space, multiply, transform the three sums back.
    const std::size_t np = g.physical_size();
    const auto vphys = std::make_unique_for_overwrite<double[]>(3 * np);
    for (int c = 0; c < 3; ++c)
        transform.inverse_unchecked(v.components[c], vphys.get() + c * np);

    SpectralVectorField result(g);
    SpectralScalarField du(g);
    const auto conv = std::make_unique_for_overwrite<double[]>(np);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            derivative_into(u.components[i], j, du);
            transform.inverse_multiply_accumulate(du, vphys.get() + j * np, conv.get(),
                                                  j == 0);
        }
        transform.forward_into(conv.get(), result.components[i]);
        apply_dealias_mask(result.components[i]);
    }
    leray_project_inplace(result);
    return result;
}

SpectralVectorField truth_nonstiff(const SpectralTransform& transform,
                                   const SpectralVectorField& u, const ModelParams& p) {
    if (p.length != u.grid.length)
        throw ConfigError("truth_rhs: model period does not match the grid");
    SpectralVectorField v = u;
    helmholtz_filter_apply_inplace(v, p.alpha);
    SpectralVectorField out = bilinear_B(transform, v, u);
    helmholtz_filter_inverse_inplace(out, p.alpha, -1.0);
    if (p.forcing) {
        const SpectralVectorField f = helmholtz_filter_inverse(*p.forcing, p.alpha);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < out.components[c].coeffs.size(); ++i)
                out.components[c].coeffs[i] += f.components[c].coeffs[i];
    }
    out.divergence_free = true;
    return out;
}

SpectralVectorField truth_rhs(const SpectralTransform& transform,
                              const SpectralVectorField& u, const ModelParams& p) {
    SpectralVectorField out = truth_nonstiff(transform, u, p);
    const SpectralVectorField au = stokes_apply(u);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < out.components[c].coeffs.size(); ++i)
            out.components[c].coeffs[i] -= p.nu * au.components[c].coeffs[i];
    return out;
}

SpectralVectorField cda_nonstiff(const SpectralTransform& transform,
                                 const SpectralVectorField& w,
                                 const SpectralVectorField& u_obs_interp,
                                 const ModelParams& p, const AssimilationParams& a,
                                 bool include_nudging) {
    const Grid& g = transform.grid();
    if (!(w.grid == g) || !(u_obs_interp.grid == g))
        throw ConfigError("cda_rhs: grid mismatch");

    SpectralVectorField z = w;
    helmholtz_filter_apply_inplace(z, a.beta);
    SpectralVectorField out = bilinear_B(transform, z, w);
    helmholtz_filter_inverse_inplace(out, a.beta, -1.0);
    if (p.forcing) {
        const SpectralVectorField f = helmholtz_filter_inverse(*p.forcing, a.beta);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < out.components[c].coeffs.size(); ++i)
                out.components[c].coeffs[i] += f.components[c].coeffs[i];
    }
    if (include_nudging && a.eta != 0.0) {
        const InterpolantSpec spec = InterpolantSpec::make(a.interpolant, a.h, g.length);
        SpectralVectorField ihw = apply_interpolant(transform, w, spec);
        leray_project_inplace(ihw);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < out.components[c].coeffs.size(); ++i)
                out.components[c].coeffs[i] -=
                    a.eta * (ihw.components[c].coeffs[i] - u_obs_interp.components[c].coeffs[i]);
    }
    out.divergence_free = true;
    return out;
}

SpectralVectorField cda_rhs(const SpectralTransform& transform,
                            const SpectralVectorField& w,
                            const SpectralVectorField& u_obs_interp,
                            const ModelParams& p, const AssimilationParams& a) {
    SpectralVectorField out = cda_nonstiff(transform, w, u_obs_interp, p, a, true);
    const SpectralVectorField aw = stokes_apply(w);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < out.components[c].coeffs.size(); ++i)
            out.components[c].coeffs[i] -= p.nu * aw.components[c].coeffs[i];
    return out;
}

// --------------------------------------------------------------------------
// Initial data
// --------------------------------------------------------------------------

PhysicalVectorField sample_truth_initial(const Grid& grid) {
    PhysicalVectorField f(grid);
    const int n = grid.n;
    for (int i = 0; i < n; ++i) {
        const double x = grid.coordinate(i);
        for (int j = 0; j < n; ++j) {
            const double y = grid.coordinate(j);
            for (int k = 0; k < n; ++k) {
                const double z = grid.coordinate(k);
                const std::size_t idx = grid.physical_index(i, j, k);
                f.components[0][idx] = 0.05 * std::sin(2.0 * M_PI * x * z);
                f.components[1][idx] = 0.05 * std::sin(2.0 * M_PI * x * y);
                f.components[2][idx] = 0.05 * std::sin(2.0 * M_PI * y * z);
            }
        }
    }
    return f;
}

PhysicalVectorField sample_assimilated_initial(const Grid& grid) {
    PhysicalVectorField f(grid);
    const int n = grid.n;
    for (int i = 0; i < n; ++i) {
        const double x = grid.coordinate(i);
        for (int j = 0; j < n; ++j) {
            const double y = grid.coordinate(j);
            for (int k = 0; k < n; ++k) {
                const double z = grid.coordinate(k);
                const std::size_t idx = grid.physical_index(i, j, k);
                f.components[0][idx] = 0.05 * std::sin(M_PI * x) * std::cos(M_PI * y);
                f.components[1][idx] = 0.05 * std::sin(M_PI * y) * std::cos(M_PI * z);
                f.components[2][idx] = 0.05 * std::sin(M_PI * z) * std::cos(M_PI * x);
            }
        }
    }
    return f;
}

PhysicalVectorField sample_truth_initial_random(const Grid& grid, std::uint64_t seed) {
    PhysicalVectorField f = sample_truth_initial(grid);
    std::mt19937_64 rng(seed);
    // explicit 53-bit conversion keeps the stream identical across
    // standard library implementations
    for (int c = 0; c < 3; ++c)
        for (auto& s : f.components[c])
            s += 0.02 * ((rng() >> 11) * 0x1.0p-53) - 0.01;
    return f;
}

namespace {

InitialConditions build_initial(const SpectralTransform& transform,
                                const PhysicalVectorField& truth,
                                const PhysicalVectorField& assimilated) {
    // forward() removes the mean; record norms before and after projection
    SpectralVectorField u_pre = transform.forward(truth);
    SpectralVectorField w_pre = transform.forward(assimilated);
    InitialConditions ic{leray_project(u_pre), leray_project(w_pre)};
    ic.u0_l2_sq_pre = norm_L2_sq(u_pre);
    ic.w0_l2_sq_pre = norm_L2_sq(w_pre);
    ic.u0_l2_sq_post = norm_L2_sq(ic.u0);
    ic.w0_l2_sq_post = norm_L2_sq(ic.w0);
    return ic;
}

} // namespace

InitialConditions initial_conditions_deterministic(const SpectralTransform& transform) {
    const Grid& g = transform.grid();
    return build_initial(transform, sample_truth_initial(g), sample_assimilated_initial(g));
}

InitialConditions initial_conditions_random(const SpectralTransform& transform,
                                            std::uint64_t seed) {
    const Grid& g = transform.grid();
    return build_initial(transform, sample_truth_initial_random(g, seed),
                         sample_assimilated_initial(g));
}

SpectralVectorField make_single_mode_forcing(const Grid& grid, int kx, int ky, int kz,
                                             double amplitude) {
    if (kx == 0 && ky == 0 && kz == 0)
        throw ConfigError("forcing: zero mode is not allowed");
    SpectralVectorField f(grid);
    // any unit vector orthogonal to K stays divergence-free
    const double kxd = kx, kyd = ky, kzd = kz;
    double ex = -kyd, ey = kxd, ez = 0.0;
    if (ex == 0.0 && ey == 0.0) { ex = 1.0; ey = 0.0; ez = 0.0; }
    const double norm = std::sqrt(ex * ex + ey * ey + ez * ez);
    (void)kzd;
    f.set_mode(kx, ky, kz,
               {Complex{amplitude * ex / norm / 2.0, 0.0},
                Complex{amplitude * ey / norm / 2.0, 0.0},
                Complex{amplitude * ez / norm / 2.0, 0.0}});
    return leray_project(f);
}

} // namespace mlalpha
