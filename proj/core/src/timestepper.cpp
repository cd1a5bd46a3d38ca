#include "mlalpha/timestepper.hpp"

#include <cmath>

namespace mlalpha {

std::string to_string(Scheme s) {
    return s == Scheme::IfRk2 ? "IF-RK2" : "IMEX-Euler";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "IF-RK2") return Scheme::IfRk2;
    if (s == "IMEX-Euler") return Scheme::ImexEuler;
    throw ConfigError("unknown scheme '" + s + "' (expected IF-RK2 or IMEX-Euler)");
}

std::string to_string(NudgingMode m) {
    return m == NudgingMode::Explicit ? "explicit" : "folded";
}

NudgingMode nudging_mode_from_string(const std::string& s) {
    if (s == "explicit") return NudgingMode::Explicit;
    if (s == "folded") return NudgingMode::Folded;
    throw ConfigError("unknown nudging mode '" + s + "' (expected explicit or folded)");
}

TwinStepper::TwinStepper(const SpectralTransform& transform, const ModelParams& p,
                         const AssimilationParams& a, const StepConfig& cfg)
    : transform_(transform), model_(p), assim_(a), cfg_(cfg) {
    cfg_.validate();
    if (cfg_.nudging == NudgingMode::Folded && a.interpolant != InterpolantKind::Modal)
        throw ConfigError("folded nudging requires the modal interpolant");

    const Grid& g = transform.grid();
    const std::size_t m = g.spectral_size();
    decay_full_.resize(m);
    decay_half_.resize(m);
    decay_full_nudged_.resize(m);
    decay_half_nudged_.resize(m);

    const InterpolantSpec spec = InterpolantSpec::make(a.interpolant, a.h, g.length);
    const int cutoff = spec.modal_cutoff(g.length);
    const double dt = cfg_.dt;
    for_each_mode(g, [&](int i, int j, int k, int kx, int ky, int kz, double) {
        const std::size_t idx = g.spectral_index(i, j, k);
        const double lam = g.eigenvalue(kx, ky, kz);
        const bool observed = std::abs(kx) <= cutoff && std::abs(ky) <= cutoff &&
                              std::abs(kz) <= cutoff;
        const double a_plain = p.nu * lam;
        const double a_nudged = a_plain + (observed ? a.eta : 0.0);
        if (cfg_.scheme == Scheme::IfRk2) {
            decay_full_[idx] = std::exp(-a_plain * dt);
            decay_half_[idx] = std::exp(-a_plain * dt / 2.0);
            decay_full_nudged_[idx] = std::exp(-a_nudged * dt);
            decay_half_nudged_[idx] = std::exp(-a_nudged * dt / 2.0);
        } else {
            decay_full_[idx] = 1.0 / (1.0 + a_plain * dt);
            decay_half_[idx] = 1.0;
            decay_full_nudged_[idx] = 1.0 / (1.0 + a_nudged * dt);
            decay_half_nudged_[idx] = 1.0;
        }
    });
}

void TwinStepper::check_finite(const SpectralVectorField& f, const char* which) const {
    double acc = 0.0;
    for (int c = 0; c < 3; ++c)
        for (const auto& x : f.components[c].coeffs) acc += x.real() + x.imag();
    if (!std::isfinite(acc))
        throw BlowUpError(step_, step_ * cfg_.dt,
                          std::string("blow-up: non-finite coefficient in the ") + which +
                              " field at step " + std::to_string(step_));
}

namespace {

void axpy(SpectralVectorField& y, double a, const SpectralVectorField& x) {
    for (int c = 0; c < 3; ++c) {
        auto& yc = y.components[c].coeffs;
        const auto& xc = x.components[c].coeffs;
        for (std::size_t i = 0; i < yc.size(); ++i) yc[i] += a * xc[i];
    }
}

void scale_modes(SpectralVectorField& y, const std::vector<double>& factors) {
    for (int c = 0; c < 3; ++c) {
        auto& yc = y.components[c].coeffs;
        for (std::size_t i = 0; i < yc.size(); ++i) yc[i] *= factors[i];
    }
}

// half = ehalf .* (u + a k): the RK2 stage value in one pass
void stage_combine(SpectralVectorField& half, const SpectralVectorField& u, double a,
                   const SpectralVectorField& k, const std::vector<double>& ehalf) {
    for (int c = 0; c < 3; ++c) {
        auto& hc = half.components[c].coeffs;
        const auto& uc = u.components[c].coeffs;
        const auto& kc = k.components[c].coeffs;
        for (std::size_t i = 0; i < hc.size(); ++i) hc[i] = ehalf[i] * (uc[i] + a * kc[i]);
    }
}

// u = efull .* u + dt (ehalf .* k): the RK2 update in one pass
void final_combine(SpectralVectorField& u, const std::vector<double>& efull, double dt,
                   const SpectralVectorField& k, const std::vector<double>& ehalf) {
    for (int c = 0; c < 3; ++c) {
        auto& uc = u.components[c].coeffs;
        const auto& kc = k.components[c].coeffs;
        for (std::size_t i = 0; i < uc.size(); ++i)
            uc[i] = efull[i] * uc[i] + dt * (ehalf[i] * kc[i]);
    }
}

} // namespace

void TwinStepper::advance(SpectralVectorField& u, const std::vector<double>& efull,
                          const std::vector<double>& ehalf,
                          const SpectralVectorField* obs_now,
                          const SpectralVectorField* obs_half, bool assimilated,
                          SpectralVectorField* stage_out) {
    const double dt = cfg_.dt;
    const bool folded = assimilated && cfg_.nudging == NudgingMode::Folded;
    const bool explicit_nudge = assimilated && cfg_.nudging == NudgingMode::Explicit;

    auto nonstiff = [&](const SpectralVectorField& x,
                        const SpectralVectorField* obs) -> SpectralVectorField {
        if (cfg_.linear_only) {
            SpectralVectorField zero(x.grid);
            zero.divergence_free = true;
            if (folded && obs) axpy(zero, assim_.eta, *obs);
            return zero;
        }
        if (!assimilated) return truth_nonstiff(transform_, x, model_);
        SpectralVectorField n =
            cda_nonstiff(transform_, x, obs ? *obs : x, model_, assim_, explicit_nudge);
        if (folded && obs) axpy(n, assim_.eta, *obs); // -eta chi w lives in the factor
        return n;
    };

    if (cfg_.scheme == Scheme::IfRk2) {
        const SpectralVectorField k1 = nonstiff(u, obs_now);
        SpectralVectorField half(u.grid);
        half.divergence_free = u.divergence_free;
        stage_combine(half, u, dt / 2.0, k1, ehalf);
        const SpectralVectorField k2 = nonstiff(half, obs_half);
        if (stage_out) *stage_out = std::move(half);
        final_combine(u, efull, dt, k2, ehalf);
    } else {
        const SpectralVectorField k1 = nonstiff(u, obs_now);
        axpy(u, dt, k1);
        scale_modes(u, efull);
        if (stage_out) *stage_out = u;
    }
}

void TwinStepper::step_truth(SpectralVectorField& u) {
    advance(u, decay_full_, decay_half_, nullptr, nullptr, false, nullptr);
    ++step_;
    check_finite(u, "truth");
}

void TwinStepper::step_twin(TwinState& state) {
    const Grid& g = transform_.grid();
    const InterpolantSpec spec = InterpolantSpec::make(assim_.interpolant, assim_.h, g.length);

    // stage observations from the truth, consistent with its own stages
    SpectralVectorField obs_now = apply_interpolant(transform_, state.u, spec);
    leray_project_inplace(obs_now);
    SpectralVectorField u_stage(g);
    advance(state.u, decay_full_, decay_half_, nullptr, nullptr, false, &u_stage);
    SpectralVectorField obs_half = obs_now;
    if (cfg_.scheme == Scheme::IfRk2) {
        obs_half = apply_interpolant(transform_, u_stage, spec);
        leray_project_inplace(obs_half);
    }

    const bool fold = cfg_.nudging == NudgingMode::Folded;
    advance(state.w, fold ? decay_full_nudged_ : decay_full_,
            fold ? decay_half_nudged_ : decay_half_, &obs_now, &obs_half, true, nullptr);

    ++step_;
    state.t += cfg_.dt;
    check_finite(state.u, "truth");
    check_finite(state.w, "assimilated");
}

double TwinStepper::advective_cfl(const SpectralVectorField& u) const {
    const SpectralVectorField v = helmholtz_filter_apply(u, model_.alpha);
    const Grid& g = transform_.grid();
    std::vector<double> phys(g.physical_size());
    std::vector<double> speed_sq(g.physical_size(), 0.0);
    for (int c = 0; c < 3; ++c) {
        transform_.inverse_unchecked(v.components[c], phys.data());
        for (std::size_t i = 0; i < phys.size(); ++i) speed_sq[i] += phys[i] * phys[i];
    }
    double vmax_sq = 0.0;
    for (double s : speed_sq) vmax_sq = std::max(vmax_sq, s);
    const double dx = g.length / g.n;
    return std::sqrt(vmax_sq) * cfg_.dt / dx;
}

} // namespace mlalpha
