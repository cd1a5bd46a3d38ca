#include "mlalpha/analysis.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

#include "mlalpha/errors.hpp"

namespace mlalpha {

double default_gn_constant() {
    return std::pow(4.0 / (3.0 * std::sqrt(3.0)), 0.75);
}

double compute_M1(const SpectralVectorField& u0, double f_sup_sq, const ModelParams& p) {
    if (f_sup_sq < 0.0) throw ConfigError("compute_M1: sup|f|^2 must be nonnegative");
    const double lam1 = u0.grid.lambda1();
    return norm_L2_sq(u0) + p.alpha * p.alpha * norm_H1_sq(u0) +
           f_sup_sq / (lam1 * lam1 * p.nu * p.nu);
}

double compute_C1(double M1, double c, const ModelParams& p) {
    const double c4 = std::pow(c, 4);
    return (4.0 / 3.0) * std::pow(15.0, 3) * M1 * M1 * c4 /
           (std::pow(2.0, 11) * std::pow(p.nu, 3) * std::pow(p.alpha, 4));
}

RegularityVerdicts check_regularity_conditions(const ModelParams& p,
                                               const AssimilationParams& a,
                                               double c1, double c2) {
    const double h2 = a.h * a.h;
    const double h4 = h2 * h2;
    RegularityVerdicts v;
    v.eta_bound.lhs = a.eta;
    v.eta_bound.rhs = 0.5 * p.nu *
                      std::min(1.0 / (c1 * c1 * h2), a.beta * a.beta / (c2 * c2 * h4));
    v.eta_bound.pass = v.eta_bound.lhs <= v.eta_bound.rhs;
    v.stiffness.lhs = a.eta * a.eta * c2 * c2 * h4;
    v.stiffness.rhs = p.nu * p.nu / 4.0;
    v.stiffness.pass = v.stiffness.lhs < v.stiffness.rhs;
    return v;
}

HypothesisVerdicts check_convergence_hypotheses(const ModelParams& p,
                                                const AssimilationParams& a, double M1,
                                                double c, double c1, double c2) {
    const double nu = p.nu, alpha = p.alpha, beta = a.beta, eta = a.eta, h = a.h;
    const double c4 = std::pow(c, 4);
    const double h2 = h * h, h4 = h2 * h2;
    const double b2 = beta * beta;

    HypothesisVerdicts v;
    v.C1 = compute_C1(M1, c, p);

    v.hyp1.lhs = 0.75 * eta - std::pow(15.0, 3) * M1 * M1 * c4 /
                                  (std::pow(2.0, 11) * std::pow(nu, 3) * std::pow(alpha, 4));
    v.hyp1.rhs = 0.0;
    v.hyp1.pass = v.hyp1.lhs > 0.0;

    v.hyp2.lhs = eta * c1 * c1 * h2 + (5.0 * eta * eta * b2 / (2.0 * nu)) * c1 * c1 * h2 +
                 std::pow(30.0, 3) * c4 * M1 * M1 /
                     (std::pow(4.0, 4) * std::pow(nu, 3) * std::pow(alpha, 4)) -
                 eta * b2;
    v.hyp2.rhs = nu / 4.0;
    v.hyp2.pass = v.hyp2.lhs < v.hyp2.rhs;

    v.hyp3.lhs = eta * c2 * c2 * h4 + 5.0 * c2 * c2 * eta * eta * b2 * h4 / (2.0 * nu);
    v.hyp3.rhs = nu * b2 / 4.0;
    v.hyp3.pass = v.hyp3.lhs < v.hyp3.rhs;
    return v;
}

double compute_M_alpha(const ModelParams& p, const AssimilationParams& a, double M1,
                       double f_sup_sq, double c) {
    const double nu = p.nu, alpha = p.alpha, beta = a.beta;
    const double lam1 = 4.0 * M_PI * M_PI / (p.length * p.length);
    const double a2 = alpha * alpha;
    const double pi4 = std::pow(M_PI, 4);
    const double c2 = c * c;

    const double termA = (1.0 / (nu * beta)) *
                         (6.0 * M1 / (nu * a2) +
                          6.0 * f_sup_sq / (std::pow(nu, 3) * lam1 * lam1 * a2)) *
                         (nu * nu + c2 * M1 / (16.0 * pi4 * std::sqrt(lam1) * a2));
    const double termB = 3.0 * c2 * M1 * M1 /
                         (16.0 * nu * nu * beta * pi4 * std::pow(alpha, 6) * std::pow(lam1, 1.5));
    const double termC = 3.0 * f_sup_sq / (nu * nu * lam1 * beta);
    const double termD = (nu / beta) * (M1 / (nu * a2) +
                                        f_sup_sq / (std::pow(nu, 3) * a2 * lam1 * lam1));
    const double termE = (c2 * M1 / (2.0 * nu * a2)) *
                         (M1 / (nu * a2) + f_sup_sq / (lam1 * lam1 * std::pow(nu, 3) * a2));

    const double mismatch = std::abs(beta * beta - alpha * alpha);
    return 5.0 * mismatch * mismatch / beta * (termA + termB + termC + termD + termE);
}

double lemma_derivative_budget(const ModelParams& p, double M1, double f_sup_sq,
                               double T, double c) {
    const double nu = p.nu, a2 = p.alpha * p.alpha;
    const double lam1 = 4.0 * M_PI * M_PI / (p.length * p.length);
    const double pi4 = std::pow(M_PI, 4);
    const double c2 = c * c;
    return (6.0 * M1 / (nu * a2) + 6.0 * T * f_sup_sq / (nu * nu * lam1 * a2)) *
               (nu * nu + c2 * M1 / (16.0 * pi4 * std::sqrt(lam1) * a2)) +
           3.0 * c2 * M1 * M1 * T / (16.0 * pi4 * std::pow(p.alpha, 6) * std::sqrt(lam1)) +
           3.0 * T * f_sup_sq;
}

double gronwall_envelope(double xi0, double C, double M, double T, double t, double t0) {
    if (!(C > 0.0) || !(T > 0.0))
        throw ConfigError("gronwall_envelope: C and T must be positive");
    if (xi0 < 0.0 || M < 0.0)
        throw ConfigError("gronwall_envelope: xi0 and M must be nonnegative");
    if (t < t0) throw ConfigError("gronwall_envelope: t must be >= t0");
    return std::exp(-C * (t - t0)) * xi0 +
           M * std::exp(2.0 * C * T) / (std::exp(C * T) - 1.0);
}

double theorem_envelope(double g0_combined, const ModelParams& p,
                        const AssimilationParams& /*a*/, double M_alpha, double t) {
    const double lam1 = 4.0 * M_PI * M_PI / (p.length * p.length);
    return std::exp(-lam1 * p.nu * t / 2.0) * g0_combined +
           M_alpha * M_E / (std::exp(0.5) - 1.0);
}

std::string ConditionReport::to_kv() const {
    std::ostringstream os;
    os.precision(17);
    auto kv = [&os](const char* key, double v) { os << key << "=" << v << "\n"; };
    auto kb = [&os](const char* key, bool v) { os << key << "=" << (v ? "PASS" : "FAIL") << "\n"; };
    kv("nu", nu);
    kv("alpha", alpha);
    kv("beta", beta);
    kv("eta", eta);
    kv("h", h);
    kv("c", c);
    kv("c1", c1);
    kv("c2", c2);
    kv("lambda1", lambda1);
    kv("f_sup_sq", f_sup_sq);
    kv("M1", M1);
    kv("C1", C1);
    kv("M_alpha", M_alpha);
    kv("regularity.eta_bound.lhs", regularity.eta_bound.lhs);
    kv("regularity.eta_bound.rhs", regularity.eta_bound.rhs);
    kb("regularity.eta_bound", regularity.eta_bound.pass);
    kv("regularity.stiffness.lhs", regularity.stiffness.lhs);
    kv("regularity.stiffness.rhs", regularity.stiffness.rhs);
    kb("regularity.stiffness", regularity.stiffness.pass);
    kv("hyp1.lhs", hypotheses.hyp1.lhs);
    kv("hyp1.rhs", hypotheses.hyp1.rhs);
    kb("hyp1", hypotheses.hyp1.pass);
    kv("hyp2.lhs", hypotheses.hyp2.lhs);
    kv("hyp2.rhs", hypotheses.hyp2.rhs);
    kb("hyp2", hypotheses.hyp2.pass);
    kv("hyp3.lhs", hypotheses.hyp3.lhs);
    kv("hyp3.rhs", hypotheses.hyp3.rhs);
    kb("hyp3", hypotheses.hyp3.pass);
    kb("regularity_ok", regularity_ok());
    kb("hypotheses_ok", hypotheses_ok());
    return os.str();
}

ConditionReport build_condition_report(const ModelParams& p, const AssimilationParams& a,
                                       const SpectralVectorField& u0, double c, double c1,
                                       double c2) {
    ConditionReport r;
    r.lambda1 = u0.grid.lambda1();
    r.f_sup_sq = p.sup_forcing_sq();
    r.M1 = compute_M1(u0, r.f_sup_sq, p);
    r.c = c;
    r.c1 = c1;
    r.c2 = c2;
    r.nu = p.nu;
    r.alpha = p.alpha;
    r.beta = a.beta;
    r.eta = a.eta;
    r.h = a.h;
    r.regularity = check_regularity_conditions(p, a, c1, c2);
    r.hypotheses = check_convergence_hypotheses(p, a, r.M1, c, c1, c2);
    r.C1 = r.hypotheses.C1;
    r.M_alpha = compute_M_alpha(p, a, r.M1, r.f_sup_sq, c);
    return r;
}

ErrorRecord error_record(const TwinState& state, const ModelParams& p,
                         const AssimilationParams& a,
                         const std::optional<EnvelopeContext>& envelope) {
    const double b2 = a.beta * a.beta;
    SpectralVectorField g = state.w;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.components[c].coeffs.size(); ++i)
            g.components[c].coeffs[i] -= state.u.components[c].coeffs[i];

    ErrorRecord rec;
    rec.t = state.t;
    rec.err_L2sq = norm_L2_sq(g);
    rec.err_H1sq = norm_H1_sq(g);
    rec.combined = rec.err_L2sq + b2 * rec.err_H1sq;

    const ScaledCombinedNorm ng = combined_norm_scaled(g, b2);
    const ScaledCombinedNorm nu_ = combined_norm_scaled(state.u, b2);
    rec.normalized = ng.ratio(nu_);
    rec.truth_below_floor = max_coefficient(state.u) < DBL_MIN;

    if (envelope)
        rec.envelope = theorem_envelope(envelope->g0_combined, p, a, envelope->M_alpha,
                                        state.t);
    return rec;
}

} // namespace mlalpha
