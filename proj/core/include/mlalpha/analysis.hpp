#ifndef MLALPHA_ANALYSIS_HPP
#define MLALPHA_ANALYSIS_HPP

#include <optional>
#include <string>

#include "mlalpha/dynamics.hpp"

namespace mlalpha {

/// Gagliardo-Nirenberg constant used by the convergence conditions,
/// (4/(3 sqrt(3)))^(3/4).
double default_gn_constant();

/// A-priori bound M1 = |u0|^2 + alpha^2 ||u0||^2 + sup|f|^2/(lambda1^2 nu^2).
double compute_M1(const SpectralVectorField& u0, double f_sup_sq, const ModelParams& p);

/// Nudging threshold C1 = (4/3) 15^3 M1^2 c^4 / (2^11 nu^3 alpha^4);
/// convergence hypothesis (1) is eta > C1.
double compute_C1(double M1, double c, const ModelParams& p);

struct ConditionVerdict {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

/// Regularity conditions for the assimilated system:
///   eta <= (nu/2) min{ 1/(c1^2 h^2), beta^2/(c2^2 h^4) }   and
///   eta^2 c2^2 h^4 < nu^2/4.
struct RegularityVerdicts {
    ConditionVerdict eta_bound;   // lhs = eta, rhs = the min-bound
    ConditionVerdict stiffness;   // lhs = eta^2 c2^2 h^4, rhs = nu^2/4
    bool all_pass() const { return eta_bound.pass && stiffness.pass; }
};

RegularityVerdicts check_regularity_conditions(const ModelParams& p,
                                               const AssimilationParams& a,
                                               double c1, double c2);

/// Convergence hypotheses (1)-(3):
///  (1) 3 eta/4 - 15^3 M1^2 c^4/(2^11 nu^3 alpha^4) > 0
///  (2) eta c1^2 h^2 + (5 eta^2 beta^2/(2 nu)) c1^2 h^2
///      + 30^3 c^4 M1^2/(4^4 nu^3 alpha^4) - eta beta^2 < nu/4
///  (3) eta c2^2 h^4 + 5 c2^2 eta^2 beta^2 h^4/(2 nu) < nu beta^2/4
struct HypothesisVerdicts {
    ConditionVerdict hyp1; // lhs = the (1) expression, rhs = 0, pass = lhs > 0
    ConditionVerdict hyp2;
    ConditionVerdict hyp3;
    double C1 = 0.0;
    bool all_pass() const { return hyp1.pass && hyp2.pass && hyp3.pass; }
};

HypothesisVerdicts check_convergence_hypotheses(const ModelParams& p,
                                                const AssimilationParams& a, double M1,
                                                double c, double c1, double c2);

/// Asymptotic error constant M_alpha: the bracket of the averaged
/// perturbation budget with window T = (nu lambda1)^{-1}, multiplied by
/// 5 |beta^2 - alpha^2|^2 / beta. Zero when beta == alpha or when both
/// M1 and the forcing vanish.
double compute_M_alpha(const ModelParams& p, const AssimilationParams& a, double M1,
                       double f_sup_sq, double c);

/// Ceiling for the windowed time-derivative budget
/// int_t^{t+T} |du/dt|^2 ds of the truth system.
double lemma_derivative_budget(const ModelParams& p, double M1, double f_sup_sq,
                               double T, double c);

/// Alternative Gronwall envelope: xi(t) <= e^{-C(t-t0)} xi0
/// + M e^{2CT}/(e^{CT}-1), valid when xi' + C xi <= beta(t) with windowed
/// mass sup_t int_t^{t+T} beta <= M.
double gronwall_envelope(double xi0, double C, double M, double T, double t, double t0);

/// Convergence-theorem envelope for the combined error:
/// e^{-lambda1 nu t/2} g0 + M_alpha e/(sqrt(e)-1).
double theorem_envelope(double g0_combined, const ModelParams& p,
                        const AssimilationParams& a, double M_alpha, double t);

/// Full feasibility report for one parameter set; self-contained for
/// audit and serializable to a flat key=value block.
struct ConditionReport {
    double lambda1 = 0.0;
    double M1 = 0.0;
    double C1 = 0.0;
    double M_alpha = 0.0;
    double c = 0.0, c1 = 0.0, c2 = 0.0;
    double nu = 0.0, alpha = 0.0, beta = 0.0, eta = 0.0, h = 0.0;
    double f_sup_sq = 0.0;
    RegularityVerdicts regularity;
    HypothesisVerdicts hypotheses;

    bool regularity_ok() const { return regularity.all_pass(); }
    bool hypotheses_ok() const { return hypotheses.all_pass(); }
    std::string to_kv() const;
};

ConditionReport build_condition_report(const ModelParams& p, const AssimilationParams& a,
                                       const SpectralVectorField& u0, double c, double c1,
                                       double c2);

/// Per-output-time error diagnostics for g = w - u.
struct ErrorRecord {
    double t = 0.0;
    double err_L2sq = 0.0;
    double err_H1sq = 0.0;
    double combined = 0.0;   // err_L2sq + beta^2 err_H1sq
    double normalized = 0.0; // combined / (|u|^2 + beta^2 ||u||^2), scaled ratio
    std::optional<double> envelope; // absent when the hypotheses fail
    bool truth_below_floor = false; // truth coefficients under DBL_MIN
};

struct EnvelopeContext {
    double g0_combined = 0.0;
    double M_alpha = 0.0;
};

ErrorRecord error_record(const TwinState& state, const ModelParams& p,
                         const AssimilationParams& a,
                         const std::optional<EnvelopeContext>& envelope);

} // namespace mlalpha

#endif
