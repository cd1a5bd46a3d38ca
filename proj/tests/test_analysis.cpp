#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mlalpha/analysis.hpp"
#include "mlalpha/oracles.hpp"
#include "test_helpers.hpp"

using namespace mlalpha;
using mlalpha::testing::random_divfree_band_limited;

namespace {

const ModelParams kModel = ModelParams::make(0.75, 0.3, 1.0);
const AssimilationParams kAssim = AssimilationParams::make(0.35, 1.5, 0.043);
const double kC = default_gn_constant();
const double kC1 = std::sqrt(32.0);
const double kC2 = 2.0;

} // namespace

TEST_CASE("gagliardo-nirenberg constant") {
    CHECK(kC == doctest::Approx(std::pow(4.0 / (3.0 * std::sqrt(3.0)), 0.75)).epsilon(1e-15));
    CHECK(kC == doctest::Approx(0.8218330112).epsilon(1e-9));
}

TEST_CASE("M1: zero-force and zero-data limits") {
    const Grid g = Grid::make(1.0, 8);
    const SpectralVectorField u = random_divfree_band_limited(g, 3);
    const double m1 = compute_M1(u, 0.0, kModel);
    CHECK(m1 == doctest::Approx(norm_L2_sq(u) + 0.09 * norm_H1_sq(u)).epsilon(1e-15));

    const SpectralVectorField zero(g);
    const double lam1 = g.lambda1();
    const double F = 0.37;
    CHECK(compute_M1(zero, F, kModel) ==
          doctest::Approx(F / (lam1 * lam1 * kModel.nu * kModel.nu)).epsilon(1e-14));
    CHECK_THROWS_AS(compute_M1(u, -1.0, kModel), ConfigError);
}

TEST_CASE("regularity conditions reproduce the benchmark arithmetic") {
    const RegularityVerdicts v = check_regularity_conditions(kModel, kAssim, kC1, kC2);
    // frozen targets evaluated by hand from the condition formulas
    CHECK(std::abs(v.eta_bound.rhs / 6.34 - 1.0) <= 1e-3);
    CHECK(std::abs(v.stiffness.lhs / 3.08e-5 - 1.0) <= 1e-3);
    CHECK(std::abs(v.stiffness.rhs / 0.1406 - 1.0) <= 1e-3);
    CHECK(v.eta_bound.pass);
    CHECK(v.stiffness.pass);

    // eta beyond the bound fails the first condition
    AssimilationParams big = kAssim;
    big.eta = 10.0;
    CHECK_FALSE(check_regularity_conditions(kModel, big, kC1, kC2).eta_bound.pass);
}

TEST_CASE("regularity conditions are monotone in eta and pass as h -> 0") {
    bool passed_all_smaller = true;
    bool seen_fail = false;
    for (double eta = 0.1; eta < 40.0; eta *= 1.7) {
        AssimilationParams a = kAssim;
        a.eta = eta;
        const bool pass = check_regularity_conditions(kModel, a, kC1, kC2).all_pass();
        if (!pass) seen_fail = true;
        if (seen_fail && pass) passed_all_smaller = false; // no pass after a fail
    }
    CHECK(passed_all_smaller);
    CHECK(seen_fail);

    AssimilationParams fine = kAssim;
    fine.eta = 500.0;
    fine.h = 1e-5;
    CHECK(check_regularity_conditions(kModel, fine, kC1, kC2).all_pass());
}

TEST_CASE("convergence hypotheses with the benchmark parameter set") {
    // the reported a-priori bound of the reference runs
    const double M1 = 0.00339;
    const HypothesisVerdicts high = check_convergence_hypotheses(kModel, kAssim, M1, kC, kC1, kC2);
    CHECK(high.hyp1.pass);
    CHECK(high.hyp2.pass);
    CHECK(high.hyp3.pass);
    INFO("C1 from the formula: ", high.C1);
    CHECK(high.C1 == doctest::Approx(0.0033709).epsilon(1e-4));
    CHECK(high.C1 < 1.5);

    AssimilationParams low = kAssim;
    low.eta = 1e-4;
    const HypothesisVerdicts lo = check_convergence_hypotheses(kModel, low, M1, kC, kC1, kC2);
    CHECK_FALSE(lo.hyp1.pass); // eta < C1
    CHECK(lo.C1 > low.eta);
}

TEST_CASE("degenerate M1 = 0 reduces hypothesis (1) to eta > 0") {
    const HypothesisVerdicts v = check_convergence_hypotheses(kModel, kAssim, 0.0, kC, kC1, kC2);
    CHECK(v.C1 == 0.0);
    CHECK(v.hyp1.pass);
    CHECK(v.hyp1.lhs == doctest::Approx(0.75 * kAssim.eta).epsilon(1e-15));
}

TEST_CASE("C1 scales as M1 squared and alpha to the minus fourth") {
    const double base = compute_C1(0.004, kC, kModel);
    CHECK(compute_C1(0.008, kC, kModel) == doctest::Approx(4.0 * base).epsilon(1e-12));
    const ModelParams half_alpha = ModelParams::make(0.75, 0.15, 1.0);
    CHECK(compute_C1(0.004, kC, half_alpha) == doctest::Approx(16.0 * base).epsilon(1e-12));
}

TEST_CASE("M_alpha: vanishing cases and the dual-route transcription") {
    CHECK(compute_M_alpha(kModel, AssimilationParams::make(0.3, 1.5, 0.043), 0.5, 0.1, kC) ==
          0.0); // beta == alpha
    CHECK(compute_M_alpha(kModel, kAssim, 0.0, 0.0, kC) == 0.0);
    CHECK(compute_M_alpha(kModel, kAssim, 0.02, 0.0, kC) > 0.0);

    // independent reconstruction: bracket = budget/(nu beta) + (nu/beta) S
    // + (c^2 M1 / (2 nu alpha^2)) S with S the windowed |Au|^2 budget and
    // T = 1/(nu lambda1)
    for (double fsup : {0.0, 0.05}) {
        for (double M1 : {0.002, 0.0194}) {
            const double lam1 = 4.0 * M_PI * M_PI;
            const double T = 1.0 / (kModel.nu * lam1);
            const double a2 = kModel.alpha * kModel.alpha;
            const double S = M1 / (kModel.nu * a2) +
                             T * fsup / (kModel.nu * kModel.nu * lam1 * a2);
            const double bracket =
                lemma_derivative_budget(kModel, M1, fsup, T, kC) / (kModel.nu * kAssim.beta) +
                (kModel.nu / kAssim.beta) * S +
                kC * kC * M1 / (2.0 * kModel.nu * a2) * S;
            const double mismatch =
                std::abs(kAssim.beta * kAssim.beta - kModel.alpha * kModel.alpha);
            const double expected = 5.0 * mismatch * mismatch / kAssim.beta * bracket;
            CHECK(compute_M_alpha(kModel, kAssim, M1, fsup, kC) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("derivative budget limits") {
    CHECK(lemma_derivative_budget(kModel, 0.0, 0.0, 3.0, kC) == 0.0);
    const double M1 = 0.0194;
    const double lam1 = 4.0 * M_PI * M_PI;
    const double a2 = 0.09;
    const double expected = (6.0 * M1 / (kModel.nu * a2)) *
                            (kModel.nu * kModel.nu +
                             kC * kC * M1 / (16.0 * std::pow(M_PI, 4) * std::sqrt(lam1) * a2));
    CHECK(lemma_derivative_budget(kModel, M1, 0.0, 0.0, kC) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("gronwall envelope: degenerate forms and validation") {
    CHECK(gronwall_envelope(2.0, 1.0, 0.0, 1.0, 0.0, 0.0) == doctest::Approx(2.0));
    CHECK(gronwall_envelope(2.0, 0.7, 0.0, 1.0, 3.0, 1.0) ==
          doctest::Approx(2.0 * std::exp(-0.7 * 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(gronwall_envelope(1.0, 0.0, 1.0, 1.0, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(gronwall_envelope(1.0, 1.0, 1.0, 1.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(gronwall_envelope(-1.0, 1.0, 1.0, 1.0, 2.0, 0.0), ConfigError);
}

TEST_CASE("gronwall envelope dominates the worked scalar ODE") {
    const OracleResult r = gronwall_ode_oracle(/*seed=*/17, /*tuples=*/5);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("theorem envelope: frozen asymptote and degenerate forms") {
    CHECK(theorem_envelope(0.42, kModel, kAssim, 0.0, 0.0) == doctest::Approx(0.42));
    // large-time limit is M_alpha e/(sqrt(e)-1); second algebraic route
    // e(sqrt(e)+1)/(e-1) cross-checks the transcription
    const double tail = theorem_envelope(0.0, kModel, kAssim, 1.0, 1e9);
    const double route1 = std::exp(1.0) / (std::exp(0.5) - 1.0);
    const double route2 = std::exp(1.0) * (std::exp(0.5) + 1.0) / (std::exp(1.0) - 1.0);
    CHECK(tail == doctest::Approx(route1).epsilon(1e-15));
    CHECK(route1 == doctest::Approx(route2).epsilon(1e-14));
    CHECK(tail == doctest::Approx(4.190215).epsilon(1e-6));
    // the decay rate in the exponent is lambda1 nu / 2
    const double g0 = 1.0;
    const double at1 = theorem_envelope(g0, kModel, kAssim, 0.0, 1.0);
    CHECK(at1 == doctest::Approx(std::exp(-4.0 * M_PI * M_PI * 0.75 / 2.0)).epsilon(1e-12));
}

TEST_CASE("error records: zeros, scaling, double-path combination") {
    const Grid g = Grid::make(1.0, 8);
    const SpectralVectorField u = random_divfree_band_limited(g, 64);

    TwinState same(u, u, 1.5);
    const ErrorRecord zero = error_record(same, kModel, kAssim, std::nullopt);
    CHECK(zero.err_L2sq == 0.0);
    CHECK(zero.err_H1sq == 0.0);
    CHECK(zero.combined == 0.0);
    CHECK(zero.normalized == 0.0);
    CHECK_FALSE(zero.envelope.has_value());
    CHECK(zero.t == 1.5);

    SpectralVectorField w = u;
    for (int c = 0; c < 3; ++c)
        for (auto& x : w.components[c].coeffs) x *= 2.0;
    TwinState twice(u, w, 0.0);
    const ErrorRecord r = error_record(twice, kModel, kAssim, std::nullopt);
    CHECK(r.err_L2sq == doctest::Approx(norm_L2_sq(u)).epsilon(1e-13));
    CHECK(r.err_H1sq == doctest::Approx(norm_H1_sq(u)).epsilon(1e-13));

    // combined must re-derive from its parts
    const double b2 = kAssim.beta * kAssim.beta;
    CHECK(r.combined == doctest::Approx(r.err_L2sq + b2 * r.err_H1sq).epsilon(1e-12));
    CHECK(r.normalized ==
          doctest::Approx(r.combined / (norm_L2_sq(u) + b2 * norm_H1_sq(u))).epsilon(1e-12));

    const EnvelopeContext env{r.combined, 0.01};
    const ErrorRecord with_env = error_record(twice, kModel, kAssim, env);
    REQUIRE(with_env.envelope.has_value());
    CHECK(*with_env.envelope ==
          doctest::Approx(theorem_envelope(r.combined, kModel, kAssim, 0.01, 0.0)));
}

TEST_CASE("condition report is self-contained and serializable") {
    const Grid g = Grid::make(1.0, 16);
    SpectralTransform tr(g);
    const SpectralVectorField u0 = initial_conditions_deterministic(tr).u0;
    const ConditionReport r = build_condition_report(kModel, kAssim, u0, kC, kC1, kC2);
    CHECK(r.lambda1 == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-15));
    CHECK(r.M1 == doctest::Approx(compute_M1(u0, 0.0, kModel)).epsilon(1e-15));
    CHECK(r.C1 == doctest::Approx(compute_C1(r.M1, kC, kModel)).epsilon(1e-15));
    CHECK(r.M_alpha > 0.0);
    const std::string kv = r.to_kv();
    for (const char* key :
         {"M1=", "C1=", "M_alpha=", "hyp1=", "hyp2=", "hyp3=", "regularity.eta_bound=",
          "lambda1=", "hypotheses_ok="})
        CHECK(kv.find(key) != std::string::npos);
}
