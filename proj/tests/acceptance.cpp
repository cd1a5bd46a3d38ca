// Acceptance suite: every release criterion of the twin-experiment
// toolkit, runnable one at a time (argument: criterion id) or all at
// once. Prints one PASS/FAIL line per criterion.

#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mlalpha/cli.hpp"
#include "mlalpha/experiment.hpp"
#include "mlalpha/oracles.hpp"
#include "test_helpers.hpp"

using namespace mlalpha;
using mlalpha::testing::max_abs_difference;
using mlalpha::testing::random_divfree_band_limited;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream log;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            log << "    FAILED: " << what << "\n";
        }
    }
    void note(const std::string& what) { log << "    " << what << "\n"; }
};

std::string fmt(double v) { return format_double(v); }

ExperimentConfig benchmark_config(const std::string& preset, double t_end) {
    ExperimentConfig cfg = parse_config("preset=" + preset + "\n");
    cfg.step.t_end = t_end;
    cfg.step.output_every = 100;
    cfg.emit_slices = false;
    return cfg;
}

double normalized_initial(const RunArtifacts& a) {
    return a.error_series.front().normalized;
}

double normalized_min(const RunArtifacts& a) {
    double m = std::numeric_limits<double>::infinity();
    for (const ErrorRecord& r : a.error_series) m = std::min(m, r.normalized);
    return m;
}

// combined error dominated by the convergence-theorem envelope with the
// run's own computed constants, at every output time
void check_envelope_domination(Outcome& out, const RunArtifacts& a) {
    const ModelParams p =
        ModelParams::make(a.config.nu, a.config.alpha, a.config.grid_l);
    const AssimilationParams assim = a.config.assim();
    const double g0 = a.error_series.front().combined;
    const double m_alpha = a.condition_report.M_alpha;
    double worst = 0.0;
    for (const ErrorRecord& r : a.error_series) {
        const double env = theorem_envelope(g0, p, assim, m_alpha, r.t);
        if (env > 0.0) worst = std::max(worst, r.combined / env);
        out.require(r.combined <= env * (1 + 1e-12),
                    "combined error " + fmt(r.combined) + " exceeds envelope " + fmt(env) +
                        " at t=" + fmt(r.t));
    }
    out.note("worst combined/envelope ratio " + fmt(worst) + " (M_alpha " + fmt(m_alpha) + ")");
}

// --------------------------------------------------------------------------

Outcome criterion_1() {
    Outcome out;
    ExperimentConfig cfg = benchmark_config("deterministic-high-eta", 60.0);
    cfg.preset = Preset::Custom;
    cfg.beta = 0.3; // exact lengthscale
    const RunArtifacts a = run_experiment(cfg);
    const double floor_reached = normalized_min(a);
    out.note("normalized error: initial " + fmt(normalized_initial(a)) + ", minimum " +
             fmt(floor_reached));
    out.require(floor_reached < 1e-12, "normalized error never fell below 1e-12 by t=60");
    out.require(a.condition_report.M_alpha == 0.0, "M_alpha must vanish when beta equals alpha");
    check_envelope_domination(out, a); // pure-exponential envelope here
    return out;
}

Outcome criterion_2() {
    Outcome out;
    const RunArtifacts a = run_experiment(benchmark_config("deterministic-high-eta", 100.0));
    const double n0 = normalized_initial(a);
    const double nmin = normalized_min(a);
    out.note("normalized error: initial " + fmt(n0) + ", minimum " + fmt(nmin));
    out.require(nmin <= 1e-6 * n0,
                "normalized error did not decrease by 6 orders of magnitude by t=100");
    check_envelope_domination(out, a);
    // the error history is monotone after the initial transient, down to
    // the round-off floor where the ratio merely jitters
    double prev = std::numeric_limits<double>::infinity();
    for (const ErrorRecord& r : a.error_series) {
        if (r.t < 1.0 || r.normalized < 1e-20) continue;
        out.require(r.normalized <= prev * (1 + 1e-9),
                    "normalized error increased at t=" + fmt(r.t));
        prev = r.normalized;
    }
    return out;
}

Outcome criterion_3() {
    Outcome out;
    const RunArtifacts a = run_experiment(benchmark_config("deterministic-low-eta", 100.0));
    out.require(!a.condition_report.hypotheses.hyp1.pass,
                "hypothesis (1) should FAIL for eta = 1e-4");
    out.note("C1 " + fmt(a.condition_report.C1) + " vs eta " + fmt(a.config.eta));
    const double n0 = normalized_initial(a);
    double nmin = std::numeric_limits<double>::infinity();
    for (const ErrorRecord& r : a.error_series) nmin = std::min(nmin, r.normalized);
    out.note("normalized error: initial " + fmt(n0) + ", minimum over [0,100] " + fmt(nmin));
    out.require(nmin >= 1e-2 * n0,
                "normalized error fell below 1e-2 of its initial value: systems synchronized");
    return out;
}

Outcome criterion_4_seed(std::uint64_t seed) {
    Outcome out;
    ExperimentConfig cfg = benchmark_config("random-high-eta", 100.0);
    cfg.seed = seed;
    const RunArtifacts a = run_experiment(cfg);
    const double n0 = normalized_initial(a);
    const double nmin = normalized_min(a);
    out.note("seed " + std::to_string(seed) + ": normalized initial " + fmt(n0) +
             ", minimum " + fmt(nmin) + ", M1 " + fmt(a.condition_report.M1));
    out.require(nmin <= 1e-6 * n0, "normalized error did not converge for seed " +
                                       std::to_string(seed));
    check_envelope_domination(out, a);
    return out;
}

Outcome criterion_5() {
    Outcome out;
    const ModelParams p = ModelParams::make(0.75, 0.3, 1.0);
    const AssimilationParams high = AssimilationParams::make(0.35, 1.5, 0.043);
    const double c = default_gn_constant();
    const double c1 = std::sqrt(32.0), c2 = 2.0;

    const RegularityVerdicts reg = check_regularity_conditions(p, high, c1, c2);
    out.note("eta bound " + fmt(reg.eta_bound.rhs) + ", stiffness " +
             fmt(reg.stiffness.lhs) + " vs " + fmt(reg.stiffness.rhs));
    out.require(std::abs(reg.eta_bound.rhs / 6.34 - 1.0) <= 1e-3,
                "eta bound deviates from 6.34");
    out.require(std::abs(reg.stiffness.lhs / 3.08e-5 - 1.0) <= 1e-3,
                "stiffness left side deviates from 3.08e-5");
    out.require(std::abs(reg.stiffness.rhs / 0.1406 - 1.0) <= 1e-3,
                "stiffness right side deviates from 0.1406");
    out.require(reg.all_pass(), "regularity conditions must PASS for the benchmark set");

    // hypothesis verdicts for the benchmark parameter set, with its
    // quoted a-priori bound M1 = 0.00339 as input
    const double M1_quoted = 0.00339;
    const HypothesisVerdicts hv = check_convergence_hypotheses(p, high, M1_quoted, c, c1, c2);
    out.require(hv.hyp1.pass && hv.hyp2.pass && hv.hyp3.pass,
                "hypotheses must PASS for eta = 1.5 with the quoted M1");
    AssimilationParams low = high;
    low.eta = 1e-4;
    const HypothesisVerdicts lv = check_convergence_hypotheses(p, low, M1_quoted, c, c1, c2);
    out.require(!lv.hyp1.pass, "hypothesis (1) must FAIL for eta = 1e-4");

    // C1 values are reported, not asserted: the quoted 0.00739 does not
    // follow from the formula with the quoted inputs
    Grid g = Grid::make(1.0, 32);
    SpectralTransform tr(g);
    const double M1_recomputed =
        compute_M1(initial_conditions_deterministic(tr).u0, 0.0, p);
    out.note("C1 from quoted M1: " + fmt(hv.C1) + "; C1 from recomputed M1 (" +
             fmt(M1_recomputed) + "): " + fmt(compute_C1(M1_recomputed, c, p)) +
             "; quoted C1 value: 0.00739 (logged, unverified)");
    return out;
}

Outcome criterion_6() {
    Outcome out;
    const Grid g = Grid::make(1.0, 32);
    SpectralTransform tr(g);
    const ModelParams p = ModelParams::make(0.75, 0.3, 1.0);
    const AssimilationParams a = AssimilationParams::make(0.35, 1.5, 0.043);
    StepConfig cfg;
    cfg.dt = 1e-3;
    TwinStepper st(tr, p, a, cfg);
    SpectralVectorField u = initial_conditions_deterministic(tr).u0;

    const double alpha2 = p.alpha * p.alpha;
    const double e0 = norm_L2_sq(u) + alpha2 * norm_H1_sq(u);
    double prev = e0;
    double worst_ratio = 0.0;
    const double lam1 = g.lambda1();
    for (long s = 1; s <= 5000; ++s) {
        st.step_truth(u);
        if (s % 100 != 0) continue;
        const double t = s * cfg.dt;
        const double e = norm_L2_sq(u) + alpha2 * norm_H1_sq(u);
        out.require(e <= prev * (1 + 1e-13),
                    "energy increased across output interval at t=" + fmt(t));
        const double bound = 1.05 * std::exp(-p.nu * lam1 * t) * e0;
        out.require(e <= bound, "energy " + fmt(e) + " above the decay bound " + fmt(bound) +
                                    " at t=" + fmt(t));
        if (bound > 0.0) worst_ratio = std::max(worst_ratio, e / bound);
        prev = e;
    }
    out.note("worst energy/bound ratio " + fmt(worst_ratio));
    return out;
}

Outcome criterion_7() {
    Outcome out;
    // bilinear antisymmetry on 50 random divergence-free pairs
    {
        const Grid g = Grid::make(1.0, 16);
        SpectralTransform tr(g);
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 50; ++s) {
            const SpectralVectorField v = random_divfree_band_limited(g, 3000 + s);
            const SpectralVectorField w = random_divfree_band_limited(g, 4000 + s);
            const double ip = std::abs(inner_product_L2(bilinear_B(tr, v, w), w));
            const double bound = 1e-12 * norm_L2(v) * norm_H1_sq(w);
            worst = std::max(worst, bound > 0 ? ip / bound : 0.0);
            out.require(ip <= bound, "antisymmetry residual above tolerance");
        }
        out.note("worst antisymmetry residual ratio " + fmt(worst));
    }
    // brute-force convolution equivalence on 8^3
    {
        const OracleResult r = bilinear_brute_force_oracle(2024, 5, 1e-12);
        out.require(r.pass, "bilinear term deviates from the convolution sum");
        out.note(r.detail);
    }
    // filter round trip and projection idempotence
    {
        const Grid g = Grid::make(1.0, 16);
        for (std::uint64_t s = 1; s <= 10; ++s) {
            const SpectralVectorField u = random_smooth_field(g, 500 + s);
            const double scale = max_coefficient(u);
            for (double alpha : {0.0, 0.3, 1.7}) {
                const SpectralVectorField round =
                    helmholtz_filter_inverse(helmholtz_filter_apply(u, alpha), alpha);
                out.require(max_abs_difference(round, u) <= 1e-13 * scale,
                            "filter apply/inverse round trip above 1e-13");
            }
            const SpectralVectorField p1 = leray_project(u);
            const SpectralVectorField p2 = leray_project(p1);
            out.require(max_abs_difference(p1, p2) <= 1e-13 * max_coefficient(p1),
                        "projection is not idempotent to 1e-13");
        }
    }
    // divergence-free residual below 1e-12 after every step of a
    // 1000-step benchmark run
    {
        const Grid g = Grid::make(1.0, 32);
        SpectralTransform tr(g);
        const ModelParams p = ModelParams::make(0.75, 0.3, 1.0);
        const AssimilationParams a = AssimilationParams::make(0.35, 1.5, 0.043);
        StepConfig cfg;
        cfg.dt = 1e-3;
        TwinStepper st(tr, p, a, cfg);
        const auto ic = initial_conditions_deterministic(tr);
        TwinState state(ic.u0, ic.w0, 0.0);
        double worst = 0.0;
        for (int s = 0; s < 1000; ++s) {
            st.step_twin(state);
            worst = std::max(worst, std::max(divergence_residual(state.u),
                                             divergence_residual(state.w)));
        }
        out.note("worst divergence residual over 1000 steps " + fmt(worst));
        out.require(worst < 1e-12, "divergence residual reached " + fmt(worst));
    }
    return out;
}

Outcome criterion_8() {
    Outcome out;
    const Grid g = Grid::make(1.0, 32);
    SpectralTransform tr(g);
    for (InterpolantKind kind : {InterpolantKind::Modal, InterpolantKind::VolumeAverage}) {
        const InterpolantSpec spec = InterpolantSpec::make(kind, 0.043, 1.0);
        const ApproximationReport r = verify_approximation_property(tr, spec, 100, 2024);
        out.note(to_string(kind) + ": worst lhs/rhs " + fmt(r.worst_ratio) +
                 ", boundedness " + fmt(r.boundedness_constant));
        out.require(r.pass, "approximation property violated for " + to_string(kind));
    }
    // modal idempotence is exact
    const InterpolantSpec spec = InterpolantSpec::make(InterpolantKind::Modal, 0.3, 1.0);
    const SpectralVectorField u = random_smooth_field(g, 11);
    const SpectralVectorField once = apply_interpolant(tr, u, spec);
    const SpectralVectorField twice = apply_interpolant(tr, once, spec);
    out.require(max_abs_difference(once, twice) == 0.0, "modal idempotence is not exact");
    return out;
}

Outcome criterion_9() {
    Outcome out;
    const OracleResult r = gronwall_ode_oracle(2024, 20);
    out.note(r.detail);
    out.require(r.pass, "a dense ODE solution exceeded the Gronwall envelope");
    return out;
}

Outcome criterion_10() {
    Outcome out;
    ExperimentConfig cfg = benchmark_config("random-high-eta", 2.0);
    cfg.seed = 7;
    cfg.emit_slices = true;
    const RunArtifacts a = run_experiment(cfg);
    const RunArtifacts b = run_experiment(cfg);
    const std::string csv_a = render_error_csv(a);
    out.require(csv_a == render_error_csv(b), "two identical runs produced different csv bytes");
    out.require(!csv_a.empty(), "empty csv");
    out.note("errors.csv bytes " + std::to_string(csv_a.size()) + ", records " +
             std::to_string(a.error_series.size()));
    return out;
}

struct Criterion {
    std::string id;
    std::string title;
    std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {"1", "synchronization with exact lengthscale reaches 1e-12 by t=60", criterion_1},
    {"2", "mismatched lengthscale converges 6 orders and respects the envelope", criterion_2},
    {"3", "low-eta twin fails hypothesis (1) and never synchronizes", criterion_3},
    {"4a", "random-perturbation robustness, seed 1", [] { return criterion_4_seed(1); }},
    {"4b", "random-perturbation robustness, seed 2", [] { return criterion_4_seed(2); }},
    {"4c", "random-perturbation robustness, seed 3", [] { return criterion_4_seed(3); }},
    {"5", "condition-checker regression on the benchmark parameter set", criterion_5},
    {"6", "truth energy is monotone and below the a-priori decay bound", criterion_6},
    {"7", "operator property suite", criterion_7},
    {"8", "interpolant approximation property suite", criterion_8},
    {"9", "windowed Gronwall envelope oracle", criterion_9},
    {"10", "byte-identical artifacts for identical config and seed", criterion_10},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wanted;
    for (int i = 1; i < argc; ++i) wanted.emplace_back(argv[i]);
    if (wanted.empty() || (wanted.size() == 1 && wanted[0] == "all"))
        wanted = {"1", "2", "3", "4a", "4b", "4c", "5", "6", "7", "8", "9", "10"};
    if (wanted.size() == 1 && wanted[0] == "4") wanted = {"4a", "4b", "4c"};

    int failures = 0;
    bool matched_any = false;
    for (const std::string& id : wanted) {
        const Criterion* c = nullptr;
        for (const Criterion& k : kCriteria)
            if (k.id == id) c = &k;
        if (!c) {
            std::cerr << "unknown criterion '" << id << "'\n";
            return 64;
        }
        matched_any = true;
        Outcome out;
        try {
            out = c->run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.log << "    EXCEPTION: " << e.what() << "\n";
        }
        std::cout << "criterion " << c->id << ": " << (out.pass ? "PASS" : "FAIL") << " — "
                  << c->title << "\n"
                  << out.log.str();
        std::cout.flush();
        if (!out.pass) ++failures;
    }
    return matched_any ? (failures == 0 ? 0 : 1) : 64;
}
