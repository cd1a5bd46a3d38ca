#include "mlalpha/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "mlalpha/experiment.hpp"
#include "mlalpha/oracles.hpp"

namespace mlalpha {

namespace {

int do_run(const std::string& config_path, const std::string& output_override,
           long seed_override, bool has_seed) {
    ExperimentConfig cfg = load_config(config_path);
    if (!output_override.empty()) cfg.output_dir = output_override;
    if (has_seed) cfg.seed = static_cast<std::uint64_t>(seed_override);

    const RunArtifacts artifacts = run_experiment(cfg);
    const auto written = emit_artifacts(artifacts, cfg.output_dir);

    const ErrorRecord& first = artifacts.error_series.front();
    const ErrorRecord& last = artifacts.error_series.back();
    std::cout << "preset: " << to_string(cfg.preset) << "\n";
    std::cout << "records: " << artifacts.error_series.size() << "\n";
    std::cout << "normalized error: initial " << format_double(first.normalized)
              << ", final " << format_double(last.normalized) << "\n";
    std::cout << "regularity conditions: "
              << (artifacts.condition_report.regularity_ok() ? "PASS" : "FAIL") << "\n";
    std::cout << "convergence hypotheses: "
              << (artifacts.condition_report.hypotheses_ok() ? "PASS" : "FAIL") << "\n";
    for (const auto& path : written) std::cout << "wrote " << path << "\n";
    return 0;
}

int do_check(const std::string& config_path) {
    ExperimentConfig cfg = load_config(config_path);
    const Grid grid = cfg.grid();
    SpectralTransform transform(grid);
    const ModelParams model = cfg.model(grid);
    const AssimilationParams assim = cfg.assim();
    const InitialConditions ic = cfg.random_initial
                                     ? initial_conditions_random(transform, cfg.seed)
                                     : initial_conditions_deterministic(transform);
    const ConditionReport report =
        build_condition_report(model, assim, ic.u0, cfg.c_gn, cfg.c1, cfg.c2);
    std::cout << report.to_kv();
    auto verdict = [](bool b) { return b ? "PASS" : "FAIL"; };
    std::cout << "summary: regularity " << verdict(report.regularity_ok())
              << ", hypothesis(1) " << verdict(report.hypotheses.hyp1.pass)
              << ", hypothesis(2) " << verdict(report.hypotheses.hyp2.pass)
              << ", hypothesis(3) " << verdict(report.hypotheses.hyp3.pass) << "\n";
    return 0;
}

int do_presets() {
    for (Preset p : all_presets()) {
        const ExperimentConfig cfg = preset_config(p);
        std::cout << to_string(p) << ": nu=" << format_double(cfg.nu)
                  << " alpha=" << format_double(cfg.alpha)
                  << " beta=" << format_double(cfg.beta)
                  << " eta=" << format_double(cfg.eta) << " h=" << format_double(cfg.h)
                  << " N=" << cfg.grid_n << " dt=" << format_double(cfg.step.dt)
                  << " t_end=" << format_double(cfg.step.t_end)
                  << " interpolant=" << to_string(cfg.interpolant)
                  << " random_initial=" << (cfg.random_initial ? "true" : "false")
                  << "\n";
    }
    return 0;
}

int do_verify(int trials, std::uint64_t seed) {
    const OracleResult results[] = {
        gronwall_ode_oracle(seed, 20),
        interpolant_property_oracle(trials, seed),
        bilinear_brute_force_oracle(seed, 5),
    };
    bool all = true;
    for (const OracleResult& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (" << r.detail
                  << ")\n";
        all = all && r.pass;
    }
    return all ? 0 : 3;
}

} // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"pseudo-spectral twin-experiment solver for the 3D modified "
                 "Leray-alpha model with nudging-based data assimilation"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    long seed = 0;

    auto* run = app.add_subcommand("run", "integrate the twin systems and emit artifacts");
    run->add_option("--config", config_path, "configuration file")->required();
    run->add_option("--output", output_dir, "output directory override");
    auto* seed_opt = run->add_option("--seed", seed, "seed override for random presets");

    auto* check = app.add_subcommand("check", "evaluate the condition report only");
    check->add_option("--config", config_path, "configuration file")->required();

    app.add_subcommand("presets", "list built-in experiment presets");

    int trials = 100;
    long vseed = 7;
    auto* verify = app.add_subcommand("verify", "run the independent oracle suites");
    verify->add_option("--trials", trials, "trials for the interpolant property");
    verify->add_option("--seed", vseed, "oracle seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("run"))
            return do_run(config_path, output_dir, seed, seed_opt->count() > 0);
        if (app.got_subcommand("check")) return do_check(config_path);
        if (app.got_subcommand("presets")) return do_presets();
        if (app.got_subcommand("verify"))
            return do_verify(trials, static_cast<std::uint64_t>(vseed));
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

} // namespace mlalpha
