#ifndef MLALPHA_EXPERIMENT_HPP
#define MLALPHA_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "mlalpha/analysis.hpp"
#include "mlalpha/config.hpp"

namespace mlalpha {

/// z-midplane collocation samples of one vector field.
struct FieldSlice {
    std::string name; // e.g. "slice_u_t0"
    int n = 0;
    double length = 1.0;
    std::array<std::vector<double>, 3> components; // n*n row-major (x,y)
};

struct RunArtifacts {
    ExperimentConfig config;           // expanded, exactly as run
    ConditionReport condition_report;  // evaluated before integration
    std::vector<ErrorRecord> error_series;
    std::vector<FieldSlice> field_slices;
    std::string run_log;
    // parallel to error_series when config.emit_debug is set: the
    // denominator of the normalized column
    std::vector<double> debug_truth_combined;
};

/// Build initial data, evaluate the condition report, co-integrate the
/// twin systems to t_end and collect diagnostics every output_every
/// steps (plus the final partial interval). Hypothesis failures are
/// recorded, never skipped; the run proceeds regardless.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

/// Write errors.csv (header t,err_L2sq,err_H1sq,combined,normalized,envelope;
/// envelope empty when the hypotheses fail), conditions.txt, run.log,
/// plot.gp, optional slice CSVs and the optional debug dump. Returns the
/// paths written.
std::vector<std::string> emit_artifacts(const RunArtifacts& artifacts,
                                        const std::string& directory);

/// The gnuplot script alone (referenced from emit_artifacts).
std::string render_plot_script();

/// CSV text of the error series (exact bytes written to errors.csv).
std::string render_error_csv(const RunArtifacts& artifacts);

} // namespace mlalpha

#endif
