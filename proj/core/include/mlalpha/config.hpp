#ifndef MLALPHA_CONFIG_HPP
#define MLALPHA_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mlalpha/timestepper.hpp"

namespace mlalpha {

enum class Preset {
    DeterministicHighEta,
    DeterministicLowEta,
    RandomHighEta,
    RandomLowEta,
    Custom,
};

std::string to_string(Preset p);
Preset preset_from_string(const std::string& s);

struct ForcingSpec {
    // "zero" or "mode:KX,KY,KZ:AMP" (a steady single-mode solenoidal field)
    bool zero = true;
    int kx = 0, ky = 0, kz = 0;
    double amplitude = 0.0;

    bool operator==(const ForcingSpec&) const = default;

    std::string to_string() const;
    static ForcingSpec parse(const std::string& s);
};

/// Full experiment description. Presets populate every field with the
/// benchmark values; explicit keys override afterwards.
struct ExperimentConfig {
    Preset preset = Preset::Custom;

    // grid
    int grid_n = 32;
    double grid_l = 1.0;
    double grid_dealias = 2.0 / 3.0;

    // model
    double nu = 0.75;
    double alpha = 0.3;
    ForcingSpec forcing;

    // assimilation
    double beta = 0.35;
    double eta = 1.5;
    double h = 0.043;
    InterpolantKind interpolant = InterpolantKind::Modal;
    double c1 = 5.656854249492381; // sqrt(32)
    double c2 = 2.0;

    // analysis constant
    double c_gn; // set in the default constructor

    // stepping
    StepConfig step;

    // run control
    std::uint64_t seed = 1;
    bool random_initial = false;
    std::string output_dir = "out";
    bool emit_slices = true;
    bool emit_debug = false;

    ExperimentConfig();

    bool operator==(const ExperimentConfig&) const = default;

    Grid grid() const { return Grid::make(grid_l, grid_n, grid_dealias); }
    ModelParams model(const Grid& g) const;
    AssimilationParams assim() const;
    InterpolantSpec interpolant_spec() const;

    void validate() const;
};

/// Expand a preset into a fully populated config.
ExperimentConfig preset_config(Preset p);
std::vector<Preset> all_presets();

/// Parse the plain-text key=value format ('#' comments, dotted keys,
/// presets expand before overrides apply). Unknown keys and non-positive
/// physical parameters are errors carrying the offending line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Lossless text form: the preset tag plus every key spelled explicitly.
std::string serialize_config(const ExperimentConfig& cfg);

/// 17-significant-digit, locale-independent float formatting used by all
/// emitted artifacts.
std::string format_double(double v);

} // namespace mlalpha

#endif
