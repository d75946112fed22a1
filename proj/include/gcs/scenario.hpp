#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gcs/oracle.hpp"
#include "gcs/tracks.hpp"
#include "gcs/types.hpp"

namespace gcs {

using Json = nlohmann::json;

enum class ExperimentKind { Classical, Stability, MobiusVsRiccati, Observables, Thermal };

// Fully validated scenario description.  Every field is checked during
// parsing; diagnostics name the offending config field.
struct ScenarioConfig {
    ExperimentKind experiment = ExperimentKind::Classical;
    Group group = Group::SU11;
    std::vector<double> weights;    // j, k, or m values; ignored for HW
    int N = 1;                      // U(N+1) mode count
    PhasePoint z0;
    CoefficientTrack track;
    int segments = 2048;
    int substeps = 8;
    int stride = 1;                 // CSV row every `stride` segments
    int trunc = 512;
    std::vector<double> beta_omega = {0.5, 1.0, 2.0, 5.0};
    int thermal_trunc = 256;
    std::string csv_path;
    std::string summary_path;
    std::string echo;               // original JSON text for the summary
};

ScenarioConfig parse_scenario(const Json& j);
ScenarioConfig load_scenario_file(const std::string& path);

// 17-significant-digit scientific formatting used for every CSV float.
std::string format_float(double v);

struct ScenarioOutput {
    std::string csv;       // full file body
    Json summary;
};

// Runs one scenario in memory.  File placement is handled by the CLI layer.
ScenarioOutput run_scenario(const ScenarioConfig& cfg);

// Cartesian sweep: base scenario plus value grids over selected scalar
// fields ("z0_re", "z0_im", "weight", "track.<channel>.<param>").  Scenario
// failures are recorded per grid point and do not stop the sweep.
Json run_sweep(const Json& sweep_config, int* failures = nullptr);

// Output directory override applied to csv/summary paths (environment
// variable GCS_OUTPUT_DIR).
std::string apply_output_dir(const std::string& path, const std::string& override_dir);

uint64_t fnv1a(const std::string& bytes);

}  // namespace gcs
