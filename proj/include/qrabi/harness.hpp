#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qrabi/model.hpp"

namespace qrabi {

enum class Command { Spectrum, Dynamics, Rabi, Splitting, Validate, Reproduce };
enum class OutputFormat { Csv, Json };

struct SweepSpec {
    std::string param = "g1";  // one of g1, g2, delta, epsilon
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    bool active = false;

    bool operator==(const SweepSpec&) const = default;
};

// Flat, fully value-typed run description.  Serializes to `key = value` lines
// and round-trips exactly; identical configs produce byte-identical output.
struct RunConfig {
    Command command = Command::Spectrum;
    ModelParams params;
    int n_tr = 60;    // photon truncation for the dense solvers
    int levels = 12;  // eigenvalues per spectrum point
    SweepSpec sweep;
    std::vector<std::string> methods;  // empty -> per-command defaults
    std::string out_path;              // empty -> stdout
    OutputFormat format = OutputFormat::Csv;
    int jobs = 0;  // sweep worker threads; 0 -> hardware concurrency
    std::string preset;
    double t_max = 200.0;  // dynamics window
    double dt = 0.05;
    int mode_index = 0;  // excitation index for rabi / analytic population
    int m_max = 60;      // manifold cap for the full emission spectrum
    std::string inject_fault;  // named fault for validation demos; normally empty

    bool operator==(const RunConfig&) const = default;
};

std::string serialize_config(const RunConfig& c);
RunConfig parse_config(const std::string& text);

// fig1..fig6 bundled settings (figure-caption parameter sets).
RunConfig preset_config(const std::string& name);

// Executes the configured command.  Tabular output goes to out_path, or to
// `out` when the path is empty; progress and warnings go to `log`.
// Returns the process exit code: 0 success, 2 solver failure, 3 validation
// failure.  (Usage errors never reach this layer.)
int run(const RunConfig& c, std::ostream& out, std::ostream& log);

// One entry of the validation suite report.
struct ValidationCheck {
    std::string name;
    double tolerance = 0.0;
    double observed = 0.0;
    bool pass = false;
    std::string note;  // optional context (grid, internal sizes, ...)
};

// The full cross-module invariant suite.  `inject_fault` may name a supported
// deliberate defect ("overlap-perturb") to demonstrate detection.
std::vector<ValidationCheck> run_validation_checks(const std::string& inject_fault = "");

}  // namespace qrabi
