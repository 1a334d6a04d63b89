#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace spinboost::cli {

enum class Command { curve, saturation, critical, perp, verify };

enum class OutputFormat { csv, json };

/// Fully resolved run description shared by every subcommand. Masses are
/// fixed to 1, so momenta and widths are in mass units throughout.
struct RunConfig {
    Command command = Command::curve;

    double sigma_over_m = 1.0;

    double xi_min = 0.0;
    double xi_max = 10.0;
    int xi_steps = 41;

    double sigma_min = 0.5;
    double sigma_max = 4.0;
    int sigma_steps = 8;

    double p = 1.0;

    double bracket_low = 3.0;
    double bracket_high = 3.8;

    int n_radial = 128;
    int n_polar = 64;
    double p_max = 0.0;  // 0 = derived: 8 x max(largest sigma in the run, 1)

    std::uint64_t seed = 1;
    int samples = 10000;
    bool inject_failure = false;  // verify self-check: forces one failing row

    std::string output_path;  // empty = per-command default file name
    OutputFormat format = OutputFormat::csv;

    /// Throws std::domain_error naming the offending field.
    void validate() const;

    std::string resolved_output_path() const;
};

std::string to_string(Command command);
std::string to_string(OutputFormat format);

/// Executes the configured command: writes the data file and prints a
/// human-readable summary to `out`. Returns the process exit code:
/// 0 success (for verify: all properties passed), 1 failed verification,
/// 2 configuration error, 3 numerical non-convergence. Error text goes to
/// `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace spinboost::cli
