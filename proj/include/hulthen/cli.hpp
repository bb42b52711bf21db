#pragma once

#include "hulthen/potential.hpp"
#include "hulthen/scattering.hpp"

#include <optional>
#include <ostream>
#include <string>

namespace hulthen::cli {

enum class Command { Profile, Scatter, ScanE, ScanV0, Bound, Verify };
enum class Format { CSV, JSON };

std::string to_string(Command command);

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericalFailure = 3;

struct Grid {
    double min = 0.0;
    double max = 1.0;
    int n = 2;
};

/// Fully resolved settings for one command.
struct RunConfig {
    PotentialParams params;
    Command command = Command::Profile;
    Grid grid;
    std::optional<std::string> output_path;
    Format format = Format::CSV;

    double energy = 1.0;              ///< scatter, scan-v0
    int scan_points = 2000;           ///< bound, verify (well)
    double root_tol = 1e-9;           ///< bound, verify (well)
    std::optional<std::string> trace_path;  ///< bound: determinant trace CSV
    MatchingForm matching = MatchingForm::Rederived;

    /// Throws ParameterError when the config cannot run.
    void validate() const;
};

/// Each writes its full output to `out` and returns an exit code.
int run_profile(const RunConfig& cfg, std::ostream& out);
int run_scatter(const RunConfig& cfg, std::ostream& out);
int run_scan_e(const RunConfig& cfg, std::ostream& out);
int run_scan_v0(const RunConfig& cfg, std::ostream& out);
int run_bound(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out);

/// Formats a double with 17 significant digits.
std::string format_number(double v);

/// Parses the command line, runs the command and maps errors to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hulthen::cli
