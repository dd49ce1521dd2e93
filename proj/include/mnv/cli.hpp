#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mnv/grid.hpp"
#include "mnv/spinor.hpp"

namespace mnv::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationError = 1,
    kAcceptanceFailure = 2,
    kIoError = 3,
};

struct Thresholds {
    double max_residual = 1e-3;
    double min_order = 1.7;
    double max_deviation = 1e-3;
};

struct RunConfig {
    double C = 0.0;
    std::vector<Complex> spinor_p{Complex(0.0), Complex(1.0)};
    std::vector<Complex> spinor_q{Complex(1.0)};
    PlaneGrid grid{-2.0, 2.0, -2.0, 2.0, 32, 32};
    /// Absolute times; each command picks its own default when empty.
    std::vector<double> times;
    /// Explicit verification points (x, y, t); the grid at `times` otherwise.
    std::vector<SpaceTimePoint> points;
    /// Field CSV to verify instead of evaluating the field.
    std::string input;
    std::string out;
    double tol = 1e-4;
    std::size_t max_evaluations = 1'000'000;
    double h = 1e-3;
    double h_time = 1e-4;
    double order_h0 = 1e-2;
    Thresholds thresholds;
    int threads = 0;

    SpinorPair spinor() const;
    bool is_enneper() const;
};

/// "re:im,re:im,..." (":im" optional) as coefficients c0, c1, ...
std::vector<Complex> parse_coefficients(const std::string& text);

/// "XMIN,XMAX,YMIN,YMAX,NX,NY"
PlaneGrid parse_grid(const std::string& text);

/// Applies a JSON config document on top of `cfg`.
void apply_config_json(RunConfig& cfg, const std::string& json_text);

/**
 * Runs the command line `argv` (argv[0] is the program name). Primary output
 * goes to the --out file or to `out`; diagnostics and error JSON go to `err`.
 * Returns an ExitCode.
 */
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mnv::cli
