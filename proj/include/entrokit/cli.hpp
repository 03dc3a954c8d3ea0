#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace entrokit::cli {

// Exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;          // parse/validation failure
inline constexpr int kExitNonConvergence = 3; // numerical non-convergence

struct RangeSpec {
    double lo = 0.0;
    double hi = 0.0;
    long long steps = 0;
};

// Fully parsed invocation; `run` validates cross-field constraints (for
// example that --alpha accompanies exactly the Renyi variants).
struct RunConfig {
    std::string command;            // compute | discretize | converge | thresholds | curves
    std::string dist;               // density text spec
    std::string variant;            // entropy variant or schedule functional name
    std::optional<double> alpha;
    std::string partition;          // partition text spec (discretize)
    std::string schedule;           // schedule text spec (converge)
    std::optional<RangeSpec> range; // parameter range (curves)
    std::string figure;             // curve set name (curves)
    std::string format = "csv";     // csv | json
    std::string out;                // output path or curve base path; empty = stdout
    bool include_tails = false;
    bool paper_literal = false;
    std::string alphas;             // comma list for `thresholds`
};

RangeSpec parse_range_spec(const std::string& text);

// Executes one command, writing tables to `out` (and/or files next to
// config.out).  Returns one of the exit codes above; error text goes to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace entrokit::cli
