#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppra/report.hpp"
#include "ppra/representation.hpp"

namespace ppra::cli {

enum class Command { sieve, rep, window, ladder, verify, expsum };

struct RunConfig {
    Command command = Command::sieve;
    std::vector<int> tuple;                  // from --k, each >= 2
    std::int64_t n = 0;                      // --N
    std::int64_t h = 0;                      // --H
    std::int64_t limit = 0;                  // --limit
    double h_exponent = 0.62;
    double epsilon = 0.05;
    double c1 = 1.0;
    double trunc_tau = 50.0;
    bool rh_mode = false;
    ReportFormat format = ReportFormat::csv;
    std::string cache_dir;                   // --cache-dir or PPRA_CACHE_DIR
    int workers = 0;                         // 0: hardware default
    std::uint64_t seed = 0;
    std::string out_path;                    // empty: stdout
    std::string suite = "all";               // verify
    std::vector<std::int64_t> n_list;        // ladder
    ConvStrategy strategy = ConvStrategy::automatic;
    std::int64_t grid = 4097;                // expsum samples
    double alpha_min = -0.5;
    double alpha_max = 0.5;
    double l2_xi = 0.0;                      // expsum: emit l2 E~ diagnostic when > 0
    double l2_tau = 0.0;                     // expsum: emit l2 S~ diagnostic when > 0
    double i4_b = 0.0;                       // expsum: tail-integral diagnostic when > 0
    bool force_scalar = false;
};

// exit 2, message names the offending flag
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct HelpRequested {
    std::string text;
};

RunConfig parse_args(const std::vector<std::string>& args);

// exit 0: success; 1: a mathematical budget failed (or non-finite output);
// 2: usage error; 3: I/O failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace ppra::cli
