#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppra/report.hpp"

namespace ppra {

// Named verification suites with hard budgets (the closed-form lemma checks,
// inequality grids, identity residuals, coefficient-extraction oracles).
// Each row names the mathematical anchor it checks so failures are
// traceable.  Suite names: identity, laplace, mtsum, ubound, zbound,
// supnorm, reconstruct, all.
const std::vector<std::string>& verify_suite_names();
bool is_verify_suite(const std::string& name);

struct VerifyOptions {
    std::uint64_t seed = 0;
    std::string cache_dir;  // empty: no lambda-table cache
};

// Runs one suite (or all) and returns the report; summary.fail_count > 0
// means at least one hard budget failed.
ReportDocument run_verify(const std::string& suite, const VerifyOptions& options);

}  // namespace ppra
