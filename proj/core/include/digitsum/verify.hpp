#pragma once

// Reference data and the end-to-end acceptance checks shared by the
// acceptance test and the `verify-paper` command.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace digitsum {

/// Rows of exact values for t = 1..15, row r holding k = k_top - r. Blank
/// cells are "0".
struct ReferenceTable {
  int64_t k_top = 0;
  std::vector<std::vector<std::string>> rows;
};

/// delta(k, t) for k = 4..-3.
const ReferenceTable& delta_reference_table();
/// phi(k, t) for k = 3..-3.
const ReferenceTable& phi_reference_table();

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  unsigned workers = 4;
  unsigned scan_bits = 20;    // c~_t <= 1/2 < c_t for t < 2^scan_bits
  unsigned pt_bits = 16;      // p_t >= 1/2 for t < 2^pt_bits
  int special_j = 10000;      // c_{t_j} > 1/2 for j <= special_j
};

inline constexpr int kCriterionCount = 15;

/// Runs one check; ids 1..15. Exceptions inside a check turn into failures.
CriterionResult run_criterion(int id, const VerifyOptions& options = {});

/// Runs every check in order, calling `progress` after each.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {},
                                            const std::function<void(const CriterionResult&)>& progress = {});

/// "PASS  3  c_t prefix  (0.01 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace digitsum
