#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace u3 {

/// Bounds for a property run; unset fields use the acceptance defaults
/// pinned in the registry.
struct CheckOptions {
  std::optional<int> depth;
  std::optional<long long> height;
  std::optional<int> samples;
  std::optional<int> window;
  std::optional<int> budget;
  std::optional<long long> N;
  std::optional<long long> M;
  std::uint64_t seed = 7;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  long long checked = 0;
  double seconds = 0.0;
  std::string detail;
  std::vector<std::string> failures;  // reproducer descriptions
};

const std::vector<std::string>& check_names();

/// Runs one named property suite. Unknown names throw invalid_argument.
CheckResult run_check(const std::string& name, const CheckOptions& opts = {});

}  // namespace u3
