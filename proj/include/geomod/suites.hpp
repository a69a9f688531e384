#pragma once

#include <cstdint>
#include <optional>

#include "geomod/jsonio.hpp"

namespace geomod {

struct RunConfig {
  std::string group = "gamma0_11";
  std::optional<Complex> basepoint;
  double tol = 1e-9;
  long c_bound = 32;
  std::string format = "text";  // text | json
  std::string cache_dir;        // empty: $GEOMOD_CACHE or .geomod-cache
  std::uint64_t seed = 20240601;
  int jobs = 1;

  static RunConfig from_json(const Json& j);
  static RunConfig from_json_file(const std::string& path);
  Json to_json() const;
  std::string resolved_cache_dir() const;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double metric = 0.0;     // worst observed value
  double threshold = 0.0;  // pinned bound the metric must stay under
  double seconds = 0.0;
  std::string detail;
};

/// suite name: chen | order | cuspidal | poincare | filtration | all
std::vector<int> suite_criteria(const std::string& suite_name);
CriterionResult run_criterion(int id, const RunConfig& config);
std::vector<CriterionResult> run_criteria(const std::string& suite_name, const RunConfig& config);

Json criteria_report_json(const std::string& suite_name, const RunConfig& config,
                          const std::vector<CriterionResult>& results);

/// Executes a suite, writes its JSON report under report_dir, prints a text
/// table.  Returns 0 when all assertions hold, 1 otherwise.
int run_suite(const std::string& suite_name, const RunConfig& config,
              const std::string& report_dir);

}  // namespace geomod
