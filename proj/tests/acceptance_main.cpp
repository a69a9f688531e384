// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <cstdio>

#include "geomod/suites.hpp"

int main(int argc, char** argv) {
  geomod::RunConfig config;
  if (argc > 1) config = geomod::RunConfig::from_json_file(argv[1]);
  bool all = true;
  for (int id : geomod::suite_criteria("all")) {
    geomod::CriterionResult r = geomod::run_criterion(id, config);
    std::printf("%s criterion %2d: %s  (metric %.3e, threshold %.3e, %.1fs)%s%s\n",
                r.pass ? "[PASS]" : "[FAIL]", r.id, r.name.c_str(), r.metric, r.threshold,
                r.seconds, r.detail.empty() ? "" : "  -- ", r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
