#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "rimc/recursive_search.hpp"

namespace rimc {

/// What one CLI run emits. Counters are exact event counts.
struct RunReport {
  std::vector<EigenvalueEstimate> eigenvalues;
  std::optional<double> wall_time;  // seconds; only emitted when requested
  std::size_t factorizations_built = 0;
  std::size_t node_solves = 0;
  std::size_t regions_tested = 0;
  Config config_echo;
};

RunReport make_report(const SearchResult& result, const Config& cfg);

/// Fixed field order; floats in shortest round-trip form.
void write_json(std::ostream& out, const RunReport& report);
/// Header `re,im,box,indicator,boundary`, one row per estimate.
void write_csv(std::ostream& out, const RunReport& report);
/// Tested-region tree for external plotting.
void write_regions_json(std::ostream& out, const std::vector<RegionRecord>& tested);

}  // namespace rimc
