#include "rimc/report.hpp"

#include <charconv>
#include <ostream>

#include <json.hpp>

namespace rimc {

namespace {

using Json = nlohmann::ordered_json;

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json config_json(const Config& c) {
  Json j;
  j["precision"] = c.d0;
  j["residual_tol"] = c.eps;
  j["indicator"] = c.legacy_indicator ? "legacy" : "nested_quadrature";
  j["indicator_threshold"] = c.legacy_indicator ? c.legacy_threshold : c.delta0;
  j["krylov_dim"] = c.m;
  j["quad_points"] = c.n0;
  j["seed"] = c.seed;
  j["max_depth"] = c.max_depth;
  j["shift_budget"] = c.shift_budget;
  j["initial_shift_grid"] = c.initial_shift_grid;
  j["krylov_reuse"] = c.krylov_reuse;
  j["threads"] = c.threads;
  return j;
}

}  // namespace

RunReport make_report(const SearchResult& result, const Config& cfg) {
  RunReport r;
  r.eigenvalues = result.eigenvalues;
  r.factorizations_built = result.stats.factorizations_built;
  r.node_solves = result.stats.node_solves;
  r.regions_tested = result.stats.regions_tested;
  r.config_echo = cfg;
  return r;
}

void write_json(std::ostream& out, const RunReport& report) {
  Json doc;
  Json eigs = Json::array();
  for (const auto& e : report.eigenvalues) {
    Json item;
    item["re"] = e.value.real();
    item["im"] = e.value.imag();
    item["box"] = e.box_half_side;
    item["indicator"] = e.indicator_value;
    item["boundary"] = e.boundary;
    eigs.push_back(std::move(item));
  }
  doc["eigenvalues"] = std::move(eigs);
  if (report.wall_time) doc["wall_time"] = *report.wall_time;
  doc["factorizations_built"] = report.factorizations_built;
  doc["node_solves"] = report.node_solves;
  doc["regions_tested"] = report.regions_tested;
  doc["config"] = config_json(report.config_echo);
  out << doc.dump(2) << '\n';
}

void write_csv(std::ostream& out, const RunReport& report) {
  out << "re,im,box,indicator,boundary\n";
  for (const auto& e : report.eigenvalues) {
    out << shortest(e.value.real()) << ',' << shortest(e.value.imag()) << ','
        << shortest(e.box_half_side) << ',' << shortest(e.indicator_value) << ','
        << (e.boundary ? "true" : "false") << '\n';
  }
}

void write_regions_json(std::ostream& out, const std::vector<RegionRecord>& tested) {
  Json arr = Json::array();
  for (const auto& t : tested) {
    Json item;
    item["re"] = t.region.center.real();
    item["im"] = t.region.center.imag();
    item["half_side"] = t.region.half_side;
    item["depth"] = t.region.depth;
    item["indicator"] = t.indicator.value;
    item["admissible"] = t.indicator.admissible;
    arr.push_back(std::move(item));
  }
  out << arr.dump() << '\n';
}

}  // namespace rimc
