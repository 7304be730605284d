// Serialization: CSV traces and summaries (17 significant digits, LF line
// endings) and JSON reports (shortest round-trip doubles via nlohmann::json).
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subgrad/analysis.hpp"
#include "subgrad/descent.hpp"
#include "subgrad/errors.hpp"
#include "subgrad/harness.hpp"

namespace subgrad {

using json = nlohmann::json;

/// 17 significant digits: enough to reproduce any double exactly on parse.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw numeric_failure_error("cannot open for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw numeric_failure_error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Trace CSV

inline std::string trace_to_csv(const Trace& trace) {
  std::string s = "t,observed_dist,step_size,grad_norm\n";
  for (std::size_t t = 0; t < trace.iterates.size(); ++t) {
    const double step = t < trace.step_sizes.size() ? trace.step_sizes[t] : 0.0;
    s += std::to_string(t) + "," + fmt17(trace.distances[t]) + "," + fmt17(step) + "," +
         fmt17(trace.grad_norms[t]) + "\n";
  }
  return s;
}

struct ParsedTraceCsv {
  std::vector<double> distances;
  std::vector<double> step_sizes;
  std::vector<double> grad_norms;
};

inline ParsedTraceCsv parse_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input_error("cannot open: " + path.string());
  ParsedTraceCsv out;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');  // t
    std::getline(ss, cell, ',');
    out.distances.push_back(std::stod(cell));
    std::getline(ss, cell, ',');
    out.step_sizes.push_back(std::stod(cell));
    std::getline(ss, cell, ',');
    out.grad_norms.push_back(std::stod(cell));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON reports

inline json to_json(const ConditionSpec& spec) {
  return json{{"mu_hat", spec.mu_hat},
              {"n_samples", spec.n_samples},
              {"exclusion_radius", spec.exclusion_radius},
              {"radius", spec.radius}};
}

inline const char* constant_field_name(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::sharpness: return "m_hat";
    case PropertyKind::weak_convexity: return "rho_hat";
    case PropertyKind::quasar_convexity: return "gamma_hat";
    default: return "M_hat";
  }
}

inline json to_json(const PropertyReport& rep) {
  json j{{"property", to_string(rep.property)},
         {constant_field_name(rep.property), rep.constant},
         {"holds", rep.holds},
         {"samples_checked", rep.samples_checked}};
  j["witness"] = rep.witness ? json(*rep.witness) : json(nullptr);
  return j;
}

inline json to_json(const LemmaBounds& lb) {
  json j;
  j["lemma2_ok"] = lb.lemma2_ok ? json(*lb.lemma2_ok) : json(nullptr);
  j["lemma3_ok"] = lb.lemma3_ok ? json(*lb.lemma3_ok) : json(nullptr);
  return j;
}

inline json to_json(const std::vector<PropertyReport>& reports, const LemmaBounds& lb) {
  json arr = json::array();
  for (const PropertyReport& r : reports) arr.push_back(to_json(r));
  return json{{"reports", arr}, {"lemma_bounds", to_json(lb)}};
}

inline json to_json(const BoundReport& rep) {
  json per = json::array();
  for (const BoundEntry& e : rep.per_iter) {
    per.push_back(json{{"t", e.t},
                       {"observed_dist", e.observed_dist},
                       {"bound_value", e.bound_value},
                       {"satisfied", e.satisfied}});
  }
  return json{{"theorem", to_string(rep.theorem)},
              {"theoretical_rate", rep.theoretical_rate},
              {"fitted_rate", rep.fitted_rate},
              {"worst_slack", rep.worst_slack},
              {"all_satisfied", rep.all_satisfied()},
              {"per_iter", per}};
}

inline std::string bound_report_to_csv(const BoundReport& rep) {
  std::string s = "t,observed_dist,bound_value,satisfied\n";
  for (const BoundEntry& e : rep.per_iter) {
    s += std::to_string(e.t) + "," + fmt17(e.observed_dist) + "," + fmt17(e.bound_value) + "," +
         (e.satisfied ? "1" : "0") + "\n";
  }
  return s;
}

inline json schedule_to_json(const Schedule& s) {
  json j{{"name", schedule_name(s)}};
  if (const auto* g = std::get_if<GeometricExact>(&s)) {
    j["r"] = g->r;
    j["dist0"] = g->dist0;
  } else if (const auto* b = std::get_if<GeometricBanded>(&s)) {
    j["r"] = b->r;
    j["beta"] = b->beta;
    j["R"] = b->R;
  } else if (const auto* p = std::get_if<Polyak>(&s)) {
    j["f_star"] = p->f_star;
  } else {
    j["eta"] = std::get<Constant>(s).eta;
  }
  return j;
}

inline json to_json(const std::vector<ScheduleComparisonRow>& rows) {
  json arr = json::array();
  for (const ScheduleComparisonRow& r : rows) {
    arr.push_back(json{{"schedule_name", r.schedule_name},
                       {"iterations_to_1e-9",
                        r.iterations_to_target ? json(*r.iterations_to_target) : json(nullptr)},
                       {"fitted_rate", r.fitted_rate},
                       {"error", r.error}});
  }
  return arr;
}

inline std::string comparison_to_csv(const std::vector<ScheduleComparisonRow>& rows) {
  std::string s = "schedule,iterations_to_1e-9,fitted_rate,error\n";
  for (const ScheduleComparisonRow& r : rows) {
    s += r.schedule_name + "," +
         (r.iterations_to_target ? std::to_string(*r.iterations_to_target) : "max_iters") + "," +
         fmt17(r.fitted_rate) + "," + r.error + "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Suite summary CSV

struct SuiteCell {
  std::string problem;
  std::string schedule;
  double r = 0.0;
  std::optional<double> beta;
  std::optional<double> R;
  double dist0 = 0.0;
  std::size_t iterations = 0;
  std::string stop_reason;
  bool all_satisfied = false;
  double worst_slack = 0.0;
  double theoretical_rate = 1.0;
  double fitted_rate = 1.0;
  std::string error;
};

inline std::string suite_summary_csv(const std::vector<SuiteCell>& cells) {
  std::string s =
      "problem,schedule,r,beta,R,dist0,iterations,stop_reason,all_satisfied,worst_slack,"
      "theoretical_rate,fitted_rate,error\n";
  for (const SuiteCell& c : cells) {
    s += c.problem + "," + c.schedule + "," + fmt17(c.r) + "," +
         (c.beta ? fmt17(*c.beta) : "") + "," + (c.R ? fmt17(*c.R) : "") + "," + fmt17(c.dist0) +
         "," + std::to_string(c.iterations) + "," + c.stop_reason + "," +
         (c.all_satisfied ? "1" : "0") + "," + fmt17(c.worst_slack) + "," +
         fmt17(c.theoretical_rate) + "," + fmt17(c.fitted_rate) + "," + c.error + "\n";
  }
  return s;
}

}  // namespace subgrad
