#include "simpsonbound/report.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "simpsonbound/errors.hpp"

namespace simpsonbound {

namespace {

using nlohmann::json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

std::string field(double x) { return std::isfinite(x) ? fmt::format("{:.17g}", x) : std::string{}; }

std::string field(const std::optional<double>& x) { return x ? field(*x) : std::string{}; }

std::optional<double> parse_optional(std::string_view text, std::string_view context) {
  if (text.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("malformed number '{}' in {}", text, context));
  }
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw ConfigError(fmt::format("unknown output format '{}'", text));
}

json to_json(const Certificate& c) {
  json j;
  j["class"] = to_string(c.class_name);
  j["verdict"] = to_string(c.verdict);
  j["subject"] = c.subject;
  j["weight"] = c.weight;
  j["worst_violation"] = number(c.worst_violation);
  j["grid_density"] = c.grid_density;
  j["tolerance"] = c.tolerance;
  j["undecided_points"] = c.undecided_points;
  if (c.class_name == FunctionClass::SConvex) j["exponent"] = c.exponent;
  if (c.witness) {
    j["witness"] = {{"x", number(c.witness->x)}, {"y", number(c.witness->y)}, {"t", number(c.witness->t)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const BoundReport& r) {
  json j;
  j["theorem_id"] = to_string(r.theorem_id);
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["margin"] = number(r.margin);
  j["applicable"] = r.applicable;
  j["computable"] = r.computable;
  j["inapplicability_reason"] = r.inapplicability_reason ? json(*r.inapplicability_reason) : json(nullptr);
  if (r.lower) j["lower"] = number(r.lower);
  if (r.printed_rhs) j["printed_rhs"] = number(r.printed_rhs);
  j["notes"] = r.notes;
  json certs = json::array();
  for (const auto& c : r.hypothesis_certificates) certs.push_back(to_json(c));
  j["hypothesis_certificates"] = std::move(certs);
  return j;
}

json to_json(const CaseResult& c) {
  json j = to_json(c.report);
  j["theorem_id"] = to_string(c.key.theorem);
  j["f"] = c.key.f;
  j["h"] = c.key.h;
  j["a"] = c.key.a;
  j["b"] = c.key.b;
  j["p"] = number(c.key.p);
  j["q"] = number(c.q);
  j["status"] = to_string(c.status);
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

json to_json(const PropositionCheck& c) {
  json j;
  j["report"] = to_json(c.report);
  j["means_lhs"] = number(c.means_lhs);
  j["defect_lhs"] = number(c.defect_lhs);
  j["printed_lhs"] = number(c.printed_lhs);
  j["printed_lhs_matches"] = c.printed_lhs_matches;
  j["printed_rhs"] = number(c.printed_rhs);
  j["printed_rhs_matches"] = c.printed_rhs_matches;
  j["flags"] = c.flags;
  return j;
}

json to_json(const CampaignReport& r, bool include_runtime) {
  json j;
  json cases = json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  j["cases"] = std::move(cases);
  const auto& s = r.summary;
  j["summary"] = {
      {"total", s.total},
      {"holds", s.holds},
      {"numerical_slack", s.numerical_slack},
      {"violated", s.violated},
      {"inapplicable", s.inapplicable},
      {"hypothesis_refuted", s.hypothesis_refuted},
      {"hypothesis_inconclusive", s.hypothesis_inconclusive},
      {"errors", s.errors},
      {"worst_margin", number(r.worst_margin)},
      {"worst_case", r.worst_case ? json(r.worst_case->to_string()) : json(nullptr)},
  };
  if (include_runtime) j["runtime_seconds"] = r.runtime.count();
  return j;
}

std::string csv_row(const CaseResult& c) {
  const bool has_sides = c.status != CaseStatus::Error;
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{}", to_string(c.key.theorem), c.key.f,
                     c.key.h, field(c.key.a), field(c.key.b), field(c.key.p), field(c.q),
                     has_sides ? field(c.report.lhs) : "", has_sides ? field(c.report.rhs) : "",
                     field(c.report.margin), to_string(c.status));
}

std::string to_csv(const std::vector<CaseResult>& cases) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& c : cases) {
    out += csv_row(c);
    out += '\n';
  }
  return out;
}

std::string render_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ConfigError("CSV report does not start with the expected header");
  }
  std::vector<CsvRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 11) {
      throw ConfigError(fmt::format("CSV line {} has {} fields, expected 11", line_no, cells.size()));
    }
    const std::string ctx = fmt::format("CSV line {}", line_no);
    CsvRow r;
    r.theorem_id = cells[0];
    r.f = cells[1];
    r.h = cells[2];
    const auto a = parse_optional(cells[3], ctx);
    const auto b = parse_optional(cells[4], ctx);
    if (!a || !b) throw ConfigError(fmt::format("{} lacks an interval", ctx));
    r.a = *a;
    r.b = *b;
    r.p = parse_optional(cells[5], ctx);
    r.q = parse_optional(cells[6], ctx);
    r.lhs = parse_optional(cells[7], ctx);
    r.rhs = parse_optional(cells[8], ctx);
    r.margin = parse_optional(cells[9], ctx);
    r.status = cells[10];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace simpsonbound
