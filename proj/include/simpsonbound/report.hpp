#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "simpsonbound/campaign.hpp"
#include "simpsonbound/means.hpp"

namespace simpsonbound {

enum class OutputFormat { Json, Csv };

OutputFormat parse_output_format(std::string_view text);

inline constexpr std::string_view kCsvHeader = "theorem_id,f,h,a,b,p,q,lhs,rhs,margin,status";

nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const CaseResult& c);
nlohmann::json to_json(const PropositionCheck& c);
/// One object with `cases`, `summary` and, unless omitted, `runtime_seconds`.
nlohmann::json to_json(const CampaignReport& r, bool include_runtime = true);

std::string csv_row(const CaseResult& c);
/// Header plus one row per case; numbers use 17 significant digits and absent
/// values are empty fields.
std::string to_csv(const std::vector<CaseResult>& cases);

/// Two-space indented JSON followed by a newline.
std::string render_json(const nlohmann::json& j);

/// A parsed CSV row, for round-trip checks and downstream tooling.
struct CsvRow {
  std::string theorem_id;
  std::string f;
  std::string h;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> margin;
  std::string status;
};

/// Throws ConfigError on a wrong header or malformed row.
std::vector<CsvRow> parse_csv(std::string_view text);

}  // namespace simpsonbound
