#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "simpsonbound/campaign.hpp"
#include "simpsonbound/report.hpp"

namespace simpsonbound {

/// A campaign file: the campaign axes plus optional output settings.
struct CampaignConfig {
  CampaignSpec spec;
  std::optional<OutputFormat> format;
  std::optional<std::string> output_path;
  bool include_runtime = true;
};

/// Parses YAML text. Throws ConfigError with the offending key on any problem.
CampaignConfig parse_campaign_config(std::string_view yaml_text);
/// Throws ConfigError when the file cannot be read.
CampaignConfig load_campaign_config(const std::filesystem::path& path);

}  // namespace simpsonbound
