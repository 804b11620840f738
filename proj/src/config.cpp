#include "simpsonbound/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "simpsonbound/errors.hpp"

namespace simpsonbound {

namespace {

const std::set<std::string> kKnownKeys = {
    "theorems", "h_families", "f_families",        "intervals", "p_values",
    "grid_density", "certify_tolerance", "seed", "quadrature", "parallel", "output"};

template <typename T>
T scalar(const YAML::Node& node, std::string_view key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(fmt::format("'{}' has the wrong type", key));
  }
}

std::vector<std::string> string_list(const YAML::Node& node, std::string_view key) {
  if (!node) return {};
  if (!node.IsSequence()) throw ConfigError(fmt::format("'{}' must be a list", key));
  std::vector<std::string> out;
  for (const auto& item : node) out.push_back(scalar<std::string>(item, key));
  return out;
}

}  // namespace

CampaignConfig parse_campaign_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("config is not valid YAML: {}", e.what()));
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping of keys to values");
  for (const auto& entry : root) {
    const auto key = entry.first.as<std::string>();
    if (!kKnownKeys.contains(key)) throw ConfigError(fmt::format("unknown config key '{}'", key));
  }

  CampaignConfig cfg;
  CampaignSpec& spec = cfg.spec;

  std::vector<std::string> theorem_names;
  if (const auto node = root["theorems"]; node && node.IsScalar()) {
    theorem_names.push_back(scalar<std::string>(node, "theorems"));
    if (theorem_names.front() != "all") throw ConfigError("'theorems' must be a list or 'all'");
  } else {
    theorem_names = string_list(node, "theorems");
  }
  for (const auto& name : theorem_names) {
    if (name == "all") {
      const auto all = all_theorems();
      spec.theorem_ids.insert(spec.theorem_ids.end(), all.begin(), all.end());
    } else {
      spec.theorem_ids.push_back(parse_theorem(name));
    }
  }
  spec.h_families = string_list(root["h_families"], "h_families");
  spec.f_families = string_list(root["f_families"], "f_families");

  if (const auto node = root["intervals"]) {
    if (!node.IsSequence()) throw ConfigError("'intervals' must be a list of [a, b] pairs");
    for (const auto& pair : node) {
      if (!pair.IsSequence() || pair.size() != 2) {
        throw ConfigError("each interval must be a two-element list [a, b]");
      }
      const double a = scalar<double>(pair[0], "intervals");
      const double b = scalar<double>(pair[1], "intervals");
      try {
        spec.intervals.emplace_back(a, b);
      } catch (const Error& e) {
        throw ConfigError(fmt::format("bad interval: {}", e.what()));
      }
    }
  }
  if (const auto node = root["p_values"]) {
    if (!node.IsSequence()) throw ConfigError("'p_values' must be a list");
    for (const auto& p : node) spec.p_values.push_back(scalar<double>(p, "p_values"));
  }
  if (const auto node = root["grid_density"]) {
    const auto g = scalar<long long>(node, "grid_density");
    if (g < 2) throw ConfigError("'grid_density' must be at least 2");
    spec.grid_density = static_cast<std::size_t>(g);
  }
  if (const auto node = root["certify_tolerance"]) {
    spec.certify_tolerance = scalar<double>(node, "certify_tolerance");
  }
  if (const auto node = root["seed"]) spec.seed = scalar<std::uint64_t>(node, "seed");
  if (const auto node = root["parallel"]) {
    spec.policy = scalar<bool>(node, "parallel") ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  }
  if (const auto node = root["quadrature"]) {
    if (!node.IsMap()) throw ConfigError("'quadrature' must be a mapping");
    for (const auto& entry : node) {
      const auto key = entry.first.as<std::string>();
      if (key == "abs_tol") {
        spec.tolerances.abs_tol = scalar<double>(entry.second, "quadrature.abs_tol");
      } else if (key == "rel_tol") {
        spec.tolerances.rel_tol = scalar<double>(entry.second, "quadrature.rel_tol");
      } else if (key == "max_subdivisions") {
        const auto m = scalar<long long>(entry.second, "quadrature.max_subdivisions");
        if (m < 1) throw ConfigError("'quadrature.max_subdivisions' must be positive");
        spec.tolerances.max_subdivisions = static_cast<std::size_t>(m);
      } else {
        throw ConfigError(fmt::format("unknown key 'quadrature.{}'", key));
      }
    }
  }
  if (const auto node = root["output"]) {
    if (!node.IsMap()) throw ConfigError("'output' must be a mapping");
    for (const auto& entry : node) {
      const auto key = entry.first.as<std::string>();
      if (key == "format") {
        cfg.format = parse_output_format(scalar<std::string>(entry.second, "output.format"));
      } else if (key == "path") {
        cfg.output_path = scalar<std::string>(entry.second, "output.path");
      } else if (key == "include_runtime") {
        cfg.include_runtime = scalar<bool>(entry.second, "output.include_runtime");
      } else {
        throw ConfigError(fmt::format("unknown key 'output.{}'", key));
      }
    }
  }

  spec.validate();
  return cfg;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_campaign_config(text.str());
}

}  // namespace simpsonbound
