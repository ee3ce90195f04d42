#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "nblint/code_analysis.hpp"
#include "nblint/result.hpp"
#include "nblint/rules.hpp"

namespace nblint {

struct Thresholds {
  double markdown_ratio_min = 0.15;        // D02
  int max_cell_lines = 30;                 // C02
  int max_code_cells = 50;                 // M02
  int min_lines_for_modularization = 100;  // M01
};

enum class OutputFormat { Text, Json };

struct LintConfig {
  std::vector<std::string> selected;  // empty means all rules
  std::vector<std::string> ignored;
  std::map<std::string, Severity> severity_overrides;
  Thresholds thresholds;
  Severity fail_level = Severity::Warning;
  OutputFormat format = OutputFormat::Text;
  bool strict_execution = false;  // fresh-run mode: counts must be exactly 1..k
  std::map<std::string, std::string> import_aliases;  // merged over the built-in table

  bool is_active(std::string_view rule_id) const {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), rule_id) == selected.end()) {
      return false;
    }
    return std::find(ignored.begin(), ignored.end(), rule_id) == ignored.end();
  }

  Severity severity_for(const RuleDescriptor& rule) const {
    if (auto it = severity_overrides.find(rule.id); it != severity_overrides.end()) {
      return it->second;
    }
    return rule.default_severity;
  }

  std::map<std::string, std::string> alias_map() const {
    std::map<std::string, std::string> merged = default_import_aliases();
    for (const auto& [module, package] : import_aliases) merged[module] = package;
    return merged;
  }
};

struct ConfigError {
  enum class Kind { UnknownRuleId, ConflictingSelection, InvalidValue, MalformedConfig };
  Kind kind;
  std::string message;
};

/// Command-line values layered over a file config; absent fields keep
/// the lower layer's value.
struct CliOverrides {
  std::optional<std::vector<std::string>> select;
  std::optional<std::vector<std::string>> ignore;
  std::optional<Severity> fail_level;
  std::optional<OutputFormat> format;
  std::map<std::string, double> thresholds;  // keyed by threshold name
};

namespace detail {

inline std::optional<ConfigError> apply_threshold(LintConfig& config, const std::string& key,
                                                  double value) {
  auto positive_int = [&](int& slot) -> std::optional<ConfigError> {
    if (value < 1 || value != static_cast<int>(value)) {
      return ConfigError{ConfigError::Kind::InvalidValue,
                         "threshold " + key + " must be a positive integer"};
    }
    slot = static_cast<int>(value);
    return std::nullopt;
  };
  if (key == "markdown_ratio_min") {
    if (!(value > 0.0) || value > 1.0) {
      return ConfigError{ConfigError::Kind::InvalidValue,
                         "markdown_ratio_min must lie in (0, 1]"};
    }
    config.thresholds.markdown_ratio_min = value;
    return std::nullopt;
  }
  if (key == "max_cell_lines") return positive_int(config.thresholds.max_cell_lines);
  if (key == "max_code_cells") return positive_int(config.thresholds.max_code_cells);
  if (key == "min_lines_for_modularization") {
    return positive_int(config.thresholds.min_lines_for_modularization);
  }
  return ConfigError{ConfigError::Kind::InvalidValue, "unknown threshold \"" + key + "\""};
}

inline std::optional<ConfigError> apply_file_config(LintConfig& config,
                                                    const nlohmann::json& file) {
  using Kind = ConfigError::Kind;
  if (!file.is_object()) {
    return ConfigError{Kind::MalformedConfig, "config file must hold a JSON object"};
  }
  for (const auto& [key, value] : file.items()) {
    if (key == "select" || key == "ignore") {
      if (!value.is_array()) {
        return ConfigError{Kind::MalformedConfig, "\"" + key + "\" must be a list of rule ids"};
      }
      std::vector<std::string> ids;
      for (const auto& item : value) {
        if (!item.is_string()) {
          return ConfigError{Kind::MalformedConfig, "\"" + key + "\" entries must be strings"};
        }
        ids.push_back(item.get<std::string>());
      }
      (key == "select" ? config.selected : config.ignored) = std::move(ids);
    } else if (key == "severity") {
      if (!value.is_object()) {
        return ConfigError{Kind::MalformedConfig, "\"severity\" must map rule ids to levels"};
      }
      for (const auto& [rule_id, level] : value.items()) {
        if (!level.is_string()) {
          return ConfigError{Kind::MalformedConfig, "severity for " + rule_id + " must be a string"};
        }
        auto sev = severity_from_string(level.get<std::string>());
        if (!sev) {
          return ConfigError{Kind::InvalidValue,
                             "invalid severity \"" + level.get<std::string>() + "\""};
        }
        config.severity_overrides[rule_id] = *sev;
      }
    } else if (key == "fail_level") {
      if (!value.is_string()) {
        return ConfigError{Kind::MalformedConfig, "\"fail_level\" must be a string"};
      }
      auto sev = severity_from_string(value.get<std::string>());
      if (!sev) {
        return ConfigError{Kind::InvalidValue,
                           "invalid fail_level \"" + value.get<std::string>() + "\""};
      }
      config.fail_level = *sev;
    } else if (key == "format") {
      if (!value.is_string() ||
          (value.get<std::string>() != "text" && value.get<std::string>() != "json")) {
        return ConfigError{Kind::InvalidValue, "\"format\" must be \"text\" or \"json\""};
      }
      config.format = value.get<std::string>() == "json" ? OutputFormat::Json : OutputFormat::Text;
    } else if (key == "strict_execution") {
      if (!value.is_boolean()) {
        return ConfigError{Kind::MalformedConfig, "\"strict_execution\" must be a boolean"};
      }
      config.strict_execution = value.get<bool>();
    } else if (key == "import_aliases") {
      if (!value.is_object()) {
        return ConfigError{Kind::MalformedConfig,
                           "\"import_aliases\" must map module names to package names"};
      }
      for (const auto& [module, package] : value.items()) {
        if (!package.is_string()) {
          return ConfigError{Kind::MalformedConfig, "alias for " + module + " must be a string"};
        }
        config.import_aliases[module] = package.get<std::string>();
      }
    } else if (key == "markdown_ratio_min" || key == "max_cell_lines" ||
               key == "max_code_cells" || key == "min_lines_for_modularization") {
      if (!value.is_number()) {
        return ConfigError{Kind::MalformedConfig, "\"" + key + "\" must be a number"};
      }
      if (auto err = apply_threshold(config, key, value.get<double>())) return *err;
    } else {
      return ConfigError{Kind::MalformedConfig, "unknown config key \"" + key + "\""};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Layered resolution: defaults <- file <- CLI, rightmost wins per field.
/// Unknown rule ids and select/ignore conflicts are errors, not silently
/// dropped.
inline Result<LintConfig, ConfigError> resolve_config(
    const std::optional<nlohmann::json>& file_config, const CliOverrides& cli) {
  LintConfig config;
  if (file_config) {
    if (auto err = detail::apply_file_config(config, *file_config)) return *err;
  }
  if (cli.select) config.selected = *cli.select;
  if (cli.ignore) config.ignored = *cli.ignore;
  if (cli.fail_level) config.fail_level = *cli.fail_level;
  if (cli.format) config.format = *cli.format;
  for (const auto& [key, value] : cli.thresholds) {
    if (auto err = detail::apply_threshold(config, key, value)) return *err;
  }

  for (const auto* list : {&config.selected, &config.ignored}) {
    for (const std::string& id : *list) {
      if (!find_rule(id)) {
        return ConfigError{ConfigError::Kind::UnknownRuleId, "unknown rule id \"" + id + "\""};
      }
    }
  }
  for (const auto& [id, severity] : config.severity_overrides) {
    (void)severity;
    if (!find_rule(id)) {
      return ConfigError{ConfigError::Kind::UnknownRuleId,
                         "unknown rule id \"" + id + "\" in severity overrides"};
    }
  }
  if (!config.selected.empty()) {
    for (const std::string& id : config.selected) {
      if (std::find(config.ignored.begin(), config.ignored.end(), id) != config.ignored.end()) {
        return ConfigError{ConfigError::Kind::ConflictingSelection,
                           "rule " + id + " is both selected and ignored"};
      }
    }
  }
  return config;
}

}  // namespace nblint
