#pragma once

#include <optional>
#include <string>
#include <tuple>

#include "nblint/rules.hpp"

namespace nblint {

/// One rule violation. Location fields are optional: repository-scope
/// findings may omit the notebook path and never carry a cell index;
/// a line is only ever present together with a cell index.
struct Finding {
  std::string rule_id;
  Severity severity = Severity::Warning;
  std::optional<std::string> notebook_path;
  std::optional<int> cell_index;
  std::optional<int> line;  // 1-based within the cell
  std::string message;
  std::string suggestion;
};

/// Total deterministic order: (notebook_path, cell_index, line, rule_id),
/// with absent fields ordered first.
inline bool finding_order(const Finding& a, const Finding& b) {
  auto key = [](const Finding& f) {
    return std::make_tuple(f.notebook_path.value_or(std::string()), f.cell_index.value_or(-1),
                           f.line.value_or(-1), f.rule_id);
  };
  return key(a) < key(b);
}

}  // namespace nblint
