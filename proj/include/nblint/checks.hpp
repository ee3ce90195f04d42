#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nblint/code_analysis.hpp"
#include "nblint/config.hpp"
#include "nblint/finding.hpp"
#include "nblint/metrics.hpp"
#include "nblint/notebook.hpp"
#include "nblint/repository.hpp"
#include "nblint/text.hpp"

// The concrete checks behind the catalog. All are pure over their
// arguments; none touches the filesystem. Findings carry the rule's
// default severity; the engine applies configured overrides afterwards.

namespace nblint::checks {

namespace detail {

inline Finding make(std::string_view rule_id, std::string message) {
  const RuleDescriptor* rule = find_rule(rule_id);
  Finding f;
  f.rule_id = std::string(rule_id);
  f.severity = rule->default_severity;
  f.message = std::move(message);
  f.suggestion = rule->suggestion;
  return f;
}

inline Finding make(std::string_view rule_id, const Notebook& nb, std::string message) {
  Finding f = make(rule_id, std::move(message));
  f.notebook_path = nb.path;
  return f;
}

inline std::string basename_of(std::string_view path) {
  auto pos = path.find_last_of("/\\");
  return std::string(pos == std::string_view::npos ? path : path.substr(pos + 1));
}

/// Per-line whitespace normalization used for duplicate detection:
/// trimmed lines with internal runs collapsed, blanks dropped.
inline std::string normalized_source(const Cell& cell) {
  std::string out;
  for (const auto& raw : cell.source_lines) {
    std::string_view line = text::strip(raw);
    if (line.empty()) continue;
    if (!out.empty()) out += '\n';
    bool in_run = false;
    for (char c : line) {
      if (c == ' ' || c == '\t') {
        in_run = true;
        continue;
      }
      if (in_run && !out.empty() && out.back() != '\n') out += ' ';
      in_run = false;
      out += c;
    }
  }
  return out;
}

}  // namespace detail

/// NBL-E01/E02/E03: execution linearity, unexecuted cells, empty tail.
inline std::vector<Finding> check_structure(const Notebook& nb, bool strict_execution) {
  std::vector<Finding> findings;

  // E01: present execution counts must increase strictly in document
  // order (strict mode: must be exactly 1..k).
  int prev = 0;
  int expected = 1;
  for (const Cell& cell : nb.cells) {
    if (cell.kind != CellKind::Code || !cell.execution_count) continue;
    int count = *cell.execution_count;
    bool offending = strict_execution ? count != expected : count <= prev && prev > 0;
    if (offending) {
      std::string msg =
          strict_execution
              ? "execution count " + std::to_string(count) + " breaks the fresh-run order (expected " +
                    std::to_string(expected) + ")"
              : "execution count " + std::to_string(count) + " does not follow " +
                    std::to_string(prev) + "; cells were run out of order";
      Finding f = detail::make("NBL-E01", nb, msg);
      f.cell_index = cell.index;
      findings.push_back(std::move(f));
      break;  // first offending cell only
    }
    prev = count;
    ++expected;
  }

  // E02: a never-executed non-empty code cell alongside executed ones.
  bool any_executed = false;
  for (const Cell& cell : nb.cells) {
    if (cell.kind == CellKind::Code && cell.execution_count) {
      any_executed = true;
      break;
    }
  }
  if (any_executed) {
    for (const Cell& cell : nb.cells) {
      if (cell.kind == CellKind::Code && !cell.execution_count && !cell.is_empty) {
        Finding f = detail::make("NBL-E02", nb, "code cell was never executed");
        f.cell_index = cell.index;
        findings.push_back(std::move(f));
      }
    }
  }

  // E03: empty cells at the document tail.
  int tail_start = static_cast<int>(nb.cells.size());
  while (tail_start > 0 && nb.cells[static_cast<std::size_t>(tail_start) - 1].is_empty) {
    --tail_start;
  }
  if (tail_start < static_cast<int>(nb.cells.size())) {
    int n_trailing = static_cast<int>(nb.cells.size()) - tail_start;
    Finding f = detail::make("NBL-E03", nb,
                             std::to_string(n_trailing) + " empty cell(s) at the notebook tail");
    f.cell_index = tail_start;
    findings.push_back(std::move(f));
  }
  return findings;
}

/// NBL-D01/D02/D03: title cell, markdown ratio, filename hygiene.
inline std::vector<Finding> check_documentation(const Notebook& nb, const NotebookMetrics& m,
                                                const Thresholds& t) {
  std::vector<Finding> findings;

  bool has_title = false;
  if (!nb.cells.empty() && nb.cells.front().kind == CellKind::Markdown) {
    for (const auto& line : nb.cells.front().source_lines) {
      std::string_view body = text::strip(line);
      if (body.empty()) continue;
      has_title = body.front() == '#';
      break;
    }
  }
  if (!has_title) {
    Finding f = detail::make("NBL-D01", nb, "notebook does not start with a Markdown title cell");
    if (!nb.cells.empty()) f.cell_index = 0;
    findings.push_back(std::move(f));
  }

  if (m.n_cells >= 5 && m.markdown_ratio < t.markdown_ratio_min) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "markdown ratio %.2f is below %.2f", m.markdown_ratio,
                  t.markdown_ratio_min);
    findings.push_back(detail::make("NBL-D02", nb, buf));
  }

  std::string base = detail::basename_of(nb.path);
  bool bad_name = base.rfind("Untitled", 0) == 0;
  for (char c : base) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    if (!ok) {
      bad_name = true;
      break;
    }
  }
  if (bad_name) {
    findings.push_back(
        detail::make("NBL-D03", nb, "notebook filename \"" + base + "\" is a default or unsafe name"));
  }
  return findings;
}

/// NBL-C01/C02/C03/C04: syntax validity, cell length, duplicate cells,
/// scattered imports.
inline std::vector<Finding> check_code_quality(const Notebook& nb, const CodeFacts& facts,
                                               const Thresholds& t) {
  std::vector<Finding> findings;

  for (const auto& [index, cell_facts] : facts.cells) {
    if (!cell_facts.syntax_ok && !cell_facts.is_cell_magic) {
      Finding f = detail::make(
          "NBL-C01", nb, "cell does not parse: " + cell_facts.syntax_message.value_or("syntax error"));
      f.cell_index = index;
      findings.push_back(std::move(f));
    }
  }

  for (const Cell& cell : nb.cells) {
    if (cell.kind != CellKind::Code) continue;
    int lines = non_blank_line_count(cell);
    if (lines > t.max_cell_lines) {
      Finding f = detail::make("NBL-C02", nb,
                               "cell has " + std::to_string(lines) + " non-blank lines (budget " +
                                   std::to_string(t.max_cell_lines) + ")");
      f.cell_index = cell.index;
      findings.push_back(std::move(f));
    }
  }

  std::map<std::string, int> first_seen;  // normalized source -> earliest cell index
  for (const Cell& cell : nb.cells) {
    if (cell.kind != CellKind::Code) continue;
    std::string norm = detail::normalized_source(cell);
    int norm_lines = norm.empty() ? 0 : 1 + static_cast<int>(std::count(norm.begin(), norm.end(), '\n'));
    if (norm_lines < 2) continue;
    auto [it, inserted] = first_seen.emplace(std::move(norm), cell.index);
    if (!inserted) {
      Finding f = detail::make(
          "NBL-C03", nb, "cell duplicates cell " + std::to_string(it->second));
      f.cell_index = cell.index;
      findings.push_back(std::move(f));
    }
  }

  // C04: k is the first code cell that is neither import-only nor empty;
  // imports in any later cell are scattered.
  int k = -1;
  for (const Cell& cell : nb.cells) {
    if (cell.kind != CellKind::Code || cell.is_empty) continue;
    auto it = facts.cells.find(cell.index);
    if (it == facts.cells.end()) continue;
    if (!it->second.import_only) {
      k = cell.index;
      break;
    }
  }
  if (k >= 0) {
    for (const auto& [index, cell_facts] : facts.cells) {
      if (index <= k) continue;
      for (const ImportFact& imp : cell_facts.imports) {
        Finding f = detail::make("NBL-C04", nb,
                                 "import of \"" + (imp.module.empty() ? "." : imp.module) +
                                     "\" after the first computation cell (cell " +
                                     std::to_string(k) + ")");
        f.cell_index = index;
        f.line = imp.line;
        findings.push_back(std::move(f));
      }
    }
  }
  return findings;
}

/// NBL-M01/M02: missing abstractions, notebook size.
inline std::vector<Finding> check_modularization(const Notebook& nb, const NotebookMetrics& m,
                                                 const CodeFacts& facts, const Thresholds& t) {
  std::vector<Finding> findings;
  int defs = 0;
  for (const auto& [index, cell_facts] : facts.cells) {
    defs += cell_facts.n_function_defs + cell_facts.n_class_defs;
  }
  if (m.total_code_lines > t.min_lines_for_modularization && defs == 0) {
    findings.push_back(detail::make(
        "NBL-M01", nb,
        std::to_string(m.total_code_lines) + " code lines without a single function or class"));
  }
  if (m.n_code > t.max_code_cells) {
    findings.push_back(detail::make("NBL-M02", nb,
                                    std::to_string(m.n_code) + " code cells (budget " +
                                        std::to_string(t.max_code_cells) + ")"));
  }
  return findings;
}

/// NBL-V01 (repository scope): no version control at the root.
inline std::vector<Finding> check_version_control(const Repository& repo) {
  std::vector<Finding> findings;
  if (!repo.has_vcs) {
    findings.push_back(detail::make("NBL-V01", "no .git directory at the repository root"));
  }
  return findings;
}

/// NBL-V02: a versioned notebook retains outputs.
inline std::vector<Finding> check_outputs_retained(const Repository& repo, const Notebook& nb) {
  std::vector<Finding> findings;
  if (!repo.has_vcs) return findings;
  int cells_with_outputs = 0;
  int first_index = -1;
  for (const Cell& cell : nb.cells) {
    if (cell.kind == CellKind::Code && cell.output_count > 0) {
      if (first_index < 0) first_index = cell.index;
      ++cells_with_outputs;
    }
  }
  if (cells_with_outputs > 0) {
    Finding f = detail::make(
        "NBL-V02", nb, std::to_string(cells_with_outputs) + " code cell(s) retain outputs");
    f.cell_index = first_index;
    findings.push_back(std::move(f));
  }
  return findings;
}

/// NBL-R01 (repository scope): no dependency manifest present.
inline std::vector<Finding> check_dependency_manifest(const Repository& repo) {
  std::vector<Finding> findings;
  if (repo.dependency_files.empty()) {
    findings.push_back(detail::make("NBL-R01", "no dependency manifest at the repository root"));
  }
  return findings;
}

/// NBL-R02 (repository scope): third-party imports absent from the union
/// of declared packages; one finding per distinct (notebook, package).
/// Suppressed entirely when no manifest exists — that is NBL-R01's job.
inline std::vector<Finding> check_undeclared_imports(
    const Repository& repo,
    const std::vector<std::pair<std::string, const CodeFacts*>>& notebook_facts,
    const std::map<std::string, std::string>& alias_map) {
  std::vector<Finding> findings;
  if (repo.dependency_files.empty()) return findings;
  std::set<std::string> declared = declared_package_union(repo);

  for (const auto& [path, facts] : notebook_facts) {
    std::map<std::string, std::string> undeclared;  // package -> module as imported
    for (const auto& [index, cell_facts] : facts->cells) {
      for (const ImportFact& imp : cell_facts.imports) {
        ImportClass cls = classify_import(imp, alias_map);
        if (cls.kind != ImportKind::ThirdParty) continue;
        if (declared.count(cls.package)) continue;
        undeclared.emplace(cls.package, imp.module);
      }
    }
    for (const auto& [package, module] : undeclared) {
      Finding f = detail::make("NBL-R02", "package \"" + package + "\" (imported as \"" + module +
                                              "\") is not declared in any manifest");
      f.notebook_path = path;
      findings.push_back(std::move(f));
    }
  }
  return findings;
}

/// NBL-R03: absolute path literals; one finding per offending line.
inline std::vector<Finding> check_portable_paths(const Notebook& nb, const CodeFacts& facts) {
  std::vector<Finding> findings;
  for (const auto& [index, cell_facts] : facts.cells) {
    std::map<int, std::string> by_line;  // first literal per line
    for (const PathLiteral& lit : cell_facts.path_literals) {
      by_line.emplace(lit.line, lit.literal);
    }
    for (const auto& [line, literal] : by_line) {
      Finding f = detail::make("NBL-R03", nb, "absolute path literal \"" + literal + "\"");
      f.cell_index = index;
      f.line = line;
      findings.push_back(std::move(f));
    }
  }
  return findings;
}

}  // namespace nblint::checks
