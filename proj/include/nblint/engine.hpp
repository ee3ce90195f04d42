#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nblint/checks.hpp"
#include "nblint/code_analysis.hpp"
#include "nblint/config.hpp"
#include "nblint/finding.hpp"
#include "nblint/metrics.hpp"
#include "nblint/notebook.hpp"
#include "nblint/repository.hpp"

namespace nblint {

struct NotebookReportEntry {
  std::string path;
  NotebookMetrics metrics;
  bool parse_failed = false;
};

/// Aggregated lint result with a total deterministic ordering of
/// findings: identical inputs and config produce identical reports.
struct Report {
  std::optional<std::string> root;
  std::vector<NotebookReportEntry> notebooks;
  std::vector<Finding> findings;
  int n_error = 0;
  int n_warning = 0;
  int n_info = 0;
  std::map<std::string, int> by_rule;
  std::vector<std::string> notices;  // skipped repository-scope rules etc.

  int count(Severity s) const {
    switch (s) {
      case Severity::Error: return n_error;
      case Severity::Warning: return n_warning;
      case Severity::Info: return n_info;
    }
    return 0;
  }

  bool fails_at(Severity level) const {
    for (const Finding& f : findings) {
      if (f.severity >= level) return true;
    }
    return false;
  }
};

/// A notebook file read for linting; parse failures surface as findings,
/// not faults.
struct LoadedNotebook {
  std::string path;  // repository-relative or as given on the command line
  ParseResult parse;
};

namespace detail {

inline Finding parse_failure_finding(const std::string& path, const ParseError& error) {
  Finding f;
  f.rule_id = std::string(kParseRuleId);
  f.severity = Severity::Error;
  f.notebook_path = path;
  f.message = "notebook failed to parse (" + std::string(to_string(error.kind)) +
              "): " + error.message;
  f.suggestion = "Repair or regenerate the file; it is not valid nbformat 4 JSON.";
  return f;
}

/// Notebook-scope checks shared by bare and repository lints. The
/// repository pointer gates the checks that need repository context.
inline void run_notebook_rules(const Notebook& nb, const CodeFacts& facts,
                               const LintConfig& config, const Repository* repo,
                               std::vector<Finding>& out) {
  NotebookMetrics metrics = compute_metrics(nb);
  auto append = [&](std::vector<Finding>&& findings) {
    for (Finding& f : findings) out.push_back(std::move(f));
  };
  append(checks::check_structure(nb, config.strict_execution));
  append(checks::check_documentation(nb, metrics, config.thresholds));
  append(checks::check_code_quality(nb, facts, config.thresholds));
  append(checks::check_modularization(nb, metrics, facts, config.thresholds));
  append(checks::check_portable_paths(nb, facts));
  if (repo) {
    append(checks::check_outputs_retained(*repo, nb));
  }
}

inline void finalize(Report& report, const LintConfig& config) {
  std::vector<Finding> kept;
  kept.reserve(report.findings.size());
  for (Finding& f : report.findings) {
    if (f.rule_id == kParseRuleId) {
      kept.push_back(std::move(f));
      continue;
    }
    const RuleDescriptor* rule = find_rule(f.rule_id);
    if (!rule || !config.is_active(f.rule_id)) continue;
    f.severity = config.severity_for(*rule);
    kept.push_back(std::move(f));
  }
  std::sort(kept.begin(), kept.end(), finding_order);
  report.findings = std::move(kept);

  for (const Finding& f : report.findings) {
    switch (f.severity) {
      case Severity::Error: ++report.n_error; break;
      case Severity::Warning: ++report.n_warning; break;
      case Severity::Info: ++report.n_info; break;
    }
    ++report.by_rule[f.rule_id];
  }
  std::sort(report.notebooks.begin(), report.notebooks.end(),
            [](const auto& a, const auto& b) { return a.path < b.path; });
}

}  // namespace detail

/// Lints one parsed notebook with no repository context. Rules that need
/// a repository are skipped and a notice is recorded for each.
inline Report lint_notebook(const Notebook& nb, const CodeFacts& facts,
                            const LintConfig& config) {
  Report report;
  report.notebooks.push_back({nb.path, compute_metrics(nb), false});
  detail::run_notebook_rules(nb, facts, config, nullptr, report.findings);
  for (const RuleDescriptor& rule : default_registry()) {
    if (rule.requires_repository && config.is_active(rule.id)) {
      report.notices.push_back(rule.id + " skipped: no repository context for " + nb.path);
    }
  }
  detail::finalize(report, config);
  return report;
}

inline Report lint_notebook(const Notebook& nb, const LintConfig& config) {
  return lint_notebook(nb, analyze_notebook(nb), config);
}

/// Lints a repository from already-loaded notebook bytes: repository-scope
/// rules once, notebook-scope rules per notebook. One unparseable notebook
/// becomes one NBL-PARSE finding and never suppresses its siblings.
inline Report lint_repository(const Repository& repo, const std::vector<LoadedNotebook>& loaded,
                              const LintConfig& config) {
  Report report;
  report.root = repo.root;
  report.notices = repo.warnings;

  std::vector<std::pair<const Notebook*, CodeFacts>> parsed;
  for (const LoadedNotebook& item : loaded) {
    if (item.parse.ok()) {
      const Notebook& nb = item.parse.value();
      report.notebooks.push_back({item.path, compute_metrics(nb), false});
      parsed.emplace_back(&nb, analyze_notebook(nb));
    } else {
      report.notebooks.push_back({item.path, NotebookMetrics{}, true});
      report.findings.push_back(detail::parse_failure_finding(item.path, item.parse.error()));
    }
  }

  for (auto& [nb, facts] : parsed) {
    detail::run_notebook_rules(*nb, facts, config, &repo, report.findings);
  }

  auto append = [&](std::vector<Finding>&& findings) {
    for (Finding& f : findings) report.findings.push_back(std::move(f));
  };
  append(checks::check_version_control(repo));
  append(checks::check_dependency_manifest(repo));
  std::vector<std::pair<std::string, const CodeFacts*>> facts_by_path;
  facts_by_path.reserve(parsed.size());
  for (const auto& [nb, facts] : parsed) facts_by_path.emplace_back(nb->path, &facts);
  append(checks::check_undeclared_imports(repo, facts_by_path, config.alias_map()));

  detail::finalize(report, config);
  return report;
}

/// Reads every discovered notebook from disk, then lints.
inline Report lint_repository(const Repository& repo, const LintConfig& config) {
  std::vector<LoadedNotebook> loaded;
  loaded.reserve(repo.notebooks.size());
  for (const std::string& rel : repo.notebooks) {
    auto bytes = read_file(fs::path(repo.root) / rel);
    if (!bytes.ok()) {
      loaded.push_back({rel, ParseError{ParseErrorKind::MalformedJson, bytes.error().message}});
      continue;
    }
    loaded.push_back({rel, parse_notebook(bytes.value(), rel)});
  }
  return lint_repository(repo, loaded, config);
}

}  // namespace nblint
