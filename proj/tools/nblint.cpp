// nblint command-line interface.
//
// Exit codes: 0 = clean (no finding at or above the fail level),
// 1 = findings gate the run, 2 = operational error. Standard output
// carries only the report; diagnostics go to standard error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nblint/nblint.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

struct LintOptions {
  std::vector<std::string> targets;
  std::optional<std::string> format;
  std::optional<std::string> config_path;
  std::vector<std::string> select;
  std::vector<std::string> ignore;
  std::optional<std::string> fail_level;
  std::vector<std::string> thresholds;  // KEY=VALUE
};

struct CorpusOptions {
  std::string directory;
  std::optional<std::string> labels_path;
  std::string out_dir = ".";
};

void diag(const std::string& message) { std::cerr << "nblint: " << message << "\n"; }

std::optional<nblint::CliOverrides> collect_overrides(const LintOptions& opts) {
  nblint::CliOverrides cli;
  if (!opts.select.empty()) cli.select = opts.select;
  if (!opts.ignore.empty()) cli.ignore = opts.ignore;
  if (opts.fail_level) {
    auto sev = nblint::severity_from_string(*opts.fail_level);
    if (!sev) {
      diag("invalid fail level \"" + *opts.fail_level + "\"");
      return std::nullopt;
    }
    cli.fail_level = *sev;
  }
  if (opts.format) {
    if (*opts.format == "text") {
      cli.format = nblint::OutputFormat::Text;
    } else if (*opts.format == "json") {
      cli.format = nblint::OutputFormat::Json;
    } else {
      diag("invalid format \"" + *opts.format + "\" (expected text or json)");
      return std::nullopt;
    }
  }
  for (const std::string& spec : opts.thresholds) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
      diag("invalid --threshold \"" + spec + "\" (expected KEY=VALUE)");
      return std::nullopt;
    }
    std::string key = spec.substr(0, eq);
    try {
      cli.thresholds[key] = std::stod(spec.substr(eq + 1));
    } catch (const std::exception&) {
      diag("invalid numeric value in --threshold \"" + spec + "\"");
      return std::nullopt;
    }
  }
  return cli;
}

std::optional<nblint::LintConfig> load_config(const std::optional<std::string>& config_path,
                                              const nblint::CliOverrides& cli) {
  std::optional<nlohmann::json> file_config;
  if (config_path) {
    auto bytes = nblint::read_file(*config_path);
    if (!bytes.ok()) {
      diag(bytes.error().message);
      return std::nullopt;
    }
    try {
      file_config = nlohmann::json::parse(bytes.value());
    } catch (const std::exception& e) {
      diag(std::string("config file is not valid JSON: ") + e.what());
      return std::nullopt;
    }
  }
  auto resolved = nblint::resolve_config(file_config, cli);
  if (!resolved.ok()) {
    diag(resolved.error().message);
    return std::nullopt;
  }
  return std::move(resolved).value();
}

void merge_report(nblint::Report& into, nblint::Report&& part) {
  for (auto& entry : part.notebooks) into.notebooks.push_back(std::move(entry));
  for (auto& finding : part.findings) into.findings.push_back(std::move(finding));
  for (auto& notice : part.notices) into.notices.push_back(std::move(notice));
}

void refinalize(nblint::Report& report) {
  std::sort(report.findings.begin(), report.findings.end(), nblint::finding_order);
  std::sort(report.notebooks.begin(), report.notebooks.end(),
            [](const auto& a, const auto& b) { return a.path < b.path; });
  report.n_error = report.n_warning = report.n_info = 0;
  report.by_rule.clear();
  for (const auto& f : report.findings) {
    switch (f.severity) {
      case nblint::Severity::Error: ++report.n_error; break;
      case nblint::Severity::Warning: ++report.n_warning; break;
      case nblint::Severity::Info: ++report.n_info; break;
    }
    ++report.by_rule[f.rule_id];
  }
}

int run_lint(const LintOptions& opts) {
  auto cli = collect_overrides(opts);
  if (!cli) return kExitError;
  auto config = load_config(opts.config_path, *cli);
  if (!config) return kExitError;

  nblint::Report merged;
  int dir_targets = 0;
  std::optional<std::string> single_root;

  for (const std::string& target : opts.targets) {
    std::error_code ec;
    if (fs::is_directory(target, ec)) {
      auto repo = nblint::discover_repository(target);
      if (!repo.ok()) {
        diag(repo.error().message);
        return kExitError;
      }
      ++dir_targets;
      single_root = repo.value().root;
      merge_report(merged, nblint::lint_repository(repo.value(), *config));
    } else if (fs::is_regular_file(target, ec)) {
      auto bytes = nblint::read_file(target);
      if (!bytes.ok()) {
        diag(bytes.error().message);
        return kExitError;
      }
      auto parsed = nblint::parse_notebook(bytes.value(), target);
      if (!parsed.ok()) {
        // An explicitly named notebook that does not parse is an
        // operational error; inside trees it would be an NBL-PARSE finding.
        diag(target + ": " + std::string(nblint::to_string(parsed.error().kind)) + ": " +
             parsed.error().message);
        return kExitError;
      }
      merge_report(merged, nblint::lint_notebook(parsed.value(), *config));
    } else {
      diag("target not found or unreadable: " + target);
      return kExitError;
    }
  }

  if (dir_targets == 1 && opts.targets.size() == 1) merged.root = single_root;
  refinalize(merged);

  for (const std::string& notice : merged.notices) std::cerr << "note: " << notice << "\n";
  if (config->format == nblint::OutputFormat::Json) {
    std::cout << nblint::render_json(merged);
  } else {
    std::cout << nblint::render_text(merged);
  }
  return merged.fails_at(config->fail_level) ? kExitFindings : kExitClean;
}

bool write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int run_corpus(const CorpusOptions& opts) {
  std::error_code ec;
  if (!fs::is_directory(opts.directory, ec)) {
    diag("corpus target must be a directory: " + opts.directory);
    return kExitError;
  }
  auto repo = nblint::discover_repository(opts.directory);
  if (!repo.ok()) {
    diag(repo.error().message);
    return kExitError;
  }
  nblint::LintConfig config;  // corpus runs use the default rule set
  nblint::Report report = nblint::lint_repository(repo.value(), config);

  std::vector<nblint::Report> reports;
  reports.push_back(std::move(report));
  auto matrix = nblint::build_matrix(reports);
  if (!matrix.ok()) {
    diag(matrix.error().message);
    return kExitError;
  }

  fs::create_directories(opts.out_dir, ec);
  fs::path matrix_path = fs::path(opts.out_dir) / "violations.csv";
  if (!write_text_file(matrix_path, nblint::matrix_to_csv(matrix.value()))) {
    diag("cannot write " + matrix_path.generic_string());
    return kExitError;
  }
  std::cerr << "wrote " << matrix_path.generic_string() << " (" << matrix.value().paths.size()
            << " notebooks)\n";

  if (opts.labels_path) {
    auto bytes = nblint::read_file(*opts.labels_path);
    if (!bytes.ok()) {
      diag(bytes.error().message);
      return kExitError;
    }
    auto labels = nblint::parse_labels_csv(bytes.value());
    if (!labels.ok()) {
      diag("labels: " + labels.error().message);
      return kExitError;
    }
    auto assoc = nblint::associate(matrix.value(), labels.value());
    if (!assoc.ok()) {
      diag("association: " + assoc.error().message);
      return kExitError;
    }
    fs::path assoc_path = fs::path(opts.out_dir) / "associations.csv";
    if (!write_text_file(assoc_path, nblint::association_to_csv(assoc.value().results))) {
      diag("cannot write " + assoc_path.generic_string());
      return kExitError;
    }
    std::cerr << "wrote " << assoc_path.generic_string() << " (" << assoc.value().n_labeled
              << " labeled, " << assoc.value().n_dropped_unlabeled << " unlabeled dropped, "
              << assoc.value().n_excluded_parse_failures << " parse failures excluded)\n";
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static analyzer for Jupyter notebooks and their repositories"};
  app.set_version_flag("--version", nblint::kVersion);
  app.require_subcommand(1);

  LintOptions lint_opts;
  CLI::App* lint = app.add_subcommand("lint", "Lint notebooks or project directories");
  lint->add_option("targets", lint_opts.targets, "Notebook files or directories")
      ->required()
      ->expected(-1);
  lint->add_option("--format", lint_opts.format, "Output format: text or json");
  lint->add_option("--config", lint_opts.config_path, "JSON configuration file");
  lint->add_option("--select", lint_opts.select, "Only run these rule ids")->delimiter(',');
  lint->add_option("--ignore", lint_opts.ignore, "Skip these rule ids")->delimiter(',');
  lint->add_option("--fail-level", lint_opts.fail_level,
                   "Findings at or above this severity fail the run (info|warning|error)");
  lint->add_option("--threshold", lint_opts.thresholds, "Override a threshold, KEY=VALUE")
      ->allow_extra_args(false);

  CorpusOptions corpus_opts;
  CLI::App* corpus = app.add_subcommand("corpus", "Lint a tree and emit violation CSVs");
  corpus->add_option("dir", corpus_opts.directory, "Directory to scan")->required();
  corpus->add_option("--labels", corpus_opts.labels_path,
                     "Reproducibility labels CSV (path,reproducible)");
  corpus->add_option("--out", corpus_opts.out_dir, "Output directory for CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help/errors to the right stream
    return code == 0 ? kExitClean : kExitError;
  }

  try {
    if (lint->parsed()) return run_lint(lint_opts);
    if (corpus->parsed()) return run_corpus(corpus_opts);
  } catch (const std::exception& e) {
    diag(e.what());
    return kExitError;
  }
  return kExitError;
}
