#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nblint {

enum class Severity { Info = 0, Warning = 1, Error = 2 };

inline std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "?";
}

inline std::optional<Severity> severity_from_string(std::string_view s) {
  if (s == "info") return Severity::Info;
  if (s == "warning") return Severity::Warning;
  if (s == "error") return Severity::Error;
  return std::nullopt;
}

enum class RuleScope { Notebook, Repository };

struct RuleDescriptor {
  std::string id;    // "NBL-<T><NN>", T in {E,D,C,M,V,R}
  std::string slug;  // kebab-case name
  std::string theme;
  RuleScope scope = RuleScope::Notebook;
  Severity default_severity = Severity::Warning;
  bool requires_repository = false;  // skipped with a notice on bare-notebook runs
  std::string description;
  std::string suggestion;
};

/// Synthetic rule id for notebooks that fail to parse; outside the
/// catalog, always severity Error, cannot be selected or ignored.
inline constexpr std::string_view kParseRuleId = "NBL-PARSE";

namespace themes {
inline constexpr std::string_view kStructure = "Structure & Execution";
inline constexpr std::string_view kDocumentation = "Documentation & Narrative";
inline constexpr std::string_view kCodeQuality = "Code Quality";
inline constexpr std::string_view kModularization = "Modularization & Reuse";
inline constexpr std::string_view kVersioning = "Versioning & Collaboration";
inline constexpr std::string_view kDependencies = "Dependencies & Reproducibility";
}  // namespace themes

/// The built-in catalog: 17 rules across 6 themes, stable order by id.
inline const std::vector<RuleDescriptor>& default_registry() {
  static const std::vector<RuleDescriptor> registry = [] {
    using enum Severity;
    auto nb = RuleScope::Notebook;
    auto repo = RuleScope::Repository;
    std::vector<RuleDescriptor> rules;
    auto add = [&](std::string id, std::string slug, std::string_view theme, RuleScope scope,
                   Severity sev, bool needs_repo, std::string desc, std::string hint) {
      rules.push_back({std::move(id), std::move(slug), std::string(theme), scope, sev, needs_repo,
                       std::move(desc), std::move(hint)});
    };

    add("NBL-E01", "non-linear-execution", themes::kStructure, nb, Error, false,
        "Code cells were not executed in document order.",
        "Restart the kernel and run all cells top to bottom before sharing.");
    add("NBL-E02", "unexecuted-cells", themes::kStructure, nb, Warning, false,
        "A non-empty code cell was never executed while others were.",
        "Run the cell, or delete it if it is no longer needed.");
    add("NBL-E03", "empty-trailing-cells", themes::kStructure, nb, Info, false,
        "The notebook ends with one or more empty cells.",
        "Delete the empty cells at the end of the notebook.");
    add("NBL-D01", "missing-title", themes::kDocumentation, nb, Warning, false,
        "The notebook does not start with a Markdown title cell.",
        "Add a leading Markdown cell whose first line is a '#' heading.");
    add("NBL-D02", "low-markdown-ratio", themes::kDocumentation, nb, Warning, false,
        "Too little narrative text relative to the number of cells.",
        "Document intent and findings in Markdown cells between code sections.");
    add("NBL-D03", "bad-filename", themes::kDocumentation, nb, Warning, false,
        "The notebook filename is a default name or contains unsafe characters.",
        "Rename the notebook using only letters, digits, '.', '_' and '-'.");
    add("NBL-C01", "syntax-error-cell", themes::kCodeQuality, nb, Error, false,
        "A code cell does not parse as Python.",
        "Fix the syntax error; the cell cannot run as written.");
    add("NBL-C02", "overlong-cell", themes::kCodeQuality, nb, Info, false,
        "A code cell exceeds the configured line budget.",
        "Split the cell into smaller steps or extract helper functions.");
    add("NBL-C03", "duplicate-cells", themes::kCodeQuality, nb, Warning, false,
        "Two code cells contain identical source.",
        "Remove the duplicate or factor the shared code into a function.");
    add("NBL-C04", "imports-scattered", themes::kCodeQuality, nb, Warning, false,
        "Import statements appear after the first computational cell.",
        "Collect all imports in the first code cell of the notebook.");
    add("NBL-M01", "no-abstractions-in-long-notebook", themes::kModularization, nb, Warning,
        false, "A long notebook defines no functions or classes.",
        "Consolidate repeated logic into functions, or move code to a module.");
    add("NBL-M02", "notebook-too-long", themes::kModularization, nb, Warning, false,
        "The notebook has more code cells than the configured budget.",
        "Split the analysis into multiple notebooks or move code to modules.");
    add("NBL-V01", "not-under-version-control", themes::kVersioning, repo, Warning, true,
        "The repository is not under version control.",
        "Initialize a Git repository at the project root.");
    add("NBL-V02", "outputs-retained", themes::kVersioning, nb, Info, true,
        "A versioned notebook retains execution outputs.",
        "Clear outputs before committing to keep diffs reviewable.");
    add("NBL-R01", "missing-dependency-manifest", themes::kDependencies, repo, Error, true,
        "The repository declares no dependencies.",
        "Add a requirements.txt, environment.yml or project manifest.");
    add("NBL-R02", "undeclared-import", themes::kDependencies, repo, Error, true,
        "A third-party import is missing from the declared dependencies.",
        "Declare the package in the dependency manifest.");
    add("NBL-R03", "non-portable-path", themes::kDependencies, nb, Warning, false,
        "An absolute path literal will not resolve on other machines.",
        "Use paths relative to the repository root, or a configuration value.");
    return rules;
  }();
  return registry;
}

inline const RuleDescriptor* find_rule(std::string_view id) {
  for (const RuleDescriptor& rule : default_registry()) {
    if (rule.id == id) return &rule;
  }
  return nullptr;
}

}  // namespace nblint
