#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nblint/text.hpp"

namespace nblint {

enum class ManifestKind { RequirementsText, EnvironmentYaml, ProjectManifest };

inline std::string_view to_string(ManifestKind k) {
  switch (k) {
    case ManifestKind::RequirementsText: return "requirements";
    case ManifestKind::EnvironmentYaml: return "environment";
    case ManifestKind::ProjectManifest: return "project-manifest";
  }
  return "?";
}

struct DependencyFile {
  std::string path;  // repository-relative
  ManifestKind kind;
  std::set<std::string> declared_packages;  // normalized names, no versions/extras/markers
};

/// PEP 503 style normalization: lowercase, runs of '-', '_', '.' become
/// a single hyphen.
inline std::string normalize_package_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_sep = false;
  for (char c : name) {
    if (c == '-' || c == '_' || c == '.') {
      pending_sep = !out.empty();
      continue;
    }
    if (pending_sep) {
      out += '-';
      pending_sep = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

inline bool is_valid_package_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

struct RequirementsParse {
  std::set<std::string> packages;
  int skipped_lines = 0;  // unparseable lines, counted not fatal
};

namespace detail {

/// Cuts a requirement at the first version/extras/marker separator and
/// returns the bare name, or empty when the line holds no usable name.
inline std::string_view cut_requirement_name(std::string_view spec) {
  static constexpr std::string_view kTwoChar[] = {"==", ">=", "<=", "~=", "!="};
  std::size_t cut = spec.size();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    char c = spec[i];
    bool two = false;
    for (auto op : kTwoChar) {
      if (spec.compare(i, 2, op) == 0) {
        two = true;
        break;
      }
    }
    if (two || c == '>' || c == '<' || c == '[' || c == ';' || c == '@' || c == ' ' ||
        c == '\t') {
      cut = i;
      break;
    }
  }
  return text::strip(spec.substr(0, cut));
}

inline void add_requirement_line(std::string_view line, RequirementsParse& out) {
  // Comments run from '#'; option lines ("-r", "--hash", ...) are skipped.
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  line = text::strip(line);
  if (line.empty()) return;
  if (line.front() == '-') return;
  std::string_view name = cut_requirement_name(line);
  if (!is_valid_package_name(name)) {
    ++out.skipped_lines;
    return;
  }
  out.packages.insert(normalize_package_name(name));
}

}  // namespace detail

/// Lenient pip-requirements parser: one package name per parseable line.
inline RequirementsParse parse_requirements(std::string_view content) {
  RequirementsParse out;
  for (const auto& line : text::split_lines(content)) {
    detail::add_requirement_line(line, out);
  }
  return out;
}

/// Reads the flat "dependencies:" sequence of a conda environment file.
/// Items are "name", "name=version", or a nested "pip:" sub-sequence
/// parsed with the requirements rules. Full YAML is out of scope.
inline RequirementsParse parse_environment_yaml(std::string_view content) {
  RequirementsParse out;
  bool in_dependencies = false;
  bool in_pip = false;
  std::size_t pip_item_indent = 0;

  for (const auto& raw : text::split_lines(content)) {
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (text::is_blank(line)) continue;

    std::size_t indent = 0;
    while (indent < line.size() && (line[indent] == ' ' || line[indent] == '\t')) ++indent;
    std::string_view body = text::strip(line);

    if (indent == 0) {
      in_dependencies = (body == "dependencies:");
      in_pip = false;
      continue;
    }
    if (!in_dependencies) continue;
    if (body.size() < 2 || body[0] != '-') continue;

    std::string_view item = text::strip(body.substr(1));
    if (in_pip && indent > pip_item_indent) {
      detail::add_requirement_line(item, out);
      continue;
    }
    in_pip = false;
    if (item == "pip:" || item == "pip :") {
      in_pip = true;
      pip_item_indent = indent;
      continue;
    }
    // Conda accepts single '=' version pins (name=1.2=build).
    std::size_t eq = item.find('=');
    if (eq != std::string_view::npos) item = item.substr(0, eq);
    std::string_view name = detail::cut_requirement_name(item);
    if (!is_valid_package_name(name)) {
      ++out.skipped_lines;
      continue;
    }
    out.packages.insert(normalize_package_name(name));
  }
  return out;
}

/// Best-effort scan of pyproject.toml / setup.py / Pipfile for declared
/// packages: quoted requirement strings inside dependency arrays, and
/// key-per-line tables ([packages], [tool.poetry.dependencies]).
inline RequirementsParse parse_project_manifest(std::string_view content) {
  RequirementsParse out;
  bool in_array = false;     // inside dependencies = [ ... ] / install_requires=[ ... ]
  int bracket_depth = 0;
  bool in_name_table = false;  // inside a TOML table whose keys are package names

  auto contains = [](std::string_view hay, std::string_view needle) {
    return hay.find(needle) != std::string_view::npos;
  };

  for (const auto& raw : text::split_lines(content)) {
    std::string_view line = text::strip(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[' && line.back() == ']') {
      std::string_view section = line.substr(1, line.size() - 2);
      in_name_table = section == "packages" || section == "dev-packages" ||
                      section == "tool.poetry.dependencies" ||
                      section == "tool.poetry.dev-dependencies";
      in_array = false;
      bracket_depth = 0;
      continue;
    }

    if (!in_array) {
      bool opener = (contains(line, "dependencies") || contains(line, "install_requires") ||
                     contains(line, "requires")) &&
                    (contains(line, "=") || contains(line, ":")) && contains(line, "[");
      if (opener) {
        in_array = true;
        bracket_depth = 0;
        // fall through: quoted strings on the opener line count too
      }
    }

    if (in_array) {
      std::string token;
      char quote = 0;
      for (char c : line) {
        if (quote) {
          if (c == quote) {
            detail::add_requirement_line(token, out);
            token.clear();
            quote = 0;
          } else {
            token += c;
          }
          continue;
        }
        if (c == '"' || c == '\'') {
          quote = c;
        } else if (c == '[') {
          ++bracket_depth;
        } else if (c == ']') {
          --bracket_depth;
          if (bracket_depth <= 0) {
            in_array = false;
            break;
          }
        }
      }
      continue;
    }

    if (in_name_table) {
      std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) continue;
      std::string_view key = text::strip(line.substr(0, eq));
      if (!key.empty() && key.front() == '"' && key.size() >= 2 && key.back() == '"') {
        key = key.substr(1, key.size() - 2);
      }
      if (key == "python") continue;  // interpreter pin, not a package
      if (is_valid_package_name(key)) {
        out.packages.insert(normalize_package_name(key));
      }
    }
  }
  return out;
}

inline RequirementsParse parse_manifest(ManifestKind kind, std::string_view content) {
  switch (kind) {
    case ManifestKind::RequirementsText: return parse_requirements(content);
    case ManifestKind::EnvironmentYaml: return parse_environment_yaml(content);
    case ManifestKind::ProjectManifest: return parse_project_manifest(content);
  }
  return {};
}

}  // namespace nblint
