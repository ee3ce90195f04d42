#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nblint/manifests.hpp"
#include "nblint/notebook.hpp"
#include "nblint/python_scan.hpp"
#include "nblint/stdlib_modules.hpp"
#include "nblint/text.hpp"

namespace nblint {

using pyscan::ImportFact;

struct PathLiteral {
  int line = 0;
  std::string literal;
};

/// Source facts for one code cell.
struct CellFacts {
  bool syntax_ok = true;
  std::optional<std::string> syntax_message;
  std::vector<ImportFact> imports;
  int n_function_defs = 0;
  int n_class_defs = 0;
  std::vector<int> magic_lines;  // 1-based
  bool is_cell_magic = false;
  std::vector<PathLiteral> path_literals;
  bool import_only = false;
};

/// Per-notebook facts keyed by cell index; only code cells have entries.
struct CodeFacts {
  std::map<int, CellFacts> cells;
};

struct MagicStrip {
  std::vector<std::string> cleaned;
  std::vector<int> magic_lines;  // 1-based
  bool is_cell_magic = false;
};

/// Blanks interactive-shell lines ("%...", "!...", "?" help forms) so the
/// remainder lexes as Python with stable line numbers. A leading "%%"
/// marks the whole cell as an opaque cell magic.
inline MagicStrip strip_magics(const std::vector<std::string>& lines) {
  MagicStrip out;
  if (!lines.empty() && std::string_view(lines.front()).substr(0, 2) == "%%") {
    out.is_cell_magic = true;
    out.magic_lines.push_back(1);
    return out;
  }
  out.cleaned.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view stripped = text::strip(lines[i]);
    bool magic = false;
    if (!stripped.empty()) {
      char first = stripped.front();
      if (first == '%' || first == '!' || first == '?') {
        magic = true;
      } else if (first != '#' && stripped.back() == '?') {
        magic = true;  // trailing help operator, e.g. "obj?"
      }
    }
    if (magic) {
      out.cleaned.emplace_back();
      out.magic_lines.push_back(static_cast<int>(i) + 1);
    } else {
      out.cleaned.push_back(lines[i]);
    }
  }
  return out;
}

inline bool is_path_literal(std::string_view s) {
  if (s.rfind("/home/", 0) == 0 || s.rfind("/Users/", 0) == 0 || s.rfind("/tmp/", 0) == 0 ||
      s.rfind("/data/", 0) == 0) {
    return true;
  }
  // Windows drive prefix: letter, colon, then a slash of either kind.
  if (s.size() >= 3 && std::isalpha(static_cast<unsigned char>(s[0])) && s[1] == ':' &&
      (s[2] == '\\' || s[2] == '/')) {
    return true;
  }
  return false;
}

/// Runs magic stripping and the surface scan over one cell's raw source.
inline CellFacts analyze_cell(const std::vector<std::string>& lines) {
  CellFacts facts;
  MagicStrip strip = strip_magics(lines);
  facts.magic_lines = std::move(strip.magic_lines);
  facts.is_cell_magic = strip.is_cell_magic;
  if (facts.is_cell_magic) {
    // Opaque non-Python body: syntactically fine, yields no facts.
    facts.import_only = false;
    return facts;
  }

  pyscan::ScanSummary scan = pyscan::analyze_source(strip.cleaned);
  facts.syntax_ok = scan.syntax_ok;
  facts.syntax_message = std::move(scan.syntax_message);
  facts.imports = std::move(scan.imports);
  facts.n_function_defs = scan.n_function_defs;
  facts.n_class_defs = scan.n_class_defs;
  facts.import_only = scan.imports_only;
  for (const auto& tok : scan.string_literals) {
    if (is_path_literal(tok.str)) {
      facts.path_literals.push_back({tok.line, tok.str});
    }
  }
  return facts;
}

/// Facts for every code cell of a notebook. Non-Python notebooks get no
/// entries; callers decide that via is_python_notebook.
inline CodeFacts analyze_notebook(const Notebook& nb) {
  CodeFacts facts;
  if (!is_python_notebook(nb)) return facts;
  for (const Cell& cell : nb.cells) {
    if (cell.kind != CellKind::Code) continue;
    facts.cells.emplace(cell.index, analyze_cell(cell.source_lines));
  }
  return facts;
}

enum class ImportKind { Stdlib, ThirdParty, Relative };

struct ImportClass {
  ImportKind kind;
  std::string package;  // normalized distribution name for ThirdParty
};

inline bool is_stdlib_module(std::string_view module) {
  return std::binary_search(kStdlibModules.begin(), kStdlibModules.end(), module);
}

/// Curated import-name -> distribution-name table for the common cases
/// where the two differ. Extensible via config ("import_aliases").
inline const std::map<std::string, std::string>& default_import_aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"sklearn", "scikit-learn"}, {"cv2", "opencv-python"},   {"PIL", "pillow"},
      {"yaml", "pyyaml"},          {"bs4", "beautifulsoup4"},  {"skimage", "scikit-image"},
      {"dateutil", "python-dateutil"}, {"dotenv", "python-dotenv"}, {"Crypto", "pycryptodome"},
  };
  return aliases;
}

/// Total and deterministic: relative beats stdlib beats the alias table
/// beats the identity default.
inline ImportClass classify_import(const ImportFact& import_fact,
                                   const std::map<std::string, std::string>& alias_map) {
  if (import_fact.is_relative) return {ImportKind::Relative, ""};
  if (is_stdlib_module(import_fact.module)) return {ImportKind::Stdlib, ""};
  if (auto it = alias_map.find(import_fact.module); it != alias_map.end()) {
    return {ImportKind::ThirdParty, normalize_package_name(it->second)};
  }
  return {ImportKind::ThirdParty, normalize_package_name(import_fact.module)};
}

}  // namespace nblint
