#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nblint/result.hpp"
#include "nblint/text.hpp"

namespace nblint {

enum class CellKind { Code, Markdown, Raw };

inline std::string_view to_string(CellKind k) {
  switch (k) {
    case CellKind::Code: return "code";
    case CellKind::Markdown: return "markdown";
    case CellKind::Raw: return "raw";
  }
  return "?";
}

/// One notebook cell. Source is stored as normalized lines with no
/// trailing newline characters; execution_count and outputs are
/// meaningful for code cells only.
struct Cell {
  int index = 0;  // 0-based document position
  CellKind kind = CellKind::Code;
  std::vector<std::string> source_lines;
  std::optional<int> execution_count;  // >= 1 when present
  int output_count = 0;
  bool is_empty = true;
};

struct Notebook {
  std::string path;
  int format_major = 0;
  int format_minor = 0;
  std::optional<std::string> language;     // kernelspec.language or language_info.name
  std::optional<std::string> kernel_name;  // kernelspec.name
  std::vector<Cell> cells;
};

enum class ParseErrorKind {
  MalformedJson,      // not valid JSON
  NotANotebook,       // missing/ill-typed "cells" or "nbformat"
  UnsupportedFormat,  // nbformat major != 4
  InvalidCell,        // cell missing "cell_type" or with unknown cell_type
};

inline std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::MalformedJson: return "malformed-json";
    case ParseErrorKind::NotANotebook: return "not-a-notebook";
    case ParseErrorKind::UnsupportedFormat: return "unsupported-format";
    case ParseErrorKind::InvalidCell: return "invalid-cell";
  }
  return "?";
}

struct ParseError {
  ParseErrorKind kind;
  std::string message;
};

using ParseResult = Result<Notebook, ParseError>;

inline bool compute_is_empty(const std::vector<std::string>& lines) {
  for (const auto& line : lines) {
    if (!text::is_blank(line)) return false;
  }
  return true;
}

namespace detail {

/// nbformat allows cell source as one string or a list of strings; both
/// normalize to the same line sequence.
inline Result<std::vector<std::string>, ParseError> normalize_source(const nlohmann::json& src) {
  if (src.is_string()) {
    return text::split_lines(src.get_ref<const std::string&>());
  }
  if (src.is_array()) {
    std::string joined;
    for (const auto& piece : src) {
      if (!piece.is_string()) {
        return ParseError{ParseErrorKind::InvalidCell, "cell source list holds a non-string"};
      }
      joined += piece.get_ref<const std::string&>();
    }
    return text::split_lines(joined);
  }
  return ParseError{ParseErrorKind::InvalidCell, "cell source is neither string nor list"};
}

inline Result<Cell, ParseError> parse_cell(const nlohmann::json& raw, int index) {
  if (!raw.is_object()) {
    return ParseError{ParseErrorKind::InvalidCell,
                      "cell " + std::to_string(index) + " is not an object"};
  }
  auto type_it = raw.find("cell_type");
  if (type_it == raw.end() || !type_it->is_string()) {
    return ParseError{ParseErrorKind::InvalidCell,
                      "cell " + std::to_string(index) + " has no cell_type"};
  }
  const std::string& type = type_it->get_ref<const std::string&>();
  Cell cell;
  cell.index = index;
  if (type == "code") {
    cell.kind = CellKind::Code;
  } else if (type == "markdown") {
    cell.kind = CellKind::Markdown;
  } else if (type == "raw") {
    cell.kind = CellKind::Raw;
  } else {
    return ParseError{ParseErrorKind::InvalidCell,
                      "cell " + std::to_string(index) + " has unknown cell_type \"" + type + "\""};
  }

  if (auto src = raw.find("source"); src != raw.end()) {
    auto lines = normalize_source(*src);
    if (!lines.ok()) return lines.error();
    cell.source_lines = std::move(lines).value();
  }
  cell.is_empty = compute_is_empty(cell.source_lines);

  if (cell.kind == CellKind::Code) {
    if (auto ec = raw.find("execution_count"); ec != raw.end() && !ec->is_null()) {
      if (!ec->is_number_integer()) {
        return ParseError{ParseErrorKind::InvalidCell,
                          "cell " + std::to_string(index) + " execution_count is not an integer"};
      }
      auto count = ec->get<long long>();
      if (count < 1) {
        return ParseError{ParseErrorKind::InvalidCell,
                          "cell " + std::to_string(index) + " execution_count < 1"};
      }
      cell.execution_count = static_cast<int>(count);
    }
    if (auto outs = raw.find("outputs"); outs != raw.end() && outs->is_array()) {
      cell.output_count = static_cast<int>(outs->size());
    }
  }
  // Markdown/raw cells carry no execution state; stray keys are ignored.
  return cell;
}

}  // namespace detail

/// Parses a Jupyter nbformat 4.x document. Total over arbitrary bytes:
/// every input yields a Notebook or one of the declared errors.
inline ParseResult parse_notebook(std::string_view raw_bytes, std::string path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(raw_bytes);
  } catch (const std::exception& e) {
    return ParseError{ParseErrorKind::MalformedJson, e.what()};
  }

  try {
    if (!doc.is_object()) {
      return ParseError{ParseErrorKind::NotANotebook, "top-level JSON value is not an object"};
    }
    auto fmt = doc.find("nbformat");
    if (fmt == doc.end()) {
      return ParseError{ParseErrorKind::NotANotebook, "missing \"nbformat\" key"};
    }
    if (!fmt->is_number_integer()) {
      return ParseError{ParseErrorKind::NotANotebook, "\"nbformat\" is not an integer"};
    }
    auto cells = doc.find("cells");
    if (cells == doc.end()) {
      return ParseError{ParseErrorKind::NotANotebook, "missing \"cells\" key"};
    }
    if (!cells->is_array()) {
      return ParseError{ParseErrorKind::NotANotebook, "\"cells\" is not a list"};
    }

    Notebook nb;
    nb.path = std::move(path);
    nb.format_major = fmt->get<int>();
    if (nb.format_major != 4) {
      return ParseError{ParseErrorKind::UnsupportedFormat,
                        "nbformat " + std::to_string(nb.format_major) +
                            " is not supported (only 4.x)"};
    }
    if (auto minor = doc.find("nbformat_minor"); minor != doc.end() && minor->is_number_integer()) {
      nb.format_minor = minor->get<int>();
    }

    if (auto meta = doc.find("metadata"); meta != doc.end() && meta->is_object()) {
      if (auto ks = meta->find("kernelspec"); ks != meta->end() && ks->is_object()) {
        if (auto lang = ks->find("language"); lang != ks->end() && lang->is_string()) {
          nb.language = lang->get<std::string>();
        }
        if (auto name = ks->find("name"); name != ks->end() && name->is_string()) {
          nb.kernel_name = name->get<std::string>();
        }
      }
      if (!nb.language) {
        if (auto li = meta->find("language_info"); li != meta->end() && li->is_object()) {
          if (auto name = li->find("name"); name != li->end() && name->is_string()) {
            nb.language = name->get<std::string>();
          }
        }
      }
    }

    nb.cells.reserve(cells->size());
    int index = 0;
    for (const auto& raw_cell : *cells) {
      auto cell = detail::parse_cell(raw_cell, index);
      if (!cell.ok()) return cell.error();
      nb.cells.push_back(std::move(cell).value());
      ++index;
    }
    return nb;
  } catch (const std::exception& e) {
    // Numeric overflow and friends from get<>; treat as a malformed document.
    return ParseError{ParseErrorKind::NotANotebook, e.what()};
  }
}

/// True when code facts should be extracted: language is "python" or absent.
inline bool is_python_notebook(const Notebook& nb) {
  return !nb.language || text::to_lower(*nb.language) == "python";
}

}  // namespace nblint
