#pragma once

#include <string>

#include <json.hpp>

#include "nblint/engine.hpp"
#include "nblint/version.hpp"

namespace nblint {

/// Machine-readable report. Key order and compact layout are fixed so CI
/// diffs are byte-stable; absent locations serialize as null; the text
/// ends with exactly one newline.
inline std::string render_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["summary"] = {{"error", report.n_error},
                    {"warning", report.n_warning},
                    {"info", report.n_info}};
  nlohmann::ordered_json findings = nlohmann::ordered_json::array();
  for (const Finding& f : report.findings) {
    nlohmann::ordered_json item;
    item["rule_id"] = f.rule_id;
    item["severity"] = std::string(to_string(f.severity));
    item["path"] = f.notebook_path ? nlohmann::ordered_json(*f.notebook_path)
                                   : nlohmann::ordered_json(nullptr);
    item["cell_index"] =
        f.cell_index ? nlohmann::ordered_json(*f.cell_index) : nlohmann::ordered_json(nullptr);
    item["line"] = f.line ? nlohmann::ordered_json(*f.line) : nlohmann::ordered_json(nullptr);
    item["message"] = f.message;
    item["suggestion"] = f.suggestion;
    findings.push_back(std::move(item));
  }
  doc["findings"] = std::move(findings);
  return doc.dump() + "\n";
}

inline std::string severity_label(Severity s) {
  switch (s) {
    case Severity::Error: return "ERROR";
    case Severity::Warning: return "WARNING";
    case Severity::Info: return "INFO";
  }
  return "?";
}

/// Human-readable report: one line per finding plus an indented hint,
/// then a summary footer. Location fields are omitted when absent.
inline std::string render_text(const Report& report) {
  std::string out;
  for (const Finding& f : report.findings) {
    std::string location;
    if (f.notebook_path) {
      location += *f.notebook_path;
      if (f.cell_index) {
        location += ':' + std::to_string(*f.cell_index);
        if (f.line) location += ':' + std::to_string(*f.line);
      }
      location += ": ";
    }
    out += location + severity_label(f.severity) + ' ' + f.rule_id + ' ' + f.message + '\n';
    out += "  hint: " + f.suggestion + '\n';
  }
  out += std::to_string(report.n_error) + " errors, " + std::to_string(report.n_warning) +
         " warnings, " + std::to_string(report.n_info) + " infos\n";
  return out;
}

}  // namespace nblint
