#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nblint/engine.hpp"
#include "nblint/result.hpp"
#include "nblint/rules.hpp"
#include "nblint/stats.hpp"
#include "nblint/text.hpp"

namespace nblint {

/// notebooks x rules boolean matrix. Columns are the catalog rules in
/// registry order plus a final parse-failure column; repository-scope
/// findings propagate to every notebook of their repository.
struct ViolationMatrix {
  std::vector<std::string> paths;     // row labels, sorted
  std::vector<std::string> rule_ids;  // column labels, registry order + NBL-PARSE
  std::vector<std::vector<std::uint8_t>> cells;  // cells[row][col], 0/1

  std::size_t parse_column() const { return rule_ids.size() - 1; }
};

struct CorpusError {
  std::string message;  // DuplicateNotebookPath and friends
};

/// Builds the violation record from one or more lint reports.
inline Result<ViolationMatrix, CorpusError> build_matrix(const std::vector<Report>& reports) {
  ViolationMatrix matrix;
  for (const RuleDescriptor& rule : default_registry()) matrix.rule_ids.push_back(rule.id);
  matrix.rule_ids.emplace_back(kParseRuleId);

  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < matrix.rule_ids.size(); ++i) column[matrix.rule_ids[i]] = i;

  std::map<std::string, std::vector<std::uint8_t>> rows;
  for (const Report& report : reports) {
    std::vector<std::string> report_paths;
    for (const NotebookReportEntry& entry : report.notebooks) {
      auto [it, inserted] =
          rows.emplace(entry.path, std::vector<std::uint8_t>(matrix.rule_ids.size(), 0));
      if (!inserted) {
        return CorpusError{"duplicate notebook path \"" + entry.path + "\""};
      }
      if (entry.parse_failed) it->second[column.at(std::string(kParseRuleId))] = 1;
      report_paths.push_back(entry.path);
    }
    for (const Finding& f : report.findings) {
      auto col = column.find(f.rule_id);
      if (col == column.end()) continue;
      if (f.notebook_path) {
        if (auto row = rows.find(*f.notebook_path); row != rows.end()) {
          row->second[col->second] = 1;
        }
      } else {
        // Repository-scope finding: applies to every notebook of this report.
        for (const std::string& path : report_paths) rows[path][col->second] = 1;
      }
    }
  }

  for (auto& [path, bits] : rows) {
    matrix.paths.push_back(path);
    matrix.cells.push_back(std::move(bits));
  }
  return matrix;
}

/// Per-rule association of violations with reproducibility labels.
struct AssociationResult {
  std::string rule_id;
  ContingencyTable table;
  bool degenerate = false;  // rule violated by all or no labeled notebooks
  double odds_ratio = 0.0;
  double p_fisher = 1.0;
  double p_chi2 = 1.0;
  double p_fisher_bonferroni = 1.0;
  std::int64_t n = 0;
};

struct AssociationOutcome {
  std::vector<AssociationResult> results;  // p_fisher ascending, degenerate last
  std::int64_t n_labeled = 0;
  std::int64_t n_dropped_unlabeled = 0;
  std::int64_t n_excluded_parse_failures = 0;
};

struct AssocError {
  std::string message;  // NoLabeledRows, unknown labeled path
};

inline Result<AssociationOutcome, AssocError> associate(
    const ViolationMatrix& matrix, const std::map<std::string, bool>& reproducible_by_path) {
  std::set<std::string> known(matrix.paths.begin(), matrix.paths.end());
  for (const auto& [path, label] : reproducible_by_path) {
    (void)label;
    if (!known.count(path)) {
      return AssocError{"labeled path \"" + path + "\" does not appear in the matrix"};
    }
  }

  AssociationOutcome outcome;
  const std::size_t parse_col = matrix.parse_column();
  std::vector<std::size_t> usable_rows;
  for (std::size_t r = 0; r < matrix.paths.size(); ++r) {
    if (matrix.cells[r][parse_col]) {
      ++outcome.n_excluded_parse_failures;
      continue;
    }
    if (!reproducible_by_path.count(matrix.paths[r])) {
      ++outcome.n_dropped_unlabeled;
      continue;
    }
    usable_rows.push_back(r);
  }
  outcome.n_labeled = static_cast<std::int64_t>(usable_rows.size());
  if (usable_rows.empty()) {
    return AssocError{"no labeled rows to associate"};
  }

  for (std::size_t col = 0; col < parse_col; ++col) {
    AssociationResult res;
    res.rule_id = matrix.rule_ids[col];
    for (std::size_t r : usable_rows) {
      bool violated = matrix.cells[r][col] != 0;
      bool repro = reproducible_by_path.at(matrix.paths[r]);
      if (violated && !repro) ++res.table.a;
      else if (violated && repro) ++res.table.b;
      else if (!violated && !repro) ++res.table.c;
      else ++res.table.d;
    }
    res.n = res.table.n();
    res.degenerate = (res.table.a + res.table.b == 0) || (res.table.c + res.table.d == 0);
    if (!res.degenerate) {
      res.odds_ratio = odds_ratio(res.table);
      res.p_fisher = fisher_exact_two_sided(res.table);
      res.p_chi2 = chi_square_p(chi_square_statistic(res.table));
    }
    outcome.results.push_back(std::move(res));
  }

  const auto m = static_cast<double>(
      std::count_if(outcome.results.begin(), outcome.results.end(),
                    [](const AssociationResult& r) { return !r.degenerate; }));
  for (AssociationResult& res : outcome.results) {
    if (!res.degenerate) res.p_fisher_bonferroni = std::min(1.0, res.p_fisher * m);
  }

  std::sort(outcome.results.begin(), outcome.results.end(),
            [](const AssociationResult& x, const AssociationResult& y) {
              if (x.degenerate != y.degenerate) return !x.degenerate;  // flagged rows last
              if (!x.degenerate && x.p_fisher != y.p_fisher) return x.p_fisher < y.p_fisher;
              return x.rule_id < y.rule_id;
            });
  return outcome;
}

namespace detail {

inline std::string csv_field(std::string_view s) {
  bool needs_quotes = s.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Shortest round-trip decimal form; deterministic for identical inputs.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

/// Splits one CSV record, honoring RFC 4180 quoting.
inline std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace detail

inline std::string matrix_to_csv(const ViolationMatrix& matrix) {
  std::string out = "path";
  for (const std::string& id : matrix.rule_ids) out += ',' + id;
  out += '\n';
  for (std::size_t r = 0; r < matrix.paths.size(); ++r) {
    out += detail::csv_field(matrix.paths[r]);
    for (std::uint8_t bit : matrix.cells[r]) {
      out += ',';
      out += bit ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

inline std::string association_to_csv(const std::vector<AssociationResult>& results) {
  std::string out = "rule_id,a,b,c,d,odds_ratio,p_fisher,p_chi2,p_fisher_bonferroni\n";
  for (const AssociationResult& res : results) {
    out += res.rule_id;
    out += ',' + std::to_string(res.table.a) + ',' + std::to_string(res.table.b) + ',' +
           std::to_string(res.table.c) + ',' + std::to_string(res.table.d);
    if (res.degenerate) {
      out += ",NA,NA,NA,NA";
    } else {
      out += ',' + detail::format_double(res.odds_ratio);
      out += ',' + detail::format_double(res.p_fisher);
      out += ',' + detail::format_double(res.p_chi2);
      out += ',' + detail::format_double(res.p_fisher_bonferroni);
    }
    out += '\n';
  }
  return out;
}

struct LabelsError {
  std::string message;
};

/// Reads the external reproducibility labels: header "path,reproducible",
/// one record per notebook, reproducible in {0,1}.
inline Result<std::map<std::string, bool>, LabelsError> parse_labels_csv(
    std::string_view content) {
  std::map<std::string, bool> labels;
  auto lines = text::split_lines(content);
  if (lines.empty()) return LabelsError{"labels file is empty"};
  if (text::strip(lines.front()) != "path,reproducible") {
    return LabelsError{"labels header must be exactly \"path,reproducible\""};
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (text::is_blank(lines[i])) continue;
    auto fields = detail::split_csv_record(lines[i]);
    if (fields.size() != 2) {
      return LabelsError{"line " + std::to_string(i + 1) + ": expected 2 fields"};
    }
    std::string_view value = text::strip(fields[1]);
    if (value != "0" && value != "1") {
      return LabelsError{"line " + std::to_string(i + 1) + ": reproducible must be 0 or 1"};
    }
    auto [it, inserted] = labels.emplace(fields[0], value == "1");
    if (!inserted) {
      return LabelsError{"line " + std::to_string(i + 1) + ": duplicate path \"" + fields[0] + "\""};
    }
  }
  return labels;
}

}  // namespace nblint
