#pragma once

#include <algorithm>

#include "nblint/notebook.hpp"
#include "nblint/text.hpp"

namespace nblint {

struct NotebookMetrics {
  int n_cells = 0;
  int n_code = 0;
  int n_markdown = 0;
  int n_raw = 0;
  int n_empty = 0;
  int n_executed = 0;          // code cells with an execution_count
  double markdown_ratio = 0.0; // 0 when the notebook has no cells
  int total_code_lines = 0;    // non-blank lines across code cells
  int max_code_cell_lines = 0; // largest non-blank line count of any code cell
};

inline int non_blank_line_count(const Cell& cell) {
  int n = 0;
  for (const auto& line : cell.source_lines) {
    if (!text::is_blank(line)) ++n;
  }
  return n;
}

inline NotebookMetrics compute_metrics(const Notebook& nb) {
  NotebookMetrics m;
  m.n_cells = static_cast<int>(nb.cells.size());
  for (const Cell& cell : nb.cells) {
    if (cell.is_empty) ++m.n_empty;
    switch (cell.kind) {
      case CellKind::Markdown:
        ++m.n_markdown;
        break;
      case CellKind::Raw:
        ++m.n_raw;
        break;
      case CellKind::Code: {
        ++m.n_code;
        if (cell.execution_count) ++m.n_executed;
        int lines = non_blank_line_count(cell);
        m.total_code_lines += lines;
        m.max_code_cell_lines = std::max(m.max_code_cell_lines, lines);
        break;
      }
    }
  }
  if (m.n_cells > 0) {
    m.markdown_ratio = static_cast<double>(m.n_markdown) / static_cast<double>(m.n_cells);
  }
  return m;
}

}  // namespace nblint
