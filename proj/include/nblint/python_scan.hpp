#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nblint/result.hpp"
#include "nblint/text.hpp"

// A Python surface scanner: enough of the grammar to decide syntax
// validity at the lexical/statement level, enumerate import statements
// (including multi-line forms), count top-level definitions, and collect
// string literals. It is deliberately permissive where a full parser
// would not be; it never executes or resolves anything.

namespace nblint::pyscan {

struct Token {
  enum class Kind { Word, Str, Num, Op };
  Kind kind;
  std::string str;  // for Str: inner content, quotes and prefix removed
  int line;         // 1-based physical line of the token start
};

struct LogicalLine {
  int indent = 0;  // leading-whitespace width of the first physical line (tab = 8)
  int line = 1;    // 1-based physical line where the logical line starts
  std::vector<Token> tokens;
};

struct ScanError {
  int line = 0;
  std::string message;
};

namespace detail {

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_string_prefix(std::string_view word) {
  if (word.size() > 2) return false;
  for (char c : word) {
    char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (l != 'r' && l != 'b' && l != 'u' && l != 'f') return false;
  }
  return true;
}

/// Scans one string literal starting at lines[row][col] (the opening
/// quote). Advances row/col past the literal and appends the inner text.
/// Escape pairs are consumed uniformly; the raw flag does not change
/// lexing, matching the reference tokenizer.
inline std::optional<ScanError> scan_string(const std::vector<std::string>& lines,
                                            std::size_t& row, std::size_t& col,
                                            std::string& content) {
  const char quote = lines[row][col];
  const int start_line = static_cast<int>(row) + 1;
  const std::string& first = lines[row];
  const bool triple = col + 2 < first.size() && first[col + 1] == quote && first[col + 2] == quote;

  if (triple) {
    col += 3;
    while (true) {
      const std::string& cur = lines[row];
      if (col >= cur.size()) {
        ++row;
        col = 0;
        if (row >= lines.size()) {
          return ScanError{start_line, "unterminated triple-quoted string literal"};
        }
        content += '\n';
        continue;
      }
      char c = cur[col];
      if (c == '\\') {
        content += c;
        ++col;
        if (col < cur.size()) {
          content += cur[col];
          ++col;
        }
        continue;
      }
      if (c == quote && col + 2 < cur.size() && cur[col + 1] == quote && cur[col + 2] == quote) {
        col += 3;
        return std::nullopt;
      }
      content += c;
      ++col;
    }
  }

  ++col;  // past opening quote
  while (true) {
    const std::string& cur = lines[row];
    if (col >= cur.size()) {
      return ScanError{static_cast<int>(row) + 1, "unterminated string literal"};
    }
    char c = cur[col];
    if (c == '\\') {
      if (col + 1 >= cur.size()) {
        // backslash-newline continues a short string on the next line
        ++row;
        col = 0;
        if (row >= lines.size()) {
          return ScanError{start_line, "unterminated string literal at end of source"};
        }
        content += '\n';
        continue;
      }
      content += c;
      content += cur[col + 1];
      col += 2;
      continue;
    }
    if (c == quote) {
      ++col;
      return std::nullopt;
    }
    content += c;
    ++col;
  }
}

inline int indent_width(std::string_view line, std::size_t& first_code_col) {
  int width = 0;
  std::size_t i = 0;
  for (; i < line.size(); ++i) {
    if (line[i] == ' ') {
      ++width;
    } else if (line[i] == '\t') {
      width += 8 - width % 8;
    } else {
      break;
    }
  }
  first_code_col = i;
  return width;
}

inline bool matches_open(char open, char close) {
  return (open == '(' && close == ')') || (open == '[' && close == ']') ||
         (open == '{' && close == '}');
}

}  // namespace detail

/// Assembles tokens into logical lines, handling comments, string
/// literals, bracket continuation and backslash continuation. Errors are
/// lexical: unterminated strings, mismatched brackets, stray backslashes.
inline Result<std::vector<LogicalLine>, ScanError> scan_logical_lines(
    const std::vector<std::string>& lines) {
  std::vector<LogicalLine> out;
  struct OpenBracket {
    char ch;
    int line;
  };
  std::vector<OpenBracket> brackets;
  LogicalLine current;
  bool line_open = false;

  std::size_t row = 0;
  while (row < lines.size()) {
    const std::string* cur = &lines[row];
    std::size_t col = 0;

    if (!line_open) {
      std::size_t code_col = 0;
      int indent = detail::indent_width(*cur, code_col);
      if (code_col >= cur->size() || (*cur)[code_col] == '#') {
        ++row;
        continue;  // blank or comment-only physical line
      }
      current = LogicalLine{indent, static_cast<int>(row) + 1, {}};
      line_open = true;
      col = code_col;
    }

    bool continued = false;  // backslash continuation onto the next row
    while (col < cur->size()) {
      char c = (*cur)[col];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        ++col;
        continue;
      }
      if (c == '#') break;  // comment to end of physical line
      if (c == '\\') {
        if (text::is_blank(cur->substr(col + 1))) {
          continued = true;
          col = cur->size();
          break;
        }
        return ScanError{static_cast<int>(row) + 1,
                         "unexpected character after line continuation character"};
      }
      int tok_line = static_cast<int>(row) + 1;
      if (c == '\'' || c == '"') {
        std::string content;
        if (auto err = detail::scan_string(lines, row, col, content)) return *err;
        cur = &lines[row];
        current.tokens.push_back({Token::Kind::Str, std::move(content), tok_line});
        continue;
      }
      if (detail::is_ident_start(c)) {
        std::size_t start = col;
        while (col < cur->size() && detail::is_ident_char((*cur)[col])) ++col;
        std::string word = cur->substr(start, col - start);
        if (col < cur->size() && ((*cur)[col] == '\'' || (*cur)[col] == '"') &&
            detail::is_string_prefix(word)) {
          std::string content;
          if (auto err = detail::scan_string(lines, row, col, content)) return *err;
          cur = &lines[row];
          current.tokens.push_back({Token::Kind::Str, std::move(content), tok_line});
          continue;
        }
        current.tokens.push_back({Token::Kind::Word, std::move(word), tok_line});
        continue;
      }
      if (detail::is_digit(c) || (c == '.' && col + 1 < cur->size() &&
                                  detail::is_digit((*cur)[col + 1]))) {
        std::size_t start = col;
        ++col;
        while (col < cur->size() &&
               (detail::is_ident_char((*cur)[col]) || (*cur)[col] == '.')) {
          ++col;
        }
        current.tokens.push_back({Token::Kind::Num, cur->substr(start, col - start), tok_line});
        continue;
      }
      if (c == '(' || c == '[' || c == '{') {
        brackets.push_back({c, tok_line});
      } else if (c == ')' || c == ']' || c == '}') {
        if (brackets.empty()) {
          return ScanError{tok_line, std::string("unmatched '") + c + "'"};
        }
        if (!detail::matches_open(brackets.back().ch, c)) {
          return ScanError{tok_line, std::string("closing bracket '") + c +
                                         "' does not match opening bracket '" +
                                         brackets.back().ch + "'"};
        }
        brackets.pop_back();
      }
      current.tokens.push_back({Token::Kind::Op, std::string(1, c), tok_line});
      ++col;
    }

    ++row;
    if (line_open && !continued && brackets.empty()) {
      out.push_back(std::move(current));
      current = {};
      line_open = false;
    }
    if (continued && row >= lines.size()) {
      return ScanError{static_cast<int>(row), "line continuation at end of source"};
    }
  }

  if (!brackets.empty()) {
    return ScanError{brackets.back().line,
                     std::string("'") + brackets.back().ch + "' was never closed"};
  }
  if (line_open) {
    out.push_back(std::move(current));
  }
  return out;
}

struct ImportFact {
  int line = 0;        // 1-based within the cell
  std::string module;  // top-level module name; empty for "from . import x"
  bool is_relative = false;
};

/// Facts gathered from one cell's cleaned source.
struct ScanSummary {
  bool syntax_ok = true;
  std::optional<std::string> syntax_message;
  std::vector<ImportFact> imports;
  int n_function_defs = 0;  // top level only
  int n_class_defs = 0;     // top level only
  std::vector<Token> string_literals;
  bool imports_only = true;  // every statement is an import (vacuously true)
};

namespace detail {

using TokenSpan = std::pair<std::size_t, std::size_t>;  // [begin, end) into tokens

inline bool is_word(const Token& t, std::string_view w) {
  return t.kind == Token::Kind::Word && t.str == w;
}
inline bool is_op(const Token& t, char c) {
  return t.kind == Token::Kind::Op && t.str.size() == 1 && t.str[0] == c;
}

inline std::optional<ScanError> parse_import_stmt(const std::vector<Token>& toks,
                                                  std::size_t begin, std::size_t end,
                                                  std::vector<ImportFact>& imports) {
  std::size_t i = begin + 1;
  while (true) {
    if (i >= end || toks[i].kind != Token::Kind::Word) {
      return ScanError{toks[begin].line, "invalid syntax in import statement"};
    }
    imports.push_back({toks[begin].line, toks[i].str, false});
    ++i;
    while (i + 1 < end && is_op(toks[i], '.') && toks[i + 1].kind == Token::Kind::Word) i += 2;
    if (i < end && is_op(toks[i], '.')) {
      return ScanError{toks[i].line, "invalid dotted name in import statement"};
    }
    if (i < end && is_word(toks[i], "as")) {
      if (i + 1 >= end || toks[i + 1].kind != Token::Kind::Word) {
        return ScanError{toks[i].line, "invalid alias in import statement"};
      }
      i += 2;
    }
    if (i == end) return std::nullopt;
    if (is_op(toks[i], ',')) {
      ++i;
      continue;
    }
    return ScanError{toks[i].line, "invalid syntax in import statement"};
  }
}

inline std::optional<ScanError> parse_from_stmt(const std::vector<Token>& toks,
                                                std::size_t begin, std::size_t end,
                                                std::vector<ImportFact>& imports) {
  std::size_t i = begin + 1;
  int dots = 0;
  while (i < end && is_op(toks[i], '.')) {
    ++dots;
    ++i;
  }
  std::string module;
  if (i < end && toks[i].kind == Token::Kind::Word && toks[i].str != "import") {
    module = toks[i].str;
    ++i;
    while (i + 1 < end && is_op(toks[i], '.') && toks[i + 1].kind == Token::Kind::Word) i += 2;
  }
  if (dots == 0 && module.empty()) {
    return ScanError{toks[begin].line, "missing module in from-import"};
  }
  if (i >= end || !is_word(toks[i], "import")) {
    return ScanError{toks[begin].line, "expected 'import' in from-import"};
  }
  ++i;
  if (i >= end) return ScanError{toks[begin].line, "missing names in from-import"};

  if (is_op(toks[i], '*')) {
    ++i;
  } else {
    bool paren = is_op(toks[i], '(');
    if (paren) ++i;
    while (true) {
      if (i >= end || toks[i].kind != Token::Kind::Word) {
        return ScanError{toks[begin].line, "invalid name list in from-import"};
      }
      ++i;
      if (i < end && is_word(toks[i], "as")) {
        if (i + 1 >= end || toks[i + 1].kind != Token::Kind::Word) {
          return ScanError{toks[i].line, "invalid alias in from-import"};
        }
        i += 2;
      }
      if (i < end && is_op(toks[i], ',')) {
        ++i;
        if (paren && i < end && is_op(toks[i], ')')) break;
        continue;
      }
      break;
    }
    if (paren) {
      if (i >= end || !is_op(toks[i], ')')) {
        return ScanError{toks[begin].line, "unclosed name list in from-import"};
      }
      ++i;
    }
  }
  if (i != end) return ScanError{toks[i].line, "invalid syntax in from-import"};
  imports.push_back({toks[begin].line, module, dots > 0});
  return std::nullopt;
}

inline bool has_toplevel_colon(const std::vector<Token>& toks, std::size_t begin,
                               std::size_t end) {
  int depth = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const Token& t = toks[i];
    if (t.kind != Token::Kind::Op || t.str.size() != 1) continue;
    char c = t.str[0];
    if (c == '(' || c == '[' || c == '{') ++depth;
    else if (c == ')' || c == ']' || c == '}') --depth;
    else if (c == ':' && depth == 0) return true;
  }
  return false;
}

inline bool is_block_keyword(std::string_view w) {
  return w == "if" || w == "elif" || w == "else" || w == "for" || w == "while" || w == "try" ||
         w == "except" || w == "finally" || w == "with" || w == "def" || w == "class";
}

}  // namespace detail

/// Statement-level pass over logical lines: indentation discipline,
/// import/def/class shapes, block-header colons. Tolerant of everything
/// else; a valid Python module always passes, some invalid ones do too.
inline ScanSummary analyze_source(const std::vector<std::string>& lines) {
  ScanSummary summary;
  auto scanned = scan_logical_lines(lines);
  if (!scanned.ok()) {
    summary.syntax_ok = false;
    summary.syntax_message =
        "line " + std::to_string(scanned.error().line) + ": " + scanned.error().message;
    summary.imports_only = false;
    return summary;
  }
  const std::vector<LogicalLine>& logical = scanned.value();

  auto fail = [&](int line, std::string_view msg) {
    summary.syntax_ok = false;
    summary.syntax_message = "line " + std::to_string(line) + ": " + std::string(msg);
    summary.imports = {};
    summary.n_function_defs = 0;
    summary.n_class_defs = 0;
    summary.string_literals = {};
    summary.imports_only = false;
  };

  std::vector<int> indent_stack{0};
  bool expect_indent = false;
  int opener_line = 0;

  for (const LogicalLine& ll : logical) {
    if (expect_indent) {
      if (ll.indent <= indent_stack.back()) {
        fail(ll.line, "expected an indented block");
        return summary;
      }
      indent_stack.push_back(ll.indent);
      expect_indent = false;
    } else if (ll.indent > indent_stack.back()) {
      fail(ll.line, "unexpected indent");
      return summary;
    } else {
      while (indent_stack.back() > ll.indent) indent_stack.pop_back();
      if (indent_stack.back() != ll.indent) {
        fail(ll.line, "unindent does not match any outer indentation level");
        return summary;
      }
    }

    for (const Token& t : ll.tokens) {
      if (t.kind == Token::Kind::Str) summary.string_literals.push_back(t);
    }

    // Split the logical line into simple statements at top-level ';'.
    const auto& toks = ll.tokens;
    std::size_t stmt_begin = 0;
    int depth = 0;
    std::vector<detail::TokenSpan> statements;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (toks[i].kind == Token::Kind::Op && toks[i].str.size() == 1) {
        char c = toks[i].str[0];
        if (c == '(' || c == '[' || c == '{') ++depth;
        else if (c == ')' || c == ']' || c == '}') --depth;
        else if (c == ';' && depth == 0) {
          if (i > stmt_begin) statements.push_back({stmt_begin, i});
          stmt_begin = i + 1;
        }
      }
    }
    if (toks.size() > stmt_begin) statements.push_back({stmt_begin, toks.size()});

    for (auto [begin, end] : statements) {
      const Token& head = toks[begin];
      bool is_import_stmt = false;

      std::size_t kw = begin;
      bool is_async = detail::is_word(head, "async");
      if (is_async && kw + 1 < end) ++kw;
      const Token& lead = toks[kw];

      if (detail::is_word(lead, "import") && !is_async) {
        if (auto err = detail::parse_import_stmt(toks, begin, end, summary.imports)) {
          fail(err->line, err->message);
          return summary;
        }
        is_import_stmt = true;
      } else if (detail::is_word(lead, "from") && !is_async) {
        if (auto err = detail::parse_from_stmt(toks, begin, end, summary.imports)) {
          fail(err->line, err->message);
          return summary;
        }
        is_import_stmt = true;
      } else if (detail::is_word(lead, "def")) {
        if (kw + 1 >= end || toks[kw + 1].kind != Token::Kind::Word) {
          fail(lead.line, "expected function name after 'def'");
          return summary;
        }
        if (kw + 2 >= end || !detail::is_op(toks[kw + 2], '(')) {
          fail(lead.line, "expected '(' after function name");
          return summary;
        }
        if (!detail::has_toplevel_colon(toks, begin, end)) {
          fail(lead.line, "expected ':' in function definition");
          return summary;
        }
        if (ll.indent == 0) ++summary.n_function_defs;
      } else if (detail::is_word(lead, "class")) {
        if (kw + 1 >= end || toks[kw + 1].kind != Token::Kind::Word) {
          fail(lead.line, "expected class name after 'class'");
          return summary;
        }
        if (!detail::has_toplevel_colon(toks, begin, end)) {
          fail(lead.line, "expected ':' in class definition");
          return summary;
        }
        if (ll.indent == 0) ++summary.n_class_defs;
      } else if (lead.kind == Token::Kind::Word && detail::is_block_keyword(lead.str)) {
        if (!detail::has_toplevel_colon(toks, begin, end)) {
          fail(lead.line, std::string("expected ':' after '") + lead.str + "' statement");
          return summary;
        }
      }

      if (!is_import_stmt) summary.imports_only = false;
    }

    expect_indent = !toks.empty() && detail::is_op(toks.back(), ':');
    if (expect_indent) opener_line = ll.line;
  }

  if (expect_indent) {
    fail(opener_line, "expected an indented block at end of source");
    return summary;
  }
  return summary;
}

}  // namespace nblint::pyscan
