#pragma once

// Shared test fixtures: in-memory nbformat documents, scratch
// directories, and a child-process runner for CLI-contract tests.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nblint/notebook.hpp"

namespace testutil {

namespace fs = std::filesystem;

/// Builds nbformat-4 documents cell by cell.
class NotebookJson {
 public:
  NotebookJson& md(const std::string& source) {
    nlohmann::json cell;
    cell["cell_type"] = "markdown";
    cell["metadata"] = nlohmann::json::object();
    cell["source"] = source;
    cells_.push_back(std::move(cell));
    return *this;
  }

  NotebookJson& code(const std::string& source, std::optional<int> execution_count,
                     int outputs = 0) {
    nlohmann::json cell;
    cell["cell_type"] = "code";
    cell["metadata"] = nlohmann::json::object();
    cell["source"] = source;
    cell["execution_count"] =
        execution_count ? nlohmann::json(*execution_count) : nlohmann::json(nullptr);
    nlohmann::json outs = nlohmann::json::array();
    for (int i = 0; i < outputs; ++i) {
      outs.push_back({{"output_type", "stream"}, {"name", "stdout"}, {"text", "out\n"}});
    }
    cell["outputs"] = std::move(outs);
    cells_.push_back(std::move(cell));
    return *this;
  }

  NotebookJson& raw(const std::string& source) {
    nlohmann::json cell;
    cell["cell_type"] = "raw";
    cell["metadata"] = nlohmann::json::object();
    cell["source"] = source;
    cells_.push_back(std::move(cell));
    return *this;
  }

  NotebookJson& language(const std::string& lang) {
    language_ = lang;
    return *this;
  }

  nlohmann::json json() const {
    nlohmann::json doc;
    doc["nbformat"] = 4;
    doc["nbformat_minor"] = 5;
    nlohmann::json meta = nlohmann::json::object();
    if (language_) {
      meta["kernelspec"] = {{"name", "kernel"}, {"language", *language_}};
    }
    doc["metadata"] = std::move(meta);
    doc["cells"] = cells_;
    return doc;
  }

  std::string str() const { return json().dump(); }

 private:
  nlohmann::json cells_ = nlohmann::json::array();
  std::optional<std::string> language_;
};

/// Parses a built document through the real parser; aborts on failure.
inline nblint::Notebook parse(const NotebookJson& doc, std::string path = "nb.ipynb") {
  auto result = nblint::parse_notebook(doc.str(), std::move(path));
  if (!result.ok()) {
    std::fprintf(stderr, "fixture notebook failed to parse: %s\n",
                 result.error().message.c_str());
    std::abort();
  }
  return std::move(result).value();
}

/// Scratch directory removed on destruction.
struct TempDir {
  fs::path path;

  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "nblint-test-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) {
      std::perror("mkdtemp");
      std::abort();
    }
    path = buf.data();
  }

  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

inline void write_file(const fs::path& p, std::string_view content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& s) {
  std::string quoted = "'";
  for (char c : s) {
    if (c == '\'') {
      quoted += "'\\''";
    } else {
      quoted += c;
    }
  }
  quoted += '\'';
  return quoted;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs the CLI binary with the given arguments, capturing both streams.
inline CliResult run_cli(const std::string& exe, const std::vector<std::string>& args,
                         const fs::path& scratch) {
  fs::path out_path = scratch / "cli.out";
  fs::path err_path = scratch / "cli.err";
  std::string cmd = shell_quote(exe);
  for (const auto& arg : args) cmd += ' ' + shell_quote(arg);
  cmd += " > " + shell_quote(out_path.string()) + " 2> " + shell_quote(err_path.string());
  int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

}  // namespace testutil
