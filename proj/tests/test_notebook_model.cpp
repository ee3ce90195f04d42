#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "nblint/metrics.hpp"
#include "nblint/notebook.hpp"
#include "support/fixtures.hpp"

using nblint::CellKind;
using nblint::ParseErrorKind;
using testutil::NotebookJson;

TEST_CASE("minimal schema-valid document parses") {
  auto result = nblint::parse_notebook(
      R"({"nbformat":4,"nbformat_minor":5,"metadata":{},"cells":[]})", "min.ipynb");
  REQUIRE(result.ok());
  const nblint::Notebook& nb = result.value();
  CHECK(nb.format_major == 4);
  CHECK(nb.format_minor == 5);
  CHECK(nb.cells.empty());
  CHECK_FALSE(nb.language.has_value());
}

TEST_CASE("three-cell document maps to the expected model") {
  NotebookJson doc;
  doc.md("# Title")
      .code("import os", 2)
      .code("", std::nullopt);
  auto result = nblint::parse_notebook(doc.str(), "three.ipynb");
  REQUIRE(result.ok());
  const auto& cells = result.value().cells;
  REQUIRE(cells.size() == 3);

  CHECK(cells[0].kind == CellKind::Markdown);
  CHECK(cells[0].index == 0);
  REQUIRE(cells[0].source_lines.size() == 1);
  CHECK(cells[0].source_lines[0] == "# Title");
  CHECK_FALSE(cells[0].execution_count.has_value());
  CHECK(cells[0].output_count == 0);

  CHECK(cells[1].kind == CellKind::Code);
  REQUIRE(cells[1].execution_count.has_value());
  CHECK(*cells[1].execution_count == 2);
  CHECK_FALSE(cells[1].is_empty);

  CHECK(cells[2].kind == CellKind::Code);
  CHECK_FALSE(cells[2].execution_count.has_value());
  CHECK(cells[2].is_empty);
}

TEST_CASE("declared parse errors") {
  SECTION("nbformat 3 is unsupported") {
    auto result = nblint::parse_notebook(R"({"nbformat":3,"cells":[]})", "old.ipynb");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == ParseErrorKind::UnsupportedFormat);
  }
  SECTION("invalid JSON") {
    auto result = nblint::parse_notebook("{not json", "bad.ipynb");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == ParseErrorKind::MalformedJson);
  }
  SECTION("missing cells key") {
    auto result = nblint::parse_notebook(R"({"nbformat":4})", "x.ipynb");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == ParseErrorKind::NotANotebook);
  }
  SECTION("missing nbformat key") {
    auto result = nblint::parse_notebook(R"({"cells":[]})", "x.ipynb");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == ParseErrorKind::NotANotebook);
  }
  SECTION("top-level value is not an object") {
    auto result = nblint::parse_notebook("[1,2,3]", "x.ipynb");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == ParseErrorKind::NotANotebook);
  }
  SECTION("cell without cell_type") {
    auto result =
        nblint::parse_notebook(R"({"nbformat":4,"cells":[{"source":"x"}]})", "x.ipynb");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == ParseErrorKind::InvalidCell);
  }
  SECTION("cell with unknown cell_type") {
    auto result = nblint::parse_notebook(
        R"({"nbformat":4,"cells":[{"cell_type":"magic","source":""}]})", "x.ipynb");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == ParseErrorKind::InvalidCell);
  }
  SECTION("nonpositive execution_count") {
    auto result = nblint::parse_notebook(
        R"({"nbformat":4,"cells":[{"cell_type":"code","source":"x","execution_count":0}]})",
        "x.ipynb");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error().kind == ParseErrorKind::InvalidCell);
  }
}

TEST_CASE("source accepted as string or list of strings, identically") {
  std::string joined = "a = 1\nb = 2\n";
  nlohmann::json as_list = nlohmann::json::array({"a = 1\n", "b = 2\n"});

  nlohmann::json doc;
  doc["nbformat"] = 4;
  doc["cells"] = nlohmann::json::array();
  doc["cells"].push_back({{"cell_type", "code"}, {"source", joined}});
  doc["cells"].push_back({{"cell_type", "code"}, {"source", as_list}});
  auto result = nblint::parse_notebook(doc.dump(), "x.ipynb");
  REQUIRE(result.ok());
  const auto& cells = result.value().cells;
  CHECK(cells[0].source_lines == cells[1].source_lines);
  REQUIRE(cells[0].source_lines.size() == 2);
  CHECK(cells[0].source_lines[1] == "b = 2");
}

TEST_CASE("source normalization idempotence on random inputs") {
  std::mt19937 rng(20240901);
  std::uniform_int_distribution<int> n_lines(0, 6);
  std::uniform_int_distribution<int> n_chars(0, 8);
  std::uniform_int_distribution<int> ch(32, 126);

  for (int round = 0; round < 200; ++round) {
    std::vector<std::string> lines;
    int n = n_lines(rng);
    for (int i = 0; i < n; ++i) {
      std::string line;
      int len = n_chars(rng);
      for (int j = 0; j < len; ++j) {
        char c = static_cast<char>(ch(rng));
        if (c == '\n' || c == '"' || c == '\\') c = ' ';
        line += c;
      }
      lines.push_back(line);
    }
    std::string joined;
    nlohmann::json as_list = nlohmann::json::array();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::string piece = lines[i];
      if (i + 1 < lines.size()) piece += '\n';
      joined += piece;
      as_list.push_back(piece);
    }

    nlohmann::json doc;
    doc["nbformat"] = 4;
    doc["cells"] = nlohmann::json::array();
    doc["cells"].push_back({{"cell_type", "code"}, {"source", joined}});
    doc["cells"].push_back({{"cell_type", "code"}, {"source", as_list}});
    auto result = nblint::parse_notebook(doc.dump(), "x.ipynb");
    REQUIRE(result.ok());
    CHECK(result.value().cells[0].source_lines == result.value().cells[1].source_lines);
  }
}

TEST_CASE("cell-kind counts partition the notebook") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> n_cells(0, 12);
  std::uniform_int_distribution<int> kind(0, 2);

  for (int round = 0; round < 100; ++round) {
    NotebookJson doc;
    int n = n_cells(rng);
    for (int i = 0; i < n; ++i) {
      switch (kind(rng)) {
        case 0: doc.code("x = " + std::to_string(i), i + 1); break;
        case 1: doc.md("note " + std::to_string(i)); break;
        default: doc.raw("raw"); break;
      }
    }
    nblint::Notebook nb = testutil::parse(doc);
    auto m = nblint::compute_metrics(nb);
    CHECK(m.n_code + m.n_markdown + m.n_raw == m.n_cells);
    CHECK(m.n_cells == n);
  }
}

TEST_CASE("is_empty matches its recomputation from source lines") {
  NotebookJson doc;
  doc.code("", 1).code("   \n\t\n", 2).code("x = 1\n\n", 3).md("  ");
  nblint::Notebook nb = testutil::parse(doc);
  for (const auto& cell : nb.cells) {
    CHECK(cell.is_empty == nblint::compute_is_empty(cell.source_lines));
  }
  CHECK(nb.cells[0].is_empty);
  CHECK(nb.cells[1].is_empty);
  CHECK_FALSE(nb.cells[2].is_empty);
  CHECK(nb.cells[3].is_empty);
}

TEST_CASE("metrics on the degenerate and documented examples") {
  SECTION("zero cells") {
    nblint::Notebook nb = testutil::parse(NotebookJson{});
    auto m = nblint::compute_metrics(nb);
    CHECK(m.n_cells == 0);
    CHECK(m.markdown_ratio == 0.0);
    CHECK(m.total_code_lines == 0);
    CHECK(m.max_code_cell_lines == 0);
  }
  SECTION("two markdown, two code") {
    NotebookJson doc;
    doc.md("a").md("b").code("x = 1", 1).code("y = 2", 2);
    auto m = nblint::compute_metrics(testutil::parse(doc));
    CHECK(m.markdown_ratio == 0.5);
    CHECK(m.n_executed == 2);
  }
  SECTION("code line totals") {
    NotebookJson doc;
    doc.code("a = 1\nb = 2\n\nc = 3", 1)                       // 3 non-blank lines
        .code("l1 = 0\nl2 = 0\nl3 = 0\nl4 = 0\nl5 = 0\nl6 = 0\nl7 = 0", 2);  // 7
    auto m = nblint::compute_metrics(testutil::parse(doc));
    CHECK(m.total_code_lines == 10);
    CHECK(m.max_code_cell_lines == 7);
  }
}

TEST_CASE("parser is total over mutated inputs") {
  std::string seed = NotebookJson{}
                         .md("# T")
                         .code("import os\nprint(os.name)", 1, 1)
                         .code("x = 1", 2)
                         .str();
  std::mt19937 rng(987654321);
  std::uniform_int_distribution<std::size_t> pos(0, seed.size() - 1);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> op(0, 2);

  for (int round = 0; round < 300; ++round) {
    std::string mutated = seed;
    switch (op(rng)) {
      case 0: mutated[pos(rng)] = static_cast<char>(byte(rng)); break;
      case 1: mutated = mutated.substr(0, pos(rng)); break;
      default: mutated.insert(pos(rng), 1, static_cast<char>(byte(rng))); break;
    }
    auto result = nblint::parse_notebook(mutated, "fuzz.ipynb");
    if (!result.ok()) {
      CHECK_FALSE(result.error().message.empty());
    }
  }
}

TEST_CASE("language detection from kernelspec and language_info") {
  auto with_kernelspec = nblint::parse_notebook(
      R"({"nbformat":4,"cells":[],"metadata":{"kernelspec":{"name":"python3","language":"python"}}})",
      "x.ipynb");
  REQUIRE(with_kernelspec.ok());
  CHECK(with_kernelspec.value().language == "python");
  CHECK(with_kernelspec.value().kernel_name == "python3");
  CHECK(nblint::is_python_notebook(with_kernelspec.value()));

  auto with_language_info = nblint::parse_notebook(
      R"({"nbformat":4,"cells":[],"metadata":{"language_info":{"name":"R"}}})", "x.ipynb");
  REQUIRE(with_language_info.ok());
  CHECK(with_language_info.value().language == "R");
  CHECK_FALSE(nblint::is_python_notebook(with_language_info.value()));
}
