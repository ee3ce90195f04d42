#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "nblint/engine.hpp"
#include "nblint/render.hpp"
#include "support/fixtures.hpp"

using namespace nblint;
using testutil::NotebookJson;

TEST_CASE("empty report serializes to the pinned JSON shape") {
  Report report;
  std::string json = render_json(report);
  CHECK(json ==
        "{\"version\":\"0.1.0\",\"summary\":{\"error\":0,\"warning\":0,\"info\":0},"
        "\"findings\":[]}\n");
}

TEST_CASE("one E01 finding renders with its locations") {
  NotebookJson doc;
  doc.md("# T").code("a = 1", 2).code("b = 2", 1);
  Notebook nb = testutil::parse(doc, "run.ipynb");
  LintConfig config;
  Report report = lint_notebook(nb, config);
  REQUIRE(report.findings.size() == 1);

  std::string json = render_json(report);
  auto parsed = nlohmann::json::parse(json);
  REQUIRE(parsed["findings"].size() == 1);
  const auto& finding = parsed["findings"][0];
  CHECK(finding["rule_id"] == "NBL-E01");
  CHECK(finding["severity"] == "error");
  CHECK(finding["path"] == "run.ipynb");
  CHECK(finding["cell_index"] == 2);
  CHECK(finding["line"].is_null());
  CHECK(parsed["summary"]["error"] == 1);

  SECTION("key order is pinned for CI diffing") {
    CHECK(json.rfind("{\"version\":", 0) == 0);
    CHECK(json.find("\"summary\":{\"error\":1,\"warning\":0,\"info\":0}") != std::string::npos);
    auto rule_pos = json.find("\"rule_id\"");
    auto severity_pos = json.find("\"severity\"");
    auto path_pos = json.find("\"path\"");
    auto message_pos = json.find("\"message\"");
    auto suggestion_pos = json.find("\"suggestion\"");
    CHECK(rule_pos < severity_pos);
    CHECK(severity_pos < path_pos);
    CHECK(path_pos < message_pos);
    CHECK(message_pos < suggestion_pos);
  }
  SECTION("rendering twice is byte-identical") {
    CHECK(render_json(report) == json);
  }
  SECTION("output ends with exactly one newline") {
    REQUIRE_FALSE(json.empty());
    CHECK(json.back() == '\n');
    CHECK(json[json.size() - 2] != '\n');
  }
}

TEST_CASE("text rendering") {
  SECTION("empty report is footer-only") {
    Report report;
    CHECK(render_text(report) == "0 errors, 0 warnings, 0 infos\n");
  }
  SECTION("finding line, hint line, footer") {
    NotebookJson doc;
    doc.md("# T").code("a = 1", 2).code("b = 2", 1);
    Report report = lint_notebook(testutil::parse(doc, "run.ipynb"), LintConfig{});
    std::string text = render_text(report);
    CHECK(text.find("run.ipynb:2: ERROR NBL-E01") != std::string::npos);
    CHECK(text.find("\n  hint: ") != std::string::npos);
    CHECK(text.find("1 errors, 0 warnings, 0 infos\n") != std::string::npos);
  }
  SECTION("repository-scope findings have no location prefix") {
    Finding v01;
    v01.rule_id = "NBL-V01";
    v01.severity = Severity::Warning;
    v01.message = "no version control";
    v01.suggestion = "init";
    Report report;
    report.findings.push_back(v01);
    report.n_warning = 1;
    std::string text = render_text(report);
    CHECK(text.rfind("WARNING NBL-V01 no version control\n", 0) == 0);
  }
  SECTION("line numbers appear when present") {
    Finding f;
    f.rule_id = "NBL-R03";
    f.severity = Severity::Warning;
    f.notebook_path = "nb.ipynb";
    f.cell_index = 3;
    f.line = 7;
    f.message = "path";
    f.suggestion = "fix";
    Report report;
    report.findings.push_back(f);
    report.n_warning = 1;
    CHECK(render_text(report).rfind("nb.ipynb:3:7: WARNING NBL-R03 path\n", 0) == 0);
  }
}

TEST_CASE("json escaping of messages and paths") {
  Finding f;
  f.rule_id = "NBL-D03";
  f.severity = Severity::Warning;
  f.notebook_path = "weird \"name\".ipynb";
  f.message = "contains \"quotes\" and \\ backslash";
  f.suggestion = "rename";
  Report report;
  report.findings.push_back(f);
  report.n_warning = 1;
  std::string json = render_json(report);
  auto parsed = nlohmann::json::parse(json);  // must round-trip
  CHECK(parsed["findings"][0]["path"] == "weird \"name\".ipynb");
  CHECK(parsed["findings"][0]["message"] == "contains \"quotes\" and \\ backslash");
}
