#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "nblint/code_analysis.hpp"
#include "nblint/text.hpp"

using nblint::analyze_cell;
using nblint::CellFacts;
using nblint::classify_import;
using nblint::ImportKind;
using nblint::strip_magics;

namespace {

std::vector<std::string> lines_of(const std::string& source) {
  return nblint::text::split_lines(source);
}

std::set<std::string> modules_of(const CellFacts& facts) {
  std::set<std::string> modules;
  for (const auto& imp : facts.imports) modules.insert(imp.module);
  return modules;
}

/// Independent brute-force import scanner used as the oracle: one
/// physical line at a time, no continuation or parenthesis handling.
/// The real analyzer must agree on fixtures that stay within its reach.
std::set<std::string> naive_import_scan(const std::vector<std::string>& lines) {
  std::set<std::string> modules;
  auto first_component = [](std::string_view token) {
    std::string name;
    for (char c : token) {
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_') {
        name += c;
      } else {
        break;
      }
    }
    return name;
  };
  for (const auto& raw : lines) {
    std::string_view line = nblint::text::strip(raw);
    if (line.rfind("import ", 0) == 0) {
      std::string_view rest = line.substr(7);
      for (const auto& part : nblint::text::split(std::string(rest), ',')) {
        auto name = first_component(nblint::text::strip(part));
        if (!name.empty()) modules.insert(name);
      }
    } else if (line.rfind("from ", 0) == 0) {
      auto name = first_component(nblint::text::strip(line.substr(5)));
      if (!name.empty()) modules.insert(name);
    }
  }
  return modules;
}

}  // namespace

TEST_CASE("strip_magics leaves plain code alone") {
  auto result = strip_magics({"import os"});
  CHECK(result.cleaned == std::vector<std::string>{"import os"});
  CHECK(result.magic_lines.empty());
  CHECK_FALSE(result.is_cell_magic);
}

TEST_CASE("a leading %% marks the whole cell as cell magic") {
  auto result = strip_magics({"%%bash", "ls"});
  CHECK(result.cleaned.empty());
  CHECK(result.magic_lines == std::vector<int>{1});
  CHECK(result.is_cell_magic);
}

TEST_CASE("line magics and shell escapes are blanked in place") {
  auto result = strip_magics({"%matplotlib inline", "x=1", "!pip install pandas"});
  CHECK(result.cleaned == std::vector<std::string>{"", "x=1", ""});
  CHECK(result.magic_lines == std::vector<int>{1, 3});
  CHECK_FALSE(result.is_cell_magic);
}

TEST_CASE("help operator lines are blanked") {
  auto result = strip_magics({"os.path?", "?print", "x = 1", "# ends with ?"});
  CHECK(result.cleaned == std::vector<std::string>{"", "", "x = 1", "# ends with ?"});
  CHECK(result.magic_lines == std::vector<int>{1, 2});
}

TEST_CASE("strip_magics preserves line count unless cell magic") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> n_lines(0, 10);
  std::uniform_int_distribution<int> flavor(0, 4);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::string> lines;
    int n = n_lines(rng);
    for (int i = 0; i < n; ++i) {
      switch (flavor(rng)) {
        case 0: lines.push_back("%magic " + std::to_string(i)); break;
        case 1: lines.push_back("!cmd"); break;
        case 2: lines.push_back("x = " + std::to_string(i)); break;
        case 3: lines.push_back(""); break;
        default: lines.push_back("  y = x"); break;
      }
    }
    auto result = strip_magics(lines);
    if (result.is_cell_magic) {
      CHECK(result.cleaned.empty());
    } else {
      CHECK(result.cleaned.size() == lines.size());
    }
  }
}

TEST_CASE("a single import is recognized as import-only") {
  CellFacts facts = analyze_cell({"import os"});
  CHECK(facts.syntax_ok);
  REQUIRE(facts.imports.size() == 1);
  CHECK(facts.imports[0].line == 1);
  CHECK(facts.imports[0].module == "os");
  CHECK_FALSE(facts.imports[0].is_relative);
  CHECK(facts.import_only);
}

TEST_CASE("mixed imports and definitions") {
  CellFacts facts = analyze_cell(lines_of(
      "from sklearn.model_selection import train_test_split\nimport numpy as np\ndef f():\n    pass"));
  CHECK(facts.syntax_ok);
  CHECK(modules_of(facts) == std::set<std::string>{"sklearn", "numpy"});
  CHECK(facts.n_function_defs == 1);
  CHECK_FALSE(facts.import_only);
}

TEST_CASE("malformed definition fails the syntax check") {
  CellFacts facts = analyze_cell({"def f(:"});
  CHECK_FALSE(facts.syntax_ok);
  CHECK(facts.syntax_message.has_value());
}

TEST_CASE("path literals are collected with their lines") {
  CellFacts facts = analyze_cell({"p = \"/home/alice/data.csv\""});
  REQUIRE(facts.path_literals.size() == 1);
  CHECK(facts.path_literals[0].line == 1);
  CHECK(facts.path_literals[0].literal == "/home/alice/data.csv");

  SECTION("all documented prefixes match") {
    for (const char* path : {"/home/u/x", "/Users/u/x", "/tmp/x", "/data/x", "C:\\\\data\\\\x",
                             "D:/work/x"}) {
      CellFacts f = analyze_cell({std::string("p = '") + path + "'"});
      REQUIRE_FALSE(f.path_literals.empty());
    }
  }
  SECTION("relative and other absolute paths do not match") {
    for (const char* path : {"data/x.csv", "./x", "/var/log/x", "home/x"}) {
      CellFacts f = analyze_cell({std::string("p = '") + path + "'"});
      CHECK(f.path_literals.empty());
    }
  }
}

TEST_CASE("import classification") {
  const auto& aliases = nblint::default_import_aliases();
  auto classify = [&](const std::string& module, bool relative = false) {
    return classify_import({1, module, relative}, aliases);
  };
  CHECK(classify("os").kind == ImportKind::Stdlib);
  CHECK(classify("json").kind == ImportKind::Stdlib);
  CHECK(classify("__future__").kind == ImportKind::Stdlib);

  auto sklearn = classify("sklearn");
  CHECK(sklearn.kind == ImportKind::ThirdParty);
  CHECK(sklearn.package == "scikit-learn");

  auto numpy = classify("numpy");
  CHECK(numpy.kind == ImportKind::ThirdParty);
  CHECK(numpy.package == "numpy");

  CHECK(classify("anything", true).kind == ImportKind::Relative);
}

TEST_CASE("relative imports carry the flag and trimmed module") {
  CellFacts dot = analyze_cell({"from . import helpers"});
  REQUIRE(dot.imports.size() == 1);
  CHECK(dot.imports[0].is_relative);
  CHECK(dot.imports[0].module.empty());

  CellFacts pkg = analyze_cell({"from .models import Net"});
  REQUIRE(pkg.imports.size() == 1);
  CHECK(pkg.imports[0].is_relative);
  CHECK(pkg.imports[0].module == "models");
}

TEST_CASE("multi-line parenthesized imports resolve to one fact") {
  CellFacts facts = analyze_cell(lines_of(
      "from pandas.api.types import (\n    is_numeric_dtype,\n    is_string_dtype,\n)"));
  CHECK(facts.syntax_ok);
  REQUIRE(facts.imports.size() == 1);
  CHECK(facts.imports[0].module == "pandas");
  CHECK(facts.imports[0].line == 1);
  CHECK(facts.import_only);
}

TEST_CASE("backslash continuation joins import statements") {
  CellFacts facts = analyze_cell(lines_of("import os, \\\n    sys"));
  CHECK(facts.syntax_ok);
  CHECK(modules_of(facts) == std::set<std::string>{"os", "sys"});
}

TEST_CASE("analyzer agrees with the naive scanner on the fixture corpus") {
  const std::vector<std::string> fixtures = {
      "import os",
      "import os\nimport sys",
      "import numpy as np",
      "import a.b.c as abc",
      "from collections import OrderedDict",
      "from sklearn.model_selection import train_test_split\nx = 1",
      "import json, csv\n\n# comment\nfrom math import pi",
      "x = 1\ny = 2",
      "",
      "import pandas as pd\ndf = pd.DataFrame()\nimport re",
  };
  for (const auto& fixture : fixtures) {
    CAPTURE(fixture);
    auto lines = lines_of(fixture);
    CellFacts facts = analyze_cell(lines);
    REQUIRE(facts.syntax_ok);
    CHECK(modules_of(facts) == naive_import_scan(lines));
  }
}

TEST_CASE("lexical errors are caught") {
  SECTION("unterminated string") {
    CHECK_FALSE(analyze_cell({"s = 'abc"}).syntax_ok);
  }
  SECTION("unterminated triple string") {
    CHECK_FALSE(analyze_cell(lines_of("s = '''abc\ndef")).syntax_ok);
  }
  SECTION("unbalanced brackets") {
    CHECK_FALSE(analyze_cell({"x = (1 + 2"}).syntax_ok);
    CHECK_FALSE(analyze_cell({"x = 1)"}).syntax_ok);
    CHECK_FALSE(analyze_cell({"x = [1}"}).syntax_ok);
  }
  SECTION("unexpected indent") {
    CHECK_FALSE(analyze_cell(lines_of("x = 1\n    y = 2")).syntax_ok);
    CHECK_FALSE(analyze_cell({"    x = 1"}).syntax_ok);
  }
  SECTION("missing indented block") {
    CHECK_FALSE(analyze_cell(lines_of("def f():\nx = 1")).syntax_ok);
    CHECK_FALSE(analyze_cell(lines_of("if x:")).syntax_ok);
  }
  SECTION("bad dedent") {
    CHECK_FALSE(analyze_cell(lines_of("if x:\n        y = 1\n    z = 2")).syntax_ok);
  }
  SECTION("missing colon on block statement") {
    CHECK_FALSE(analyze_cell(lines_of("for i in range(3)\n    print(i)")).syntax_ok);
  }
}

TEST_CASE("legitimate python constructs pass the surface scan") {
  const std::vector<std::string> valid = {
      "x = {'a': 1, 'b': 2}",
      "y = a[1:2]",
      "z: int = (1 +\n     2)",
      "if x:\n    y = 1\nelse:\n    y = 2",
      "def f(a, b=2, *args, **kw):\n    return a\n\nclass C:\n    pass",
      "s = '''multi\nline (with brackets ] inside)\n'''",
      "f = lambda v: v + 1",
      "async def g():\n    await h()",
      "x = 1; y = 2",
      "@decorator\ndef wrapped():\n    pass",
      "try:\n    pass\nexcept ValueError as e:\n    raise",
      "s = f\"value {x!r}\"",
      "r = rb'raw\\bytes'",
      "match = 5",
      "print('quote \" inside')",
  };
  for (const auto& source : valid) {
    CAPTURE(source);
    CHECK(analyze_cell(lines_of(source)).syntax_ok);
  }
}

TEST_CASE("nested definitions are not counted as top level") {
  CellFacts facts = analyze_cell(lines_of(
      "def outer():\n    def inner():\n        pass\n    class Local:\n        pass\n    return inner"));
  CHECK(facts.syntax_ok);
  CHECK(facts.n_function_defs == 1);
  CHECK(facts.n_class_defs == 0);
}

TEST_CASE("cell magic cells yield no python facts") {
  CellFacts facts = analyze_cell(lines_of("%%bash\nimport os  # not python\nexit 1"));
  CHECK(facts.is_cell_magic);
  CHECK(facts.syntax_ok);
  CHECK(facts.imports.empty());
  CHECK_FALSE(facts.import_only);
}

TEST_CASE("magics-only cells are vacuously import-only") {
  CellFacts facts = analyze_cell({"%matplotlib inline"});
  CHECK(facts.syntax_ok);
  CHECK(facts.import_only);
  CHECK(facts.magic_lines == std::vector<int>{1});
}

TEST_CASE("imports inside strings or comments are not facts") {
  CellFacts facts = analyze_cell(lines_of("s = 'import os'\n# import sys\nx = 1"));
  CHECK(facts.syntax_ok);
  CHECK(facts.imports.empty());
}
