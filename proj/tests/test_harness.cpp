#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sympspec/error.hpp"
#include "sympspec/harness/matrix_io.hpp"
#include "sympspec/harness/suites.hpp"
#include "support.hpp"

using namespace sympspec;
using namespace sympspec::harness;
using testing::max_diff;

TEST_CASE("matrix JSON") {
  const auto m = parse_matrix_json(R"({"dim": 2, "entries": [[1, 2], [2, 5]]})");
  CHECK(max_diff(m, linalg::Matrix{{1, 2}, {2, 5}}) == 0.0);
  CHECK(parse_matrix_json(R"({"rows": 1, "cols": 3, "entries": [[1, 2, 3]]})").cols() == 3);
  CHECK_THROWS_AS(parse_matrix_json("{"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 2})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"entries": [[1, "x"], [0, 1]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"entries": [[1, 2], [3]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 3, "entries": [[1, 0], [0, 1]]})"), ParseError);

  // round trip keeps every bit
  const auto a = testing::fixed_a6() * (1.0 / 3.0);
  CHECK(parse_matrix_json(matrix_to_json(a).dump()) == a);
}

TEST_CASE("matrix CSV and file dispatch") {
  CHECK(max_diff(parse_matrix_csv("1, 0\n0, 2\n\n"), testing::diag({1, 2})) == 0.0);
  CHECK_THROWS_AS(parse_matrix_csv("1,2\n3\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_csv("1,abc\n3,4\n"), ParseError);

  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = (dir / "sympspec_io_test.csv").string();
  const auto js = (dir / "sympspec_io_test.dat").string();
  write_text(csv, "2,1\n1,2\n");
  write_text(js, R"({"entries": [[3, 0], [0, 3]]})");
  CHECK(read_matrix(csv)(0, 1) == 1.0);
  CHECK(read_matrix(js)(1, 1) == 3.0);
  std::remove(csv.c_str());
  std::remove(js.c_str());
  CHECK_THROWS_AS(read_matrix((dir / "sympspec_missing_file.json").string()), ParseError);
}

TEST_CASE("suite config validation") {
  SuiteConfig c;
  CHECK_NOTHROW(c.validate());
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.n_min = 4;
  c.n_max = 3;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.n_min = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.suite = "nope";
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.tol = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  CHECK_THROWS_AS(run_trial(SuiteConfig{}, "nope", 0), ValidationError);
  CHECK(suite_names().size() == 9);
}

TEST_CASE("checks") {
  CHECK(ge_check("x", 1.0, 1.0 + 1e-10, 1e-9).passed);
  CHECK_FALSE(ge_check("x", 1.0, 1.1, 1e-9).passed);
  CHECK(le_check("x", 2.0, 1.0, 1e-9, 1e9).passed);
  CHECK(count_check("c", 0).passed);
  CHECK_FALSE(count_check("c", 2).passed);
  CHECK(count_check("c", 2).is_count);
}

TEST_CASE("reports do not depend on the thread count") {
  SuiteConfig c;
  c.trials = 6;
  c.n_min = 1;
  c.n_max = 3;
  c.seed = 123;
  c.samples = 30;
  c.chains = 10;
  for (const auto& s : suite_names()) {
    CAPTURE(s);
    c.suite = s;
    c.jobs = 1;
    const auto serial = strip_timing(run_report(c).to_json());
    c.jobs = 4;
    const auto parallel = strip_timing(run_report(c).to_json());
    CHECK(serial.dump() == parallel.dump());
    CHECK_FALSE(serial.contains("timing"));
  }
}

TEST_CASE("replaying a trial gives the record from the suite run") {
  SuiteConfig c;
  c.suite = "lidskii-mult";
  c.trials = 8;
  c.n_min = 2;
  c.n_max = 4;
  c.seed = 9;
  const auto run = run_suite(c, c.suite);
  REQUIRE(run.trials.size() == 8);
  for (std::uint64_t t = 0; t < 8; ++t) {
    CHECK(trial_to_json(run_trial(c, c.suite, t), true).dump() ==
          trial_to_json(run.trials[t], true).dump());
  }
}

TEST_CASE("report layout") {
  SuiteConfig c;
  c.suite = "williamson";
  c.trials = 3;
  c.seed = 1;
  const auto j = run_report(c).to_json();
  CHECK(j["version"] == kArtifactVersion);
  CHECK(j["records"].size() == 3);
  CHECK(j["aggregate"]["passed"] == true);
  CHECK(j["aggregate"]["suites"]["williamson"]["trials"] == 3);
  CHECK(j["failures"].empty());
  CHECK(j.contains("timing"));
  CHECK_FALSE(j["config"].contains("jobs"));
}
