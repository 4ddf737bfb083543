#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dikin/cli.hpp"
#include "dikin/csv.hpp"
#include "dikin/svg.hpp"

using dikin::cli::run;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"no-such-command"}) == 2);
  CHECK(run({"dikin-sweep"}) == 2);  // missing required flags
  CHECK(run({}) == 2);
  CHECK(run({"analytic", "--report", "bogus"}) == 2);
}

TEST_CASE("dikin-sweep writes one row per grid point and is byte stable") {
  const std::vector<std::string> args{
      "dikin-sweep", "--dim", "3", "--theta-min", "0.6", "--theta-max", "1.0",
      "--steps", "800", "--projection", "sorted-middle", "--seed", "7",
      "--burn-in", "300", "--burn-in-max", "600", "--keep", "64",
      "--period-max", "8", "--emit", "4", "--out", "cli_sweep.csv"};
  CHECK(run(args) == 0);
  const std::string first = slurp("cli_sweep.csv");
  CHECK(count_lines(first) == 801);  // header + 800 theta rows
  CHECK(run(args) == 0);
  CHECK(slurp("cli_sweep.csv") == first);
  std::remove("cli_sweep.csv");
}

TEST_CASE("afs-solve emits the trace and converges at theta 0.5") {
  CHECK(run({"afs-solve", "--lp", "castillo-barnes", "--theta", "0.5",
             "--out", "cli_trace.csv"}) == 0);
  const auto table = dikin::csv::read_file("cli_trace.csv");
  CHECK(table.has_column("gap"));
  CHECK(table.has_column("wscaled_5"));
  CHECK(table.has_column("y_2"));
  const auto gaps = table.numeric_column(table.column_index("gap"));
  CHECK(gaps.back() <= 1e-10);
  std::remove("cli_trace.csv");
}

TEST_CASE("afs-solve exits 1 on numeric failure but leaves a partial trace") {
  CHECK(run({"afs-solve", "--lp", "castillo-barnes", "--theta", "0.5",
             "--max-iters", "3", "--out", "cli_partial.csv"}) == 1);
  const auto table = dikin::csv::read_file("cli_partial.csv");
  CHECK(table.rows.size() == 4);  // start plus three steps
  std::remove("cli_partial.csv");
}

TEST_CASE("dikin-orbit reports the classification and writes the tail") {
  CHECK(run({"dikin-orbit", "--dim", "2", "--theta", "0.7", "--seed", "3",
             "--burn-in", "20000", "--keep", "128", "--out",
             "cli_orbit.csv"}) == 0);
  const auto table = dikin::csv::read_file("cli_orbit.csv");
  CHECK(table.header == std::vector<std::string>{"iter", "w_1", "w_2"});
  CHECK(table.rows.size() == 128);
  std::remove("cli_orbit.csv");
}

TEST_CASE("attractor then render round-trips through the CSV") {
  CHECK(run({"attractor", "--lp", "castillo-barnes", "--theta", "0.94",
             "--seed", "11", "--restarts", "8", "--out", "cli_y.csv", "--svg",
             "cli_y.svg"}) == 0);
  const auto table = dikin::csv::read_file("cli_y.csv");
  CHECK(table.has_column("y_1"));
  CHECK(table.rows.size() >= 50);
  for (const auto& g : table.numeric_column(table.column_index("gap")))
    CHECK(g <= 1e-3);
  CHECK(run({"render", "--in", "cli_y.csv", "--x", "y_1", "--y", "y_2",
             "--out", "cli_y2.svg"}) == 0);
  const std::string svg1 = slurp("cli_y.svg");
  const std::string svg2 = slurp("cli_y2.svg");
  CHECK(svg1.find("<svg") != std::string::npos);
  CHECK(svg1.find("</svg>") != std::string::npos);
  CHECK(svg2.find("<circle") != std::string::npos);
  CHECK(run({"render", "--in", "cli_y.csv", "--x", "nope", "--y", "y_2",
             "--out", "cli_bad.svg"}) == 2);
  std::remove("cli_y.csv");
  std::remove("cli_y.svg");
  std::remove("cli_y2.svg");
}

TEST_CASE("render accepts wildcard y columns and empty tables") {
  {
    std::ofstream f("cli_empty.csv");
    f << "theta,value_1,value_2\n";
  }
  CHECK(run({"render", "--in", "cli_empty.csv", "--x", "theta", "--y",
             "value_*", "--out", "cli_empty.svg"}) == 0);
  const std::string svg = slurp("cli_empty.svg");
  CHECK(svg.find("<svg") != std::string::npos);      // axes-only document
  CHECK(svg.find("<circle") == std::string::npos);
  std::remove("cli_empty.csv");
  std::remove("cli_empty.svg");
}

TEST_CASE("analytic thresholds report") {
  CHECK(run({"analytic", "--report", "thresholds", "--out", "cli_thr.txt"}) == 0);
  const std::string text = slurp("cli_thr.txt");
  CHECK(text.find("0.666666666667") != std::string::npos);
  CHECK(text.find("0.809016994375") != std::string::npos);
  CHECK(text.find("0.8499377") != std::string::npos);
  std::remove("cli_thr.txt");
}

TEST_CASE("afs-sweep classifies the first bifurcation") {
  CHECK(run({"afs-sweep", "--lp", "castillo-barnes", "--theta-min", "0.6",
             "--theta-max", "0.72", "--steps", "4", "--out", "cli_asweep.csv",
             "--emit", "8"}) == 0);
  const auto table = dikin::csv::read_file("cli_asweep.csv");
  REQUIRE(table.rows.size() == 4);
  const auto cls = table.column_index("classification");
  const auto per = table.column_index("period");
  // last grid point (0.69) sits beyond the 2/3 bifurcation
  CHECK(table.rows.back()[cls] == "periodic");
  CHECK(table.rows.back()[per] == "2");
  std::remove("cli_asweep.csv");
}
