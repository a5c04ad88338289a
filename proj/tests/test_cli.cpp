#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qfluct/constants.hpp"
#include "qfluct/csv.hpp"
#include "qfluct/spectra.hpp"
#include "qfluct/svg.hpp"

using namespace qfluct;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "qfluct_cli_XXXXXX").string();
    path = mkdtemp(tmpl.data());
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qfluct");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("shortest round-trip formatting") {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 10000; ++i) {
    std::uint64_t bits = gen();
    double x;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    CHECK(std::strtod(csv::format(x).c_str(), nullptr) == x);
  }
  CHECK(csv::format(0.1) == "0.1");
  CHECK(csv::format(-2.0) == "-2");
}

TEST_CASE("svg output") {
  svg::Plot p;
  p.title = "t & <x>";
  p.series.push_back({"a", {0.0, 1.0, 2.0}, {1.0, -1.0, 0.5}});
  p.series.push_back({"b", {0.0, 2.0}, {0.0, 0.0}});
  std::ostringstream os;
  svg::write(os, p);
  const auto s = os.str();
  CHECK(s.find("width=\"800\"") != std::string::npos);
  CHECK(s.find("height=\"500\"") != std::string::npos);
  std::size_t lines = 0;
  for (auto pos = s.find("<polyline"); pos != std::string::npos; pos = s.find("<polyline", pos + 1)) ++lines;
  CHECK(lines == 2);
  CHECK(s.find("t &amp; &lt;x&gt;") != std::string::npos);
  CHECK(s.find("<text") != std::string::npos);
}

TEST_CASE("wick table") {
  const auto r = run({"wick", "--n-max", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pairings,5,945,945,PASS") != std::string::npos);
  CHECK(r.out.find("matchings,3,8,8,PASS") != std::string::npos);
  CHECK(r.out.find("matchings,4,60,60,PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto six = run({"wick", "--n-max", "8"});
  CHECK(six.code == 0);
  CHECK(six.out.find("matchings,6,6040,6040,PASS") != std::string::npos);
  CHECK(six.out.find("matchings,7") == std::string::npos);
  CHECK(run({"wick", "--n-max", "9"}).code == 2);
  CHECK(run({"wick", "--n-max", "0"}).code == 2);
}

TEST_CASE("spectrum command") {
  TempDir dir;
  const auto r = run({"--out", dir.path.string(), "spectrum", "--model", "casimir", "--L", "1", "--A", "1",
                      "--omega-max", "25.13", "--samples", "2000"});
  REQUIRE(r.code == 0);
  const auto text = slurp(dir.path / "spectrum_casimir.csv");
  CHECK(text.rfind("omega,sigma\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  const auto rows = csv_rows(text);
  REQUIRE(rows.size() == 2001);
  int jumps = 0;
  for (std::size_t i = 2; i < rows.size(); ++i)
    if (std::stod(rows[i - 1][1]) < 0 && std::stod(rows[i][1]) >= 0) ++jumps;
  CHECK(jumps == 3);  // 25.13 stops just short of the fourth jump at 8 pi
  CHECK_FALSE(fs::exists(dir.path / "spectrum_casimir.svg"));

  const auto c = run({"--out", dir.path.string(), "spectrum", "--model", "cp", "--z", "1", "--omega-max", "12.57",
                      "--samples", "2000", "--svg"});
  REQUIRE(c.code == 0);
  const auto cp = csv_rows(slurp(dir.path / "spectrum_cp.csv"));
  REQUIRE(cp.size() == 2001);
  for (std::size_t i = 1; i < cp.size(); ++i)
    CHECK(std::stod(cp[i][1]) == cp_sigma(std::stod(cp[i][0]), {1.0, 1.0}));
  const auto svg = slurp(dir.path / "spectrum_cp.svg");
  CHECK(svg.find("<polyline") != std::string::npos);

  CHECK(run({"--out", dir.path.string(), "spectrum"}).code == 2);
  CHECK(run({"--out", dir.path.string(), "spectrum", "--model", "slab"}).code == 2);
  CHECK(run({"--out", dir.path.string(), "spectrum", "--model", "casimir", "--L", "-1"}).code == 2);
  CHECK(run({"--out", dir.path.string(), "spectrum", "--model", "casimir", "--samples", "1"}).code == 2);
}

TEST_CASE("energy command") {
  TempDir dir;
  const auto c = run({"--out", dir.path.string(), "energy", "--model", "casimir", "--A", "1", "--L", "1"});
  CHECK(c.code == 0);
  CHECK(c.out.find("status=PASS") != std::string::npos);
  const auto text = slurp(dir.path / "energy_casimir.csv");
  CHECK(text.rfind("beta,value\n", 0) == 0);
  CHECK(text.find("\n# extrapolated=") != std::string::npos);
  CHECK(csv_rows(text).size() == 11);

  const auto p = run({"--out", dir.path.string(), "energy", "--model", "cp", "--alpha0", "1", "--z", "1"});
  CHECK(p.code == 0);
  const auto pos = p.out.find("energy=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::abs(std::stod(p.out.substr(pos + 7)) + 3.0 / (8.0 * kPi)) < 1e-6 * 3.0 / (8.0 * kPi));

  const auto q = run({"--out", dir.path.string(), "energy", "--model", "casimir", "--beta-seq", "0.5,0.25,0.125,0.0625,0.03125,0.015625,0.0078125,0.00390625"});
  CHECK(q.code == 0);

  CHECK(run({"--out", dir.path.string(), "energy", "--model", "casimir", "--beta-seq", "0.5,abc"}).code == 2);
  CHECK(run({"--out", dir.path.string(), "energy", "--model", "casimir", "--beta-seq", "0.1,0.2"}).code == 2);
  CHECK(run({"--out", dir.path.string(), "energy", "--model", "casimir", "--beta-seq", "0.1"}).code == 2);
  CHECK(run({"--out", dir.path.string(), "energy", "--model", "casimir", "--path", "simpson"}).code == 2);
  // Two coarse points cannot meet a 1e-12 check.
  CHECK(run({"--out", dir.path.string(), "energy", "--model", "casimir", "--beta-seq", "0.5,0.25", "--check-tol",
             "1e-12"})
            .code == 3);
}

TEST_CASE("moments command") {
  TempDir dir;
  const auto r = run({"--out", dir.path.string(), "moments", "--mu", "0.01", "--T", "1"});
  REQUIRE(r.code == 0);
  const auto text = slurp(dir.path / "moments.csv");
  CHECK(text == r.out);
  const auto rows = csv_rows(text);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == std::vector<std::string>{"muT", "method", "order", "value", "error"});
  double quad3 = 0.0, trace3 = 0.0;
  for (const auto& row : rows) {
    if (row[1] == "leading_log" && row[2] == "2") CHECK(std::stod(row[3]) == doctest::Approx(1.07439).epsilon(1e-5));
    if (row[1] == "leading_log" && row[2] == "3") CHECK(std::stod(row[3]) == doctest::Approx(3.14984).epsilon(1e-5));
    if (row[1] == "quadrature" && row[2] == "3") quad3 = std::stod(row[3]);
    if (row[1] == "trace" && row[2] == "3") trace3 = std::stod(row[3]);
  }
  CHECK(std::abs(trace3 - quad3) / quad3 < 0.02);
  CHECK(text.find("# ratio method=leading_log value=1.4142135623730951") != std::string::npos);

  const auto sub = run({"--out", dir.path.string(), "moments", "--methods", "closed_form,leading_log"});
  CHECK(sub.code == 0);
  CHECK(csv_rows(sub.out).size() == 5);
  CHECK(run({"--out", dir.path.string(), "moments", "--methods", "simpson"}).code == 2);
  CHECK(run({"--out", dir.path.string(), "moments", "--mu", "2", "--T", "1"}).code == 2);
}

TEST_CASE("sample command is deterministic") {
  TempDir a, b, c;
  const std::vector<std::string> common{"sample", "--mu", "0.01", "--T", "1", "--N", "50", "--count", "20000",
                                        "--seed", "42", "--bins", "50", "--svg"};
  auto with = [&](const TempDir& d, const std::string& threads) {
    std::vector<std::string> args{"--out", d.path.string(), "--threads", threads};
    args.insert(args.end(), common.begin(), common.end());
    return run(args);
  };
  REQUIRE(with(a, "1").code == 0);
  REQUIRE(with(b, "1").code == 0);
  REQUIRE(with(c, "3").code == 0);
  for (const char* f : {"sample_histogram.csv", "sample_shape.csv", "sample_histogram.svg"}) {
    CHECK(slurp(a.path / f) == slurp(b.path / f));
    CHECK(slurp(a.path / f) == slurp(c.path / f));
  }
  const auto shape = csv_rows(slurp(a.path / "sample_shape.csv"));
  REQUIRE(shape.size() == 2);
  CHECK(shape[0] == std::vector<std::string>{"count", "seed", "mean", "var", "skewness", "min", "lower_bound",
                                             "frac_negative"});
  CHECK(std::stod(shape[1][5]) >= std::stod(shape[1][6]));
  CHECK(std::stod(shape[1][7]) > 0.5);
  const auto hist = csv_rows(slurp(a.path / "sample_histogram.csv"));
  CHECK(hist.size() == 51);
  CHECK(hist[0] == std::vector<std::string>{"bin_left", "bin_right", "count", "density"});

  CHECK(run({"--out", a.path.string(), "sample", "--count", "5"}).code == 2);
  CHECK(run({"--out", a.path.string(), "sample", "--N", "1"}).code == 2);
}

TEST_CASE("config files") {
  TempDir dir;
  const auto cfg = dir.path / "run.cfg";
  {
    std::ofstream os(cfg);
    os << "# Casimir-Polder check\nmodel = cp\nz=2\n\nalpha0=1  # trailing comment\n";
  }
  const auto r = run({"--out", dir.path.string(), "energy", "--config", cfg.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("reference=-0.007460387957432594") != std::string::npos);
  // Command-line values win over the file.
  const auto o = run({"--out", dir.path.string(), "energy", "--config", cfg.string(), "--z", "1"});
  CHECK(o.code == 0);
  CHECK(o.out.find("reference=-0.1193662073189215") != std::string::npos);

  const auto bad = dir.path / "bad.cfg";
  {
    std::ofstream os(bad);
    os << "model=cp\nwavelength=3\n";
  }
  CHECK(run({"--out", dir.path.string(), "energy", "--config", bad.string()}).code == 2);
  const auto junk = dir.path / "junk.cfg";
  {
    std::ofstream os(junk);
    os << "model cp\n";
  }
  CHECK(run({"--out", dir.path.string(), "energy", "--config", junk.string()}).code == 2);
  CHECK(run({"--out", dir.path.string(), "energy", "--config", (dir.path / "missing.cfg").string()}).code == 2);
}

TEST_CASE("output directory and usage errors") {
  TempDir dir;
  setenv("QFLUCT_OUT_DIR", (dir.path / "env").string().c_str(), 1);
  CHECK(run({"spectrum", "--model", "casimir"}).code == 0);
  CHECK(fs::exists(dir.path / "env" / "spectrum_casimir.csv"));
  unsetenv("QFLUCT_OUT_DIR");

  const auto file = dir.path / "plain";
  std::ofstream(file) << "x";
  CHECK(run({"--out", (file / "sub").string(), "spectrum", "--model", "casimir"}).code == 2);

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"wick", "--bogus"}).code == 2);
  CHECK(run({"wick", "--n-max", "two"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("spectrum") != std::string::npos);
}
