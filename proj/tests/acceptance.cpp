// Acceptance checks AC1..AC10. One PASS/FAIL line per criterion; exit
// status is non-zero if any criterion fails.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qfluct/abel.hpp"
#include "qfluct/constants.hpp"
#include "qfluct/field2d.hpp"
#include "qfluct/quadform.hpp"
#include "qfluct/spectra.hpp"
#include "qfluct/stats.hpp"
#include "qfluct/wick.hpp"

using namespace qfluct;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Collects sub-checks of one criterion and prints its verdict line.
class Criterion {
 public:
  explicit Criterion(std::string id) : id_(std::move(id)) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_ << "\n    failed: " << what;
    }
    ++checks_;
  }

  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }

  bool report() const {
    std::cout << id_ << ' ' << (pass_ ? "PASS" : "FAIL") << " (" << checks_ << " checks) " << notes_.str()
              << failures_.str() << std::endl;
    return pass_;
  }

 private:
  std::string id_;
  bool pass_ = true;
  int checks_ = 0;
  std::ostringstream notes_;
  std::ostringstream failures_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "qfluct_accept_XXXXXX").string();
    path = mkdtemp(tmpl.data());
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qfluct");
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::pair<double, double>> read_spectrum(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return rows;
}

bool ac1() {
  Criterion c("AC1");
  const auto t0 = Clock::now();
  double e1 = 0.0;
  for (double L : {1.0, 2.0}) {
    const auto m = SpectrumModel::casimir({1.0, L});
    const auto betas = default_beta_sequence(m, 8);
    for (int k = 0; k < 8; ++k)
      c.check(rel(betas[k], std::ldexp(1.0, -(k + 1)) * L / kTwoPi) < 1e-15, "beta sequence is {2^-1..2^-8} L/2pi");
    for (auto path : {DampedPath::quadrature, DampedPath::oracle}) {
      const auto r = abel_limit(m, betas, 1e-12, path);
      const double expected = -kPi * kPi / (90.0 * L * L * L);
      const double dev = rel(r.energy, expected);
      c.check(dev < 1e-6, "L=" + fmt(L) + " limit within 1e-6 (dev " + fmt(dev) + ")");
      if (path == DampedPath::quadrature) {
        if (L == 1.0) {
          e1 = r.energy;
          c.note("L=1 quadrature limit " + fmt(r.energy) + " rel dev " + fmt(dev));
        } else {
          const double ratio = r.energy / e1;
          c.check(std::abs(ratio - 0.125) < 1e-6 * 0.125, "L=2 / L=1 ratio 1/8 (got " + fmt(ratio) + ")");
          c.note("L=2/L=1 ratio " + fmt(ratio));
        }
      }
    }
  }
  const double t = seconds_since(t0);
  c.check(t < 10.0, "runtime < 10 s");
  c.note("runtime " + fmt(t) + " s");
  return c.report();
}

bool ac2() {
  Criterion c("AC2");
  double v1 = 0.0;
  for (double z : {1.0, 2.0}) {
    const auto m = SpectrumModel::casimir_polder({1.0, z});
    const auto betas = default_beta_sequence(m);
    for (auto path : {DampedPath::quadrature, DampedPath::oracle}) {
      const auto r = abel_limit(m, betas, 1e-12, path);
      const double expected = -3.0 / (8.0 * kPi * std::pow(z, 4));
      const double dev = rel(r.energy, expected);
      c.check(dev < 1e-6, "z=" + fmt(z) + " potential within 1e-6 (dev " + fmt(dev) + ")");
      if (path == DampedPath::quadrature) {
        if (z == 1.0) {
          v1 = r.energy;
          c.note("z=1 quadrature potential " + fmt(r.energy) + " rel dev " + fmt(dev));
        } else {
          const double ratio = r.energy / v1;
          c.check(std::abs(ratio - 1.0 / 16) < 1e-6 / 16, "z=2 / z=1 ratio 1/16 (got " + fmt(ratio) + ")");
          c.note("z=2/z=1 ratio " + fmt(ratio));
        }
      }
    }
  }
  return c.report();
}

bool ac3() {
  Criterion c("AC3");
  double worst = 0.0;
  for (const auto& m : {SpectrumModel::casimir({1.0, 1.0}), SpectrumModel::casimir({1.0, 2.0}),
                        SpectrumModel::casimir_polder({1.0, 1.0}), SpectrumModel::casimir_polder({1.0, 2.0})}) {
    for (double beta : default_beta_sequence(m)) {
      const auto q = integrate_damped(m, beta, 1e-12);
      const double d = rel(q.value, damped_oracle(m, beta));
      worst = std::max(worst, d);
      c.check(d < 1e-8, std::string(m.name()) + " beta=" + fmt(beta) + " dev " + fmt(d));
    }
  }
  c.note("worst relative deviation " + fmt(worst));
  return c.report();
}

bool ac4() {
  Criterion c("AC4");
  for (int n = 1; n <= 5; ++n)
    c.check(enumerate_pairings(n).size() == double_factorial_odd(n), "pairings n=" + std::to_string(n));
  const std::uint64_t golden[] = {0, 0, 2, 8, 60, 544, 6040};
  for (int n = 2; n <= 6; ++n) {
    const auto enumerated = enumerate_vertex_matchings(n).size();
    c.check(enumerated == golden[n], "matchings n=" + std::to_string(n));
    c.check(vertex_matching_count(n) == golden[n], "inclusion-exclusion n=" + std::to_string(n));
    std::uint64_t total = 0;
    for (const auto& p : cycle_partitions(n)) total += p.multiplicity;
    c.check(total == enumerated, "cycle multiplicities n=" + std::to_string(n));
  }
  c.note("pairings 1,3,15,105,945; matchings 2,8,60,544,6040");
  return c.report();
}

bool ac5() {
  Criterion c("AC5");
  // Linear functional sum_i sqrt(lambda_i) z_i of the discretized field.
  const auto model = eigen_lambdas(build_kernel(TimeGrid::midpoint(1.0, 200), 0.01));
  std::vector<double> coeffs;
  for (double l : model.lambdas) coeffs.push_back(std::sqrt(l));
  const long n = 1'000'000;
  const auto b = sample_linear(coeffs, n, 20240517);
  const auto s = shape(b.values);
  const double skew_bound = 3.0 * std::sqrt(6.0 / n);
  const double kurt_bound = 3.0 * std::sqrt(24.0 / n);
  c.check(std::abs(s.skewness.value) < skew_bound, "|skewness| < 3 sqrt(6/n)");
  c.check(std::abs(s.excess_kurtosis.value) < kurt_bound, "|mu4/mu2^2 - 3| < 3 sqrt(24/n)");
  c.note("skewness " + fmt(s.skewness.value) + " (bound " + fmt(skew_bound) + "), excess kurtosis " +
         fmt(s.excess_kurtosis.value) + " (bound " + fmt(kurt_bound) + ")");
  return c.report();
}

bool ac6() {
  Criterion c("AC6");
  double previous = INFINITY;
  for (double mt : {1e-1, 1e-2, 1e-4, 1e-8}) {
    const ModelParams p{mt, 1.0};
    const double quad = second_moment(p, MomentMethod::quadrature).value;
    const double closed = second_moment_closed(mt);
    const double lead = second_moment(p, MomentMethod::leading_log).value;
    const double d = rel(quad, closed);
    const double ld = std::abs(closed - lead) / closed;
    c.check(d < 1e-6, "muT=" + fmt(mt) + " quadrature vs closed form (dev " + fmt(d) + ")");
    c.check(ld <= 3.5 / std::abs(std::log(mt)), "muT=" + fmt(mt) + " leading-log deviation bound");
    c.check(ld < previous, "leading-log deviation decreasing at muT=" + fmt(mt));
    previous = ld;
    c.note("muT=" + fmt(mt) + ": quad dev " + fmt(d) + ", lead dev " + fmt(ld));
  }
  return c.report();
}

bool ac7() {
  Criterion c("AC7");
  double previous = INFINITY;
  for (double mt : {1e-2, 1e-4, 1e-8}) {
    const ModelParams p{mt, 1.0};
    const double m3 = third_moment(p, MomentMethod::quadrature).value;
    const double m2 = second_moment(p, MomentMethod::quadrature).value;
    c.check(m3 > 0.0, "third moment positive at muT=" + fmt(mt));
    const double r = skewness_ratio(m2, m3);
    const double d = std::abs(r - std::sqrt(2.0));
    c.check(d < previous, "|ratio - sqrt2| decreasing at muT=" + fmt(mt));
    previous = d;
    c.note("muT=" + fmt(mt) + ": ratio " + fmt(r));

    const double l2 = second_moment(p, MomentMethod::leading_log).value;
    const double l3 = third_moment(p, MomentMethod::leading_log).value;
    const double ld = std::abs(skewness_ratio(l2, l3) - std::sqrt(2.0));
    c.check(ld <= 4 * std::numeric_limits<double>::epsilon(), "leading-log ratio equals sqrt2 at muT=" + fmt(mt));
  }
  const ModelParams p{0.01, 1.0};
  const double quad = third_moment(p, MomentMethod::quadrature).value;
  const double trace = third_moment(p, MomentMethod::trace, 2000).value;
  const double d = rel(trace, quad);
  c.check(d < 0.02, "quadrature vs trace (N=2000) within 2%");
  c.note("trace vs quadrature " + fmt(d));
  return c.report();
}

bool ac8() {
  Criterion c("AC8");
  const auto t0 = Clock::now();
  const auto model = eigen_lambdas(build_kernel(TimeGrid::midpoint(1.0, 200), 0.01));
  const long n = 1'000'000;
  const auto b = sample_quadratic(model, n, 42);
  const auto s = shape(b.values);
  const double t = seconds_since(t0);
  long below = 0;
  for (double v : b.values) below += v < b.lower_bound;
  c.check(below == 0, "no sample below -sum lambda");
  c.check(s.frac_below_zero > 0.5, "negative fraction > 0.5");
  c.check(s.skewness.value > 5.0 * s.skewness.std_error, "skewness > 5 sigma");
  const double k2 = trace_cumulant(model, 2);
  const double k3 = trace_cumulant(model, 3);
  const double z2 = (s.variance.value - k2) / s.variance.std_error;
  const double z3 = (s.third_cumulant.value - k3) / s.third_cumulant.std_error;
  c.check(std::abs(z2) < 4.0, "kappa2 within 4 standard errors");
  c.check(std::abs(z3) < 4.0, "kappa3 within 4 standard errors");
  c.check(t < 30.0, "runtime < 30 s");
  c.note("min " + fmt(s.min) + " vs bound " + fmt(b.lower_bound) + ", frac_negative " + fmt(s.frac_below_zero) +
         ", skewness " + fmt(s.skewness.value) + " (" + fmt(s.skewness.value / s.skewness.std_error) +
         " sigma), kappa2 z=" + fmt(z2) + ", kappa3 z=" + fmt(z3) + ", runtime " + fmt(t) + " s");
  return c.report();
}

bool ac9() {
  Criterion c("AC9");
  const int saved = omp_get_max_threads();
  const std::vector<std::vector<std::string>> commands{
      {"sample", "--N", "200", "--count", "200000", "--seed", "42", "--svg"},
      {"spectrum", "--model", "cp", "--svg"},
      {"energy", "--model", "casimir", "--path", "quadrature"},
      {"moments", "--N", "500"},
  };
  std::vector<TempDir> dirs(3);
  const char* threads[] = {"1", "4", "1"};
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    for (const auto& cmd : commands) {
      std::vector<std::string> args{"--out", dirs[d].path.string(), "--threads", threads[d]};
      args.insert(args.end(), cmd.begin(), cmd.end());
      c.check(run_cli(args) == 0, cmd.front() + " exits 0");
    }
  }
  omp_set_num_threads(saved);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0].path)) {
    const auto name = entry.path().filename();
    const auto ref = slurp(entry.path());
    c.check(!ref.empty(), name.string() + " non-empty");
    for (std::size_t d = 1; d < dirs.size(); ++d)
      c.check(slurp(dirs[d].path / name) == ref, name.string() + " identical (threads " + threads[d] + ")");
    ++files;
  }
  c.check(files >= 7, "all outputs written");
  c.note(std::to_string(files) + " files byte-identical across repeated runs at 1 and 4 threads");
  return c.report();
}

bool ac10() {
  Criterion c("AC10");
  TempDir dir;
  // Casimir: L chosen so that no sample lands exactly on a jump.
  const double L = 1.3;
  c.check(run_cli({"--out", dir.path.string(), "spectrum", "--model", "casimir", "--L", fmt(L), "--omega-max",
                   fmt(8 * kPi / L + 0.5), "--samples", "2000"}) == 0,
          "casimir spectrum written");
  const auto cas = read_spectrum(dir.path / "spectrum_casimir.csv");
  const double hc = cas[1].first - cas[0].first;
  std::vector<double> jumps, crossings;
  for (std::size_t i = 1; i < cas.size(); ++i) {
    if (cas[i - 1].second < 0 && cas[i].second >= 0) jumps.push_back(cas[i].first);
    if (cas[i - 1].second > 0 && cas[i].second <= 0) crossings.push_back(cas[i].first);
  }
  c.check(jumps.size() == 4, "four discontinuities in range");
  for (std::size_t n = 0; n < jumps.size(); ++n)
    c.check(std::abs(jumps[n] - kTwoPi * (n + 1) / L) <= hc, "jump " + std::to_string(n + 1) + " at 2 pi n / L");
  c.check(crossings.size() == 4, "four continuous zero crossings in range");
  for (std::size_t k = 0; k < crossings.size(); ++k)
    c.check(std::abs(crossings[k] - kPi * (2 * k + 1) / L) <= hc, "crossing at pi(2k+1)/L");
  // The jump height grows like omega^2: A omega^2 / (2 pi^2) * pi at omega = 2 pi n / L.
  for (std::size_t n = 0; n + 1 < jumps.size(); ++n) c.check(jumps[n + 1] > jumps[n], "jumps ordered");

  // Casimir-Polder: roots of (x^2/2 - 1) sin x + x cos x with x = 2 omega z
  // sit at x = n pi - atan(2x / (x^2 - 2)).
  const double z = 1.0;
  c.check(run_cli({"--out", dir.path.string(), "spectrum", "--model", "cp", "--z", fmt(z), "--omega-max", "12.57",
                   "--samples", "2000"}) == 0,
          "cp spectrum written");
  const auto cp = read_spectrum(dir.path / "spectrum_cp.csv");
  const double hx = 2 * z * (cp[1].first - cp[0].first);
  std::vector<double> roots;
  for (std::size_t i = 1; i < cp.size(); ++i)
    if ((cp[i - 1].second < 0) != (cp[i].second < 0)) roots.push_back(2 * z * cp[i].first);
  const double x_max = 2 * z * cp.back().first;
  std::vector<double> predicted;
  for (int n = 1;; ++n) {
    double x = n * kPi;
    for (int it = 0; it < 200; ++it) x = n * kPi - std::atan(2 * x / (x * x - 2));
    if (x > x_max) break;
    predicted.push_back(x);
  }
  c.check(roots.size() == predicted.size(),
          "cp sign-change count " + std::to_string(roots.size()) + " vs " + std::to_string(predicted.size()));
  double worst = 0.0;
  for (std::size_t k = 0; k < std::min(roots.size(), predicted.size()); ++k) {
    worst = std::max(worst, std::abs(roots[k] - predicted[k]));
    c.check(std::abs(roots[k] - predicted[k]) <= hx, "cp root " + std::to_string(k + 1) + " within one sample");
  }
  // Quasi-period pi in 2 omega z and a growing envelope.
  if (roots.size() >= 3) {
    const double gap = roots.back() - roots[roots.size() - 2];
    c.check(std::abs(gap - kPi) < 0.02 * kPi + 2 * hx, "late root spacing close to pi");
  }
  double prev_peak = 0.0;
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
    double peak = 0.0;
    for (const auto& [w, s] : cp)
      if (2 * z * w > roots[k] && 2 * z * w < roots[k + 1]) peak = std::max(peak, std::abs(s));
    c.check(peak > prev_peak, "envelope grows between roots " + std::to_string(k + 1) + " and " + std::to_string(k + 2));
    prev_peak = peak;
  }
  c.note("casimir jumps/crossings within " + fmt(hc) + "; cp " + std::to_string(roots.size()) +
         " roots, worst offset " + fmt(worst) + " (spacing " + fmt(hx) + ")");
  return c.report();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<bool()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    try {
      if (!fn()) ++failed;
    } catch (const std::exception& e) {
      std::cout << id << " FAIL (exception: " << e.what() << ")" << std::endl;
      ++failed;
    }
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
