#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qfluct/abel.hpp"
#include "qfluct/constants.hpp"
#include "qfluct/csv.hpp"
#include "qfluct/errors.hpp"
#include "qfluct/field2d.hpp"
#include "qfluct/quadform.hpp"
#include "qfluct/spectra.hpp"
#include "qfluct/stats.hpp"
#include "qfluct/svg.hpp"
#include "qfluct/wick.hpp"

namespace qfluct::cli {

namespace {

namespace fs = std::filesystem;

/// Bad arguments, config, or an unwritable output path.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out_dir;
  std::string config;
  int threads = 0;
};

struct ModelArgs {
  std::string model;
  double A = 1.0;
  double L = 1.0;
  double alpha0 = 1.0;
  double z = 1.0;
};

struct SpectrumArgs {
  ModelArgs m;
  double omega_max = 0.0;
  int samples = 2000;
  bool svg = false;
};

struct EnergyArgs {
  ModelArgs m;
  std::string beta_seq;
  int levels = 10;
  double tol = 1e-12;
  std::string path = "oracle";
  double check_tol = 1e-6;
};

struct WickArgs {
  int n_max = 5;
};

struct MomentsArgs {
  double mu = 0.01;
  double T = 1.0;
  std::string methods = "quadrature,closed_form,leading_log,trace";
  int N = kDefaultTracePoints;
};

struct SampleArgs {
  double mu = 0.01;
  double T = 1.0;
  int N = 200;
  long count = 1'000'000;
  std::uint64_t seed = 42;
  int bins = 200;
  long chunk = kernels::kSampleChunk;
  bool svg = false;
};

void add_model_options(CLI::App* sub, ModelArgs& m) {
  sub->add_option("--model", m.model, "casimir or cp")->check(CLI::IsMember({"casimir", "cp"}));
  sub->add_option("--A", m.A, "transverse area (casimir)");
  sub->add_option("--L", m.L, "periodicity length (casimir)");
  sub->add_option("--alpha0", m.alpha0, "static polarizability (cp)");
  sub->add_option("--z", m.z, "distance to the wall (cp)");
}

SpectrumModel make_model(const ModelArgs& m) {
  if (m.model.empty()) throw UsageError("--model is required");
  if (m.model == "casimir") return SpectrumModel::casimir({m.A, m.L});
  return SpectrumModel::casimir_polder({m.alpha0, m.z});
}

// key=value lines, '#' comments. Keys are long option names of the
// subcommand; values on the command line win.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config" || key == "help") throw UsageError("config key '" + key + "' is not allowed");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::vector<double> parse_betas(const std::string& text) {
  std::vector<double> betas;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed beta value '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw UsageError("malformed beta value '" + item + "'");
    betas.push_back(v);
  }
  if (betas.size() < 2) throw UsageError("--beta-seq needs at least two values");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] > 0.0) || !std::isfinite(betas[i])) throw UsageError("beta values must be positive");
    if (i > 0 && !(betas[i] < betas[i - 1])) throw UsageError("beta values must be strictly decreasing");
  }
  return betas;
}

std::vector<MomentMethod> parse_methods(const std::string& text) {
  std::vector<MomentMethod> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(method_from_name(item));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("--methods is empty");
  return out;
}

fs::path output_dir(const Common& c) {
  fs::path dir = c.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("QFLUCT_OUT_DIR");
    dir = env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory " + dir.string());
  return dir;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot write " + path.string());
  writer(os);
  os.flush();
  if (!os) throw UsageError("failed writing " + path.string());
}

int cmd_spectrum(const SpectrumArgs& a, const Common& c, std::ostream& out) {
  const auto model = make_model(a.m);
  const double omega_max = a.omega_max > 0.0 ? a.omega_max : 4.0 * model.oscillation_scale();
  const auto table = tabulate_spectrum(model, omega_max, a.samples);
  const auto dir = output_dir(c);
  const auto csv_path = dir / ("spectrum_" + std::string(model.name()) + ".csv");
  write_file(csv_path, [&](std::ostream& os) { csv::write_spectrum(os, table); });
  out << "wrote " << csv_path.string() << " (" << table.size() << " rows)\n";
  if (a.svg) {
    const auto plot_table = tabulate_spectrum(model, omega_max, a.samples, true);
    svg::Plot plot;
    svg::Series s;
    for (const auto& r : plot_table) {
      s.x.push_back(r.omega);
      s.y.push_back(r.sigma);
    }
    if (model.kind() == SpectrumKind::casimir) {
      plot.title = "Casimir frequency spectrum";
      plot.x_label = "omega [2 pi / L]";
      plot.y_label = "sigma [2 A / L]";
    } else {
      plot.title = "Casimir-Polder frequency spectrum";
      plot.x_label = "2 omega z";
      plot.y_label = "sigma";
    }
    plot.series.push_back(std::move(s));
    const auto svg_path = dir / ("spectrum_" + std::string(model.name()) + ".svg");
    write_file(svg_path, [&](std::ostream& os) { svg::write(os, plot); });
    out << "wrote " << svg_path.string() << '\n';
  }
  return kOk;
}

int cmd_energy(const EnergyArgs& a, const Common& c, std::ostream& out) {
  const auto model = make_model(a.m);
  if (a.path != "oracle" && a.path != "quadrature") throw UsageError("--path must be oracle or quadrature");
  if (!(a.tol > 0.0)) throw UsageError("--tol must be positive");
  const auto betas = a.beta_seq.empty() ? default_beta_sequence(model, a.levels) : parse_betas(a.beta_seq);
  const auto path = a.path == "oracle" ? DampedPath::oracle : DampedPath::quadrature;
  const auto result = abel_limit(model, betas, a.tol, path);

  const double reference = model.kind() == SpectrumKind::casimir ? casimir_energy_closed(model.geometry())
                                                                  : cp_potential_closed(model.setup());
  const double deviation = std::abs(result.energy - reference) / std::abs(reference);
  const bool pass = deviation < a.check_tol;

  csv::write_abel(out, result);
  out << "energy=" << csv::format(result.energy) << " reference=" << csv::format(reference)
      << " relative_deviation=" << csv::format(deviation) << " status=" << (pass ? "PASS" : "FAIL") << '\n';
  const auto dir = output_dir(c);
  write_file(dir / ("energy_" + std::string(model.name()) + ".csv"),
             [&](std::ostream& os) { csv::write_abel(os, result); });
  return pass ? kOk : kNumerical;
}

int cmd_wick(const WickArgs& a, std::ostream& out) {
  if (a.n_max < 1) throw UsageError("--n-max must be >= 1");
  if (a.n_max > kMaxPairingOrder)
    throw CapacityError("--n-max exceeds the enumeration capacity " + std::to_string(kMaxPairingOrder));
  bool all = true;
  out << "family,n,count,formula,status\n";
  for (int n = 1; n <= a.n_max; ++n) {
    const auto count = enumerate_pairings(n).size();
    const auto formula = double_factorial_odd(n);
    const bool ok = count == formula;
    all = all && ok;
    out << "pairings," << n << ',' << count << ',' << formula << ',' << (ok ? "PASS" : "FAIL") << '\n';
  }
  for (int n = 1; n <= std::min(a.n_max, kMaxMatchingOrder); ++n) {
    const auto count = enumerate_vertex_matchings(n).size();
    const auto formula = vertex_matching_count(n);
    const bool ok = count == formula;
    all = all && ok;
    out << "matchings," << n << ',' << count << ',' << formula << ',' << (ok ? "PASS" : "FAIL") << '\n';
  }
  return all ? kOk : kNumerical;
}

int cmd_moments(const MomentsArgs& a, const Common& c, std::ostream& out) {
  const ModelParams params{a.mu, a.T};
  if (!(a.mu > 0.0) || !(a.T > 0.0)) throw UsageError("--mu and --T must be positive");
  if (!(params.mu_t() < 1.0)) throw UsageError("mu * T must be below 1");
  if (a.N < 2) throw UsageError("--N must be >= 2");
  const auto methods = parse_methods(a.methods);

  std::ostringstream table;
  csv::write_moments_header(table);
  std::vector<std::pair<MomentResult, MomentResult>> pairs;
  for (auto m : methods) {
    const auto second = second_moment(params, m, a.N);
    const auto third = third_moment(params, m, a.N);
    csv::write_moment_row(table, params.mu_t(), second);
    csv::write_moment_row(table, params.mu_t(), third);
    pairs.emplace_back(second, third);
  }
  for (const auto& [second, third] : pairs) {
    if (!(second.value > 0.0) || !(third.value > 0.0)) continue;
    const double ratio = skewness_ratio(second.value, third.value);
    table << "# ratio method=" << method_name(second.method) << " value=" << csv::format(ratio)
          << " sqrt2=" << csv::format(std::sqrt(2.0)) << " deviation=" << csv::format(ratio - std::sqrt(2.0))
          << '\n';
  }
  out << table.str();
  const auto dir = output_dir(c);
  write_file(dir / "moments.csv", [&](std::ostream& os) { os << table.str(); });
  return kOk;
}

int cmd_sample(const SampleArgs& a, const Common& c, std::ostream& out) {
  if (!(a.mu > 0.0) || !(a.T > 0.0)) throw UsageError("--mu and --T must be positive");
  if (a.N < 2) throw UsageError("--N must be >= 2");
  if (a.count < 10) throw UsageError("--count must be >= 10");
  if (a.bins < 1) throw UsageError("--bins must be >= 1");
  if (a.chunk < 1) throw UsageError("--chunk must be >= 1");
  const auto grid = TimeGrid::midpoint(a.T, a.N);
  const auto model = eigen_lambdas(build_kernel(grid, a.mu));
  const auto batch = sample_quadratic(model, a.count, a.seed, Exec::parallel, a.chunk);
  const auto s = shape(batch.values);
  const auto range = default_range(s, batch.lower_bound);
  const auto h = histogram(batch.values, a.bins, range.lo, range.hi);

  const auto dir = output_dir(c);
  write_file(dir / "sample_histogram.csv", [&](std::ostream& os) { csv::write_histogram(os, h); });
  write_file(dir / "sample_shape.csv", [&](std::ostream& os) { csv::write_shape(os, s, a.seed, batch.lower_bound); });
  csv::write_shape(out, s, a.seed, batch.lower_bound);
  if (a.svg) {
    svg::Plot plot;
    plot.title = "Distribution of the averaged :phi^2:";
    plot.x_label = "value";
    plot.y_label = "probability density";
    svg::Series series;
    for (int i = 0; i < h.bins(); ++i) {
      series.x.push_back((h.left(i) + h.right(i)) / 2.0);
      series.y.push_back(h.density[static_cast<std::size_t>(i)]);
    }
    plot.series.push_back(std::move(series));
    write_file(dir / "sample_histogram.svg", [&](std::ostream& os) { svg::write(os, plot); });
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vacuum-fluctuation spectra and probability distributions"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out", common.out_dir, "output directory (default: $QFLUCT_OUT_DIR or .)");
  app.add_option("--threads", common.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "tabulate a frequency spectrum");
  add_model_options(sp, spectrum.m);
  sp->add_option("--omega-max", spectrum.omega_max, "upper end of the omega range");
  sp->add_option("--samples", spectrum.samples, "number of rows");
  sp->add_flag("--svg", spectrum.svg, "also write an SVG plot");

  EnergyArgs energy;
  auto* en = app.add_subcommand("energy", "damped integrals and their beta -> 0 limit");
  add_model_options(en, energy.m);
  en->add_option("--beta-seq", energy.beta_seq, "comma-separated strictly decreasing betas");
  en->add_option("--levels", energy.levels, "levels of the default geometric beta sequence");
  en->add_option("--tol", energy.tol, "absolute tolerance of the quadrature path");
  en->add_option("--path", energy.path, "oracle or quadrature");
  en->add_option("--check-tol", energy.check_tol, "relative tolerance against the closed form");

  WickArgs wick;
  auto* wk = app.add_subcommand("wick", "Wick contraction counts");
  wk->add_option("--n-max", wick.n_max, "largest order");

  MomentsArgs moments;
  auto* mo = app.add_subcommand("moments", "second and third moments of the averaged :phi^2:");
  mo->add_option("--mu", moments.mu, "mu = e^gamma m / 2");
  mo->add_option("--T", moments.T, "averaging time");
  mo->add_option("--methods", moments.methods, "comma-separated: quadrature,closed_form,leading_log,trace");
  mo->add_option("--N", moments.N, "grid size of the trace method");

  SampleArgs sample;
  auto* sa = app.add_subcommand("sample", "Monte Carlo draws of the discretized :phi^2:");
  sa->add_option("--mu", sample.mu, "mu = e^gamma m / 2");
  sa->add_option("--T", sample.T, "averaging time");
  sa->add_option("--N", sample.N, "grid size");
  sa->add_option("--count", sample.count, "number of draws");
  sa->add_option("--seed", sample.seed, "64-bit seed");
  sa->add_option("--bins", sample.bins, "histogram bins");
  sa->add_option("--chunk", sample.chunk, "draws per seeding chunk");
  sa->add_flag("--svg", sample.svg, "also write an SVG histogram");

  for (auto* sub : {sp, en, wk, mo, sa}) sub->add_option("--config", common.config, "key=value config file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!common.config.empty()) apply_config(active, common.config);
    if (common.threads > 0) omp_set_num_threads(common.threads);

    if (active == sp) return cmd_spectrum(spectrum, common, out);
    if (active == en) return cmd_energy(energy, common, out);
    if (active == wk) return cmd_wick(wick, out);
    if (active == mo) return cmd_moments(moments, common, out);
    return cmd_sample(sample, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace qfluct::cli
