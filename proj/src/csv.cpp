#include "qfluct/csv.hpp"

#include <charconv>
#include <cmath>

namespace qfluct::csv {

std::string format(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_spectrum(std::ostream& os, const SpectrumTable& table) {
  os << "omega,sigma\n";
  for (const auto& row : table) os << format(row.omega) << ',' << format(row.sigma) << '\n';
}

void write_abel(std::ostream& os, const AbelResult& result) {
  os << "beta,value\n";
  for (const auto& p : result.points) os << format(p.beta) << ',' << format(p.value) << '\n';
  os << "# extrapolated=" << format(result.limit) << " error=" << format(result.error_estimate) << '\n';
}

void write_moments_header(std::ostream& os) { os << "muT,method,order,value,error\n"; }

void write_moment_row(std::ostream& os, double mu_t, const MomentResult& r) {
  os << format(mu_t) << ',' << method_name(r.method) << ',' << r.order << ',' << format(r.value) << ','
     << format(r.error) << '\n';
}

void write_histogram(std::ostream& os, const Histogram& h) {
  os << "bin_left,bin_right,count,density\n";
  for (int i = 0; i < h.bins(); ++i)
    os << format(h.left(i)) << ',' << format(h.right(i)) << ',' << h.counts[static_cast<std::size_t>(i)] << ','
       << format(h.density[static_cast<std::size_t>(i)]) << '\n';
}

void write_shape(std::ostream& os, const ShapeEstimate& s, std::uint64_t seed, double lower_bound) {
  os << "count,seed,mean,var,skewness,min,lower_bound,frac_negative\n";
  os << s.count << ',' << seed << ',' << format(s.mean.value) << ',' << format(s.variance.value) << ','
     << format(s.skewness.value) << ',' << format(s.min) << ',' << format(lower_bound) << ','
     << format(s.frac_below_zero) << '\n';
}

}  // namespace qfluct::csv
