#include "qfluct/spectra.hpp"

#include <cmath>
#include <string>

#include "qfluct/constants.hpp"
#include "qfluct/errors.hpp"

namespace qfluct {

namespace {

void validate(const CasimirGeometry& g) {
  if (!(g.area > 0.0) || !(g.period > 0.0) || !std::isfinite(g.area) || !std::isfinite(g.period))
    throw DomainError("Casimir geometry needs area > 0 and period > 0");
}

void validate(const CasimirPolderSetup& s) {
  // alpha0 = 0 is admitted: it only scales the potential.
  if (!(s.alpha0 >= 0.0) || !(s.z > 0.0) || !std::isfinite(s.alpha0) || !std::isfinite(s.z))
    throw DomainError("Casimir-Polder setup needs alpha0 >= 0 and z > 0");
}

}  // namespace

SpectrumModel SpectrumModel::casimir(CasimirGeometry geom) {
  validate(geom);
  return SpectrumModel(SpectrumKind::casimir, geom, kTwoPi / geom.period);
}

SpectrumModel SpectrumModel::casimir_polder(CasimirPolderSetup setup) {
  validate(setup);
  return SpectrumModel(SpectrumKind::casimir_polder, setup, kPi / setup.z);
}

double SpectrumModel::segment_length() const noexcept {
  return kind_ == SpectrumKind::casimir ? scale_ : scale_ / 2.0;
}

double SpectrumModel::sigma(double omega) const {
  return kind_ == SpectrumKind::casimir ? casimir_sigma(omega, geometry())
                                        : cp_sigma(omega, setup());
}

std::string_view SpectrumModel::name() const noexcept {
  return kind_ == SpectrumKind::casimir ? "casimir" : "cp";
}

double sawtooth(double x) {
  if (x < 0.0) return -sawtooth(-x);
  const double r = std::fmod(x, kTwoPi);
  if (r == 0.0) return 0.0;
  return (kPi - r) / 2.0;
}

double sawtooth_partial_sum(double x, int terms) {
  if (terms < 1) throw DomainError("sawtooth_partial_sum needs at least one term");
  double sum = 0.0;
  // Smallest terms first.
  for (int n = terms; n >= 1; --n) sum += std::sin(n * x) / n;
  return sum;
}

double casimir_sigma(double omega, const CasimirGeometry& geom) {
  if (!(omega >= 0.0)) throw DomainError("casimir_sigma needs omega >= 0");
  validate(geom);
  return geom.area * omega * omega / (2.0 * kPi * kPi) * sawtooth(omega * geom.period);
}

double cp_sigma(double omega, const CasimirPolderSetup& setup) {
  if (!(omega >= 0.0)) throw DomainError("cp_sigma needs omega >= 0");
  validate(setup);
  const double x = 2.0 * omega * setup.z;
  return (x * x / 2.0 - 1.0) * std::sin(x) + x * std::cos(x);
}

double casimir_energy_closed(const CasimirGeometry& geom) {
  validate(geom);
  const double L = geom.period;
  return -kPi * kPi * geom.area / (90.0 * L * L * L);
}

double cp_potential_closed(const CasimirPolderSetup& setup) {
  validate(setup);
  const double z2 = setup.z * setup.z;
  return -3.0 * setup.alpha0 / (8.0 * kPi * z2 * z2);
}

SpectrumTable tabulate_spectrum(const SpectrumModel& model, double omega_max, int samples,
                                bool normalized) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max))
    throw DomainError("tabulate_spectrum needs omega_max > 0");
  if (samples < 2) throw DomainError("tabulate_spectrum needs at least 2 samples");

  SpectrumTable table;
  table.reserve(static_cast<std::size_t>(samples));
  const double step = omega_max / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    // Pin the last abscissa so rounding cannot push it past omega_max.
    const double omega = i + 1 == samples ? omega_max : i * step;
    double x = omega;
    double y = model.sigma(omega);
    if (normalized) {
      if (model.kind() == SpectrumKind::casimir) {
        const auto& g = model.geometry();
        x = omega / (kTwoPi / g.period);
        y = y / (2.0 * g.area / g.period);
      } else {
        x = 2.0 * omega * model.setup().z;
      }
    }
    table.push_back({x, y});
  }
  return table;
}

}  // namespace qfluct
