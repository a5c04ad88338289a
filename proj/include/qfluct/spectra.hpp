#pragma once

// Frequency spectra of the two Casimir-type configurations and their
// reference energies.

#include <string_view>
#include <variant>
#include <vector>

namespace qfluct {

/// Scalar field periodic in one direction: transverse area and period.
struct CasimirGeometry {
  double area = 1.0;
  double period = 1.0;
};

/// Polarizable particle at distance z from a perfect wall (Gaussian units).
struct CasimirPolderSetup {
  double alpha0 = 1.0;
  double z = 1.0;
};

enum class SpectrumKind { casimir, casimir_polder };

/// Tagged spectrum description. The oscillation scale is the length in
/// omega of one period: 2*pi/L for Casimir, pi/z for Casimir-Polder.
class SpectrumModel {
 public:
  static SpectrumModel casimir(CasimirGeometry geom);
  static SpectrumModel casimir_polder(CasimirPolderSetup setup);

  SpectrumKind kind() const noexcept { return kind_; }
  const CasimirGeometry& geometry() const { return std::get<CasimirGeometry>(params_); }
  const CasimirPolderSetup& setup() const { return std::get<CasimirPolderSetup>(params_); }

  double oscillation_scale() const noexcept { return scale_; }

  /// Length of one integration segment; segment edges are where the
  /// integrand is non-smooth (Casimir) or where sin(2 omega z) vanishes (CP).
  double segment_length() const noexcept;

  double sigma(double omega) const;

  std::string_view name() const noexcept;

 private:
  SpectrumModel(SpectrumKind kind, std::variant<CasimirGeometry, CasimirPolderSetup> p, double scale)
      : kind_(kind), params_(p), scale_(scale) {}

  SpectrumKind kind_;
  std::variant<CasimirGeometry, CasimirPolderSetup> params_;
  double scale_;
};

struct SpectrumRow {
  double omega;
  double sigma;
};

/// Rows with strictly increasing omega.
using SpectrumTable = std::vector<SpectrumRow>;

/// 2*pi periodic sawtooth, (pi - x)/2 on (0, 2*pi). Takes the Fourier
/// midpoint 0 at multiples of 2*pi. Odd in x.
double sawtooth(double x);

/// sum_{n=1}^{terms} sin(n x) / n
double sawtooth_partial_sum(double x, int terms);

/// (A omega^2 / 2 pi^2) S(omega L)
double casimir_sigma(double omega, const CasimirGeometry& geom);

/// (2 omega^2 z^2 - 1) sin(2 omega z) + 2 omega z cos(2 omega z)
double cp_sigma(double omega, const CasimirPolderSetup& setup);

/// -pi^2 A / (90 L^3)
double casimir_energy_closed(const CasimirGeometry& geom);

/// -3 alpha0 / (8 pi z^4)
double cp_potential_closed(const CasimirPolderSetup& setup);

/// Uniform table over [0, omega_max]. With `normalized`, a Casimir table is
/// expressed with omega in units of 2 pi / L and sigma in units of 2A/L; a
/// Casimir-Polder table is returned against x = 2 omega z, sigma unscaled.
SpectrumTable tabulate_spectrum(const SpectrumModel& model, double omega_max, int samples,
                                bool normalized = false);

}  // namespace qfluct
