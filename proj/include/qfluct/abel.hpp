#pragma once

// Convergence-factor (Abel) evaluation of oscillatory spectra:
//   E = lim_{beta -> 0} int_0^inf exp(-beta omega) sigma(omega) d omega.

#include <span>
#include <vector>

#include "qfluct/errors.hpp"
#include "qfluct/exec.hpp"
#include "qfluct/spectra.hpp"

namespace qfluct {

struct DampedIntegral {
  double beta = 0.0;
  double value = 0.0;
  long segments_used = 0;
  double tail_bound = 0.0;   // certified bound on the omitted tail
  double quad_error = 0.0;   // summed per-segment quadrature error estimates
};

/// Thrown when integrate_damped exceeds its segment budget or a segment
/// fails to converge. Carries what had been summed so far.
class DampedIntegralFailure : public NumericalFailure {
 public:
  DampedIntegralFailure(const std::string& what, DampedIntegral partial)
      : NumericalFailure(what), partial_(partial) {}
  const DampedIntegral& partial() const noexcept { return partial_; }

 private:
  DampedIntegral partial_;
};

struct AbelPoint {
  double beta;
  double value;
};

struct Extrapolation {
  double limit = 0.0;
  double error_estimate = 0.0;
};

struct AbelResult {
  std::vector<AbelPoint> points;  // strictly decreasing beta
  double limit = 0.0;             // beta -> 0 limit of the damped integral
  double error_estimate = 0.0;
  double energy = 0.0;            // physical energy (potential for CP)
  double energy_error = 0.0;
};

enum class DampedPath { oracle, quadrature };

/// Segmented quadrature of the damped integral. Segments end exactly on the
/// sawtooth jumps (Casimir) or on zeros of sin(2 omega z) (CP); summation
/// stops once an envelope bound certifies the tail below tol / 2. The
/// remaining tol / 2 is shared out as the per-segment quadrature budget.
/// Runs in extended precision: the cancellation between segments is severe
/// at small beta.
DampedIntegral integrate_damped(const SpectrumModel& model, double beta, double tol,
                                Exec exec = Exec::parallel, long max_segments = 20'000'000);

/// Mode-sum oracle for the Casimir damped integral: each Fourier mode of
/// the sawtooth integrates in closed form against omega^2 exp(-beta omega).
double casimir_damped_modesum(const CasimirGeometry& geom, double beta);

/// Closed form of the Casimir-Polder damped integral (without the
/// alpha0 / (4 pi z^3) prefactor).
double cp_damped_closed(const CasimirPolderSetup& setup, double beta);

/// Dispatches to the analytic oracle of the model.
double damped_oracle(const SpectrumModel& model, double beta);

/// Neville extrapolation to beta = 0 of the interpolating polynomial.
/// `value_errors`, if given, are absolute errors of the inputs and are
/// propagated through the Lebesgue constant of the extrapolation.
Extrapolation richardson_extrapolate(std::span<const AbelPoint> points,
                                     std::span<const double> value_errors = {});

/// beta_k = beta0 2^-k, k = 0..levels-1, with beta0 = 1 / (2 * oscillation scale).
std::vector<double> default_beta_sequence(const SpectrumModel& model, int levels = 10);

AbelResult abel_limit(const SpectrumModel& model, std::span<const double> betas, double tol,
                      DampedPath path = DampedPath::oracle, Exec exec = Exec::parallel);

/// Converts the beta -> 0 limit into the physical energy of the model.
double energy_from_limit(const SpectrumModel& model, double limit);

/// int_0^{period} |sigma| exp(-beta omega) d omega over the first
/// oscillation period.
double first_period_absolute(const SpectrumModel& model, double beta);

}  // namespace qfluct
