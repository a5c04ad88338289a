#pragma once

// Two-dimensional scalar field of small mass m, sampled at one spatial
// point and averaged over a time window of length T. Moments of the
// time-averaged normal-ordered square are computed with the Hadamard kernel
//   G(t1, t2) = -(1/4pi) ln(mu^2 (t1 - t2)^2),  mu = e^gamma m / 2.

#include <string_view>

#include "qfluct/exec.hpp"

namespace qfluct {

struct ModelParams {
  double mu = 0.01;  // inverse time
  double T = 1.0;    // averaging window

  double mu_t() const noexcept { return mu * T; }
};

enum class MomentMethod { quadrature, closed_form, leading_log, trace };

std::string_view method_name(MomentMethod m) noexcept;
/// Throws DomainError for unknown names.
MomentMethod method_from_name(std::string_view name);

struct MomentResult {
  double value = 0.0;
  MomentMethod method = MomentMethod::quadrature;
  double error = 0.0;
  int order = 2;
};

inline constexpr int kDefaultTracePoints = 2000;

/// mu = e^gamma m / 2
double mu_from_mass(double m);

/// -(1/2pi) ln(mu |t1 - t2|); throws DomainError at coincident points.
double hadamard_log(double t1, double t2, double mu);

/// -(1/4) Y0(m |t1 - t2|); throws DomainError at coincident points.
double hadamard_massive(double t1, double t2, double m);

/// (1/2pi^2) (ln^2(mu T) - 3 ln(mu T) + 7/2)
double second_moment_closed(double mu_t);

/// -(6/pi^3) J(ln mu T), where J is the ordered-gap integral of the three
/// log factors; reduces to a cubic polynomial in ln(mu T).
double third_moment_closed(double mu_t);

/// <(phi^2)^2> = (2/T^2) int int G(t1,t2)^2.
/// `trace_points` is the grid size used by the trace method.
MomentResult second_moment(const ModelParams& params, MomentMethod method,
                           int trace_points = kDefaultTracePoints, Exec exec = Exec::parallel);

/// <(phi^2)^3> = (8/T^3) int int int G12 G23 G13.
MomentResult third_moment(const ModelParams& params, MomentMethod method,
                          int trace_points = kDefaultTracePoints, Exec exec = Exec::parallel);

/// <(phi^2)^3>^(1/3) / <(phi^2)^2>^(1/2). Throws DomainError if the third
/// moment is not positive.
double skewness_ratio(double second, double third);

/// The ratio from the closed forms of both moments.
double skewness_ratio(const ModelParams& params);

}  // namespace qfluct
