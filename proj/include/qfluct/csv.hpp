#pragma once

// CSV emission. Floats use the shortest representation that round-trips;
// lines end in LF.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "qfluct/abel.hpp"
#include "qfluct/field2d.hpp"
#include "qfluct/spectra.hpp"
#include "qfluct/stats.hpp"

namespace qfluct::csv {

std::string format(double x);

/// omega,sigma
void write_spectrum(std::ostream& os, const SpectrumTable& table);

/// beta,value rows then "# extrapolated=<v> error=<e>"
void write_abel(std::ostream& os, const AbelResult& result);

/// muT,method,order,value,error
void write_moments_header(std::ostream& os);
void write_moment_row(std::ostream& os, double mu_t, const MomentResult& r);

/// bin_left,bin_right,count,density
void write_histogram(std::ostream& os, const Histogram& h);

/// count,seed,mean,var,skewness,min,lower_bound,frac_negative
void write_shape(std::ostream& os, const ShapeEstimate& s, std::uint64_t seed, double lower_bound);

}  // namespace qfluct::csv
