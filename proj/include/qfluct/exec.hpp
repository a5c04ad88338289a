#pragma once

namespace qfluct {

/// Selects between the serial reference kernels and the OpenMP kernels.
/// Both produce bit-identical results.
enum class Exec { serial, parallel };

}  // namespace qfluct
