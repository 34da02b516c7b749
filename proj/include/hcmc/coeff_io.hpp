#pragma once

#include <string>

#include "hcmc/trigpoly.hpp"

namespace hcmc {

/// Parse the coefficient file format
///   {"d": <int>, "coeffs": [{"k": [<int>,...], "re": <float>, "im": <float>}, ...]}
/// Duplicate frequencies are rejected.
TrigPoly read_coeff_json(const std::string& path);
TrigPoly parse_coeff_json(const std::string& text);

/// Canonical serialization: keys lexicographically sorted, floats with 17
/// significant digits. Byte-stable for identical inputs.
std::string to_coeff_json(const TrigPoly& f);

/// Atomic write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hcmc
