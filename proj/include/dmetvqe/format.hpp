#pragma once

#include <string>

namespace dmetvqe {

/// Shortest round-trip decimal form of `value`, always carrying a decimal
/// point or exponent so that integers print as "4.0".
std::string format_real(double value);

/// Fixed significant-digit rendering used by CSV output.
std::string format_significant(double value, int digits);

/// Parses a full string as a double; returns false on any trailing garbage.
bool parse_real(const std::string& text, double& out);

}  // namespace dmetvqe
