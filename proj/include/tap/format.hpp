#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace tap {

// Fixed-decimal rendering with 6 significant digits. Avoids platform float
// formatting drift so emitted CSV is byte-deterministic and regression
// testable.
inline std::string format_sig6(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("format_sig6: non-finite value");
  }
  if (x == 0.0) return "0";
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const int decimals = 5 - exponent;
  char buf[64];
  if (decimals >= 0) {
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  } else {
    const double scale = std::pow(10.0, -decimals);
    std::snprintf(buf, sizeof(buf), "%.0f", std::round(x / scale) * scale);
  }
  return buf;
}

}  // namespace tap
