#include <cmath>
#include <numbers>
#include <string>

#include "papr_shaper/analysis.hpp"
#include "papr_shaper/constellation.hpp"

namespace papr {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double theoretical_ber(int m_order, double ebn0_db) {
  if (!is_supported_order(m_order))
    throw Error(ErrorKind::UnsupportedOrder,
                "unsupported constellation order " + std::to_string(m_order));
  const double m = static_cast<double>(m_order);
  const double k = std::log2(m);
  const double gamma_b = std::pow(10.0, ebn0_db / 10.0);
  return 4.0 / k * (1.0 - 1.0 / std::sqrt(m)) * q_function(std::sqrt(3.0 * k / (m - 1.0) * gamma_b));
}

}  // namespace papr
