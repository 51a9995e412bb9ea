#pragma once

#include <cmath>

#include "cevian/errors.hpp"

namespace cevian {

inline constexpr int kDefaultCfDepth = 40;

/// Smaller root of x^2 - (n+1)x + 1, i.e. (n+1 - sqrt(n^2+2n-3))/2.
/// Evaluated in the rationalized form 2/(n+1 + sqrt(...)) so large n keeps
/// full relative precision.
template <typename Scalar = double>
Scalar theta(int n) {
  detail::require_dimension(n, 2, "theta");
  using std::sqrt;
  const Scalar m = Scalar(n);
  return Scalar(2) / (m + Scalar(1) + sqrt(m * m + Scalar(2) * m - Scalar(3)));
}

/// Truncated continued fraction 1/((n+1) - 1/((n+1) - ...)), `depth` levels,
/// innermost term 0.
template <typename Scalar = double>
Scalar theta_cf(int n, int depth) {
  detail::require_dimension(n, 2, "theta_cf");
  if (depth < 1) throw NonPositiveDepth("theta_cf: depth must be >= 1");
  Scalar x{0};
  for (int d = 0; d < depth; ++d) x = Scalar(1) / (Scalar(n + 1) - x);
  return x;
}

/// exp(-arccosh((n+1)/2)).
template <typename Scalar = double>
Scalar theta_hyperbolic(int n) {
  detail::require_dimension(n, 2, "theta_hyperbolic");
  using std::acosh;
  using std::exp;
  return exp(-acosh(Scalar(n + 1) / Scalar(2)));
}

/// Positive root of x^2 - n x - 1; metallic(1) is the golden ratio.
template <typename Scalar = double>
Scalar metallic(int n) {
  detail::require_dimension(n, 1, "metallic");
  using std::sqrt;
  const Scalar m = Scalar(n);
  return (m + sqrt(m * m + Scalar(4))) / Scalar(2);
}

/// n + 1/(n + 1/(n + ...)), `depth` levels, innermost term n.
template <typename Scalar = double>
Scalar metallic_cf(int n, int depth) {
  detail::require_dimension(n, 1, "metallic_cf");
  if (depth < 1) throw NonPositiveDepth("metallic_cf: depth must be >= 1");
  Scalar x = Scalar(n);
  for (int d = 0; d < depth; ++d) x = Scalar(n) + Scalar(1) / x;
  return x;
}

/// exp(arcsinh(n/2)).
template <typename Scalar = double>
Scalar metallic_hyperbolic(int n) {
  detail::require_dimension(n, 1, "metallic_hyperbolic");
  using std::asinh;
  using std::exp;
  return exp(asinh(Scalar(n) / Scalar(2)));
}

} // namespace cevian
