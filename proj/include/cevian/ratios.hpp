#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cevian/constants.hpp"
#include "cevian/simplex.hpp"

namespace cevian {

/* Volume ratios of the sub-simplices cut out by the cevians through an
   interior point, as closed forms in the barycentric weights of that point.
   Every ratio is relative to the volume of the base simplex.
 */

/// Volume(M, N_i for i != k) / Volume(base) = lambda_k * prod_{i != k} lambda_i/(1-lambda_i).
template <typename Scalar>
Scalar corner_ratio(const BarycentricPoint<Scalar>& m, Eigen::Index k) {
  if (k < 0 || k >= m.size())
    throw IndexOutOfRange("corner_ratio: index " + std::to_string(k) + " out of range [0, " +
                          std::to_string(m.size()) + ")");
  Scalar value = m[k];
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (i != k) value *= m[i] / (Scalar(1) - m[i]);
  return value;
}

/// Volume(N_1..N_{n+1}) / Volume(base) = n * prod lambda_i / prod (1 - lambda_i).
///
/// This is |det| of the matrix whose columns are the feet's barycentric
/// weights; it is a derived closed form, cross-checked against Cartesian
/// determinants by the verification harness.
template <typename Scalar>
Scalar cevian_ratio(const BarycentricPoint<Scalar>& m) {
  Scalar value = Scalar(m.dim());
  for (Eigen::Index i = 0; i < m.size(); ++i) value *= m[i] / (Scalar(1) - m[i]);
  return value;
}

/// n^(-n), the largest possible cevian_ratio.
template <typename Scalar = double>
Scalar theorem1_bound(int n) {
  detail::require_dimension(n, 2, "theorem1_bound");
  using std::pow;
  return pow(Scalar(n), -Scalar(n));
}

template <typename Scalar = double>
Scalar log_theorem1_bound(int n) {
  detail::require_dimension(n, 2, "log_theorem1_bound");
  using std::log;
  return -Scalar(n) * log(Scalar(n));
}

/// log f(theta_n) with f(x) = (x/(1-x))^n (1 - n x). Finite for every n
/// even where the linear value underflows (n > ~300).
template <typename Scalar = double>
Scalar log_theorem2_value(int n) {
  detail::require_dimension(n, 2, "log_theorem2_value");
  using std::log;
  using std::log1p;
  const Scalar t = theta<Scalar>(n);
  return Scalar(n) * (log(t) - log1p(-t)) + log1p(-Scalar(n) * t);
}

/// Maximum of corner_ratio(m, n) over interior m, evaluated as f(theta_n).
template <typename Scalar = double>
Scalar theorem2_value(int n) {
  detail::require_dimension(n, 2, "theorem2_value");
  using std::pow;
  const Scalar t = theta<Scalar>(n);
  return pow(t / (Scalar(1) - t), Scalar(n)) * (Scalar(1) - Scalar(n) * t);
}

/// Printed general constant (n+1)^2 / (n - theta_n)^(n+3), kept verbatim.
template <typename Scalar = double>
Scalar paper_eq3_value(int n) {
  detail::require_dimension(n, 2, "paper_eq3_value");
  using std::pow;
  const Scalar t = theta<Scalar>(n);
  return Scalar((n + 1) * (n + 1)) / pow(Scalar(n) - t, Scalar(n + 3));
}

template <typename Scalar = double>
struct BoundAudit {
  int n = 0;
  Scalar paper_value{};
  Scalar direct_value{};
  Scalar ratio{};
  /// direct_value * (n - theta_n)^(n+3); comes out as (n-1)^2.
  Scalar direct_times_power{};
};

template <typename Scalar = double>
BoundAudit<Scalar> audit_bound(int n) {
  detail::require_dimension(n, 2, "audit_bound");
  using std::pow;
  BoundAudit<Scalar> a;
  a.n = n;
  a.paper_value = paper_eq3_value<Scalar>(n);
  a.direct_value = theorem2_value<Scalar>(n);
  a.ratio = a.paper_value / a.direct_value;
  a.direct_times_power = a.direct_value * pow(Scalar(n) - theta<Scalar>(n), Scalar(n + 3));
  return a;
}

template <typename Scalar = double>
struct RatioBreakdown {
  int n = 0;
  Vector<Scalar> corner_ratios;
  Scalar cevian_ratio{};
  Scalar theorem1_bound{};
  Scalar theorem2_value{};
};

template <typename Scalar>
RatioBreakdown<Scalar> breakdown(const BarycentricPoint<Scalar>& m) {
  RatioBreakdown<Scalar> b;
  b.n = m.dim();
  b.corner_ratios.resize(m.size());
  for (Eigen::Index k = 0; k < m.size(); ++k) b.corner_ratios[k] = corner_ratio(m, k);
  b.cevian_ratio = cevian_ratio(m);
  b.theorem1_bound = cevian::theorem1_bound<Scalar>(b.n);
  b.theorem2_value = cevian::theorem2_value<Scalar>(b.n);
  return b;
}

/// Areas cut from a triangle by three concurrent cevians: p, q, r are the
/// corner triangles A_1N_2N_3, A_2N_3N_1, A_3N_1N_2, x the cevian triangle.
template <typename Scalar = double>
struct MoebiusAreas {
  Scalar p{}, q{}, r{}, x{}, S{};
};

/// 4pqr - x^2 (p+q+r+x); vanishes for every cevian configuration.
template <typename Scalar>
Scalar moebius_residual(const MoebiusAreas<Scalar>& a) {
  return Scalar(4) * a.p * a.q * a.r - a.x * a.x * (a.p + a.q + a.r + a.x);
}

/// Areas by Cartesian determinants. Requires a triangle configuration.
template <typename Scalar>
MoebiusAreas<Scalar> moebius_areas(const CevianConfiguration<Scalar>& c) {
  if (c.dim() != 2) throw UnsupportedDimension("moebius_areas: requires n = 2");
  const auto& A = c.simplex.vertices();
  const auto& N = c.feet_cart;
  auto tri = [](const auto& a, const auto& b, const auto& d) {
    Matrix<Scalar> v(2, 3);
    v << a, b, d;
    return simplex_volume(v);
  };
  MoebiusAreas<Scalar> out;
  out.p = tri(A.col(0), N.col(1), N.col(2));
  out.q = tri(A.col(1), N.col(2), N.col(0));
  out.r = tri(A.col(2), N.col(0), N.col(1));
  out.x = simplex_volume(N);
  out.S = volume(c.simplex);
  return out;
}

} // namespace cevian
