#pragma once

#include <cmath>

#include "cevian/constants.hpp"
#include "cevian/ratios.hpp"

namespace cevian {

/// One row of the extremal-constant table for dimension n.
template <typename Scalar = double>
struct ConstantsRow {
  int n = 0;
  Scalar theta{};
  Scalar theta_cf{};
  Scalar theta_hyp{};
  Scalar f_theta{};
  Scalar log_f_theta{};
  Scalar paper_eq3_value{};
  Scalar metallic{};
  Scalar metallic_cf{};
  Scalar metallic_hyp{};
};

template <typename Scalar = double>
ConstantsRow<Scalar> constants_row(int n, int depth = kDefaultCfDepth) {
  ConstantsRow<Scalar> row;
  row.n = n;
  row.theta = cevian::theta<Scalar>(n);
  row.theta_cf = cevian::theta_cf<Scalar>(n, depth);
  row.theta_hyp = cevian::theta_hyperbolic<Scalar>(n);
  row.f_theta = cevian::theorem2_value<Scalar>(n);
  row.log_f_theta = cevian::log_theorem2_value<Scalar>(n);
  row.paper_eq3_value = cevian::paper_eq3_value<Scalar>(n);
  row.metallic = cevian::metallic<Scalar>(n);
  row.metallic_cf = cevian::metallic_cf<Scalar>(n, depth);
  row.metallic_hyp = cevian::metallic_hyperbolic<Scalar>(n);
  return row;
}

} // namespace cevian
