#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cevian/errors.hpp"

namespace cevian {

/* Geometry kernel for an n-simplex A_1..A_{n+1} in R^n.

   Vertices are stored as the columns of an n x (n+1) matrix. Barycentric
   weights are (n+1)-vectors. Indices are 0-based throughout: vertex k of the
   API is A_{k+1} in the usual 1-based notation.
 */

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kBoundaryEpsilon = 1e-9;
inline constexpr double kDegeneracyDelta = 1e-9;

/// Unsigned volume (1/n!)|det(A_i - A_{n+1})| of the simplex whose vertices
/// are the columns of `vertices` (n rows, n+1 columns). No degeneracy guard.
template <typename Derived>
typename Derived::Scalar simplex_volume(const Eigen::MatrixBase<Derived>& vertices) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = vertices.rows();
  if (vertices.cols() != n + 1)
    throw DimensionMismatch("simplex_volume: expected n x (n+1) vertex matrix");
  Matrix<Scalar> edges = vertices.leftCols(n).colwise() - vertices.col(n);
  Scalar factorial{1};
  for (Eigen::Index k = 2; k <= n; ++k) factorial *= Scalar(k);
  using std::abs;
  return abs(edges.determinant()) / factorial;
}

/// Longest edge between any pair of columns.
template <typename Derived>
typename Derived::Scalar max_edge_length(const Eigen::MatrixBase<Derived>& vertices) {
  using Scalar = typename Derived::Scalar;
  Scalar longest{0};
  for (Eigen::Index i = 0; i < vertices.cols(); ++i)
    for (Eigen::Index j = i + 1; j < vertices.cols(); ++j)
      longest = std::max<Scalar>(longest, (vertices.col(i) - vertices.col(j)).norm());
  return longest;
}

/// Positive weights summing to one: an interior point of an n-simplex.
template <typename Scalar = double>
class BarycentricPoint {
public:
  /// Renormalizes `weights` to unit sum, then rejects any weight below
  /// `boundary_eps`.
  explicit BarycentricPoint(Vector<Scalar> weights,
                            Scalar boundary_eps = Scalar(kBoundaryEpsilon))
      : weights_(std::move(weights)) {
    if (weights_.size() < 3)
      throw UnsupportedDimension("BarycentricPoint: need n+1 >= 3 weights, got " +
                                 std::to_string(weights_.size()));
    if (!weights_.allFinite())
      throw NotInterior("BarycentricPoint: non-finite weight");
    const Scalar total = weights_.sum();
    if (!(total > Scalar(0)))
      throw NotInterior("BarycentricPoint: weights must have positive sum");
    weights_ /= total;
    for (Eigen::Index i = 0; i < weights_.size(); ++i)
      if (!(weights_[i] >= boundary_eps))
        throw NotInterior("BarycentricPoint: weight " + std::to_string(i) +
                          " is not interior");
  }

  static BarycentricPoint centroid(int n) {
    detail::require_dimension(n, 2, "BarycentricPoint::centroid");
    return BarycentricPoint(Vector<Scalar>::Constant(n + 1, Scalar(1) / Scalar(n + 1)));
  }

  const Vector<Scalar>& weights() const { return weights_; }
  Scalar operator[](Eigen::Index i) const { return weights_[i]; }
  Eigen::Index size() const { return weights_.size(); }
  int dim() const { return static_cast<int>(weights_.size()) - 1; }

private:
  Vector<Scalar> weights_;
};

/// n+1 affinely independent vertices in R^n (columns of `vertices()`).
template <typename Scalar = double>
class CartesianSimplex {
public:
  /// Rejects |det(A_i - A_{n+1})| <= delta * (max edge)^n.
  explicit CartesianSimplex(Matrix<Scalar> vertices,
                            Scalar degeneracy_delta = Scalar(kDegeneracyDelta))
      : vertices_(std::move(vertices)) {
    const Eigen::Index n = vertices_.rows();
    detail::require_dimension(n, 2, "CartesianSimplex");
    if (vertices_.cols() != n + 1)
      throw DimensionMismatch("CartesianSimplex: expected " + std::to_string(n + 1) +
                              " vertices in R^" + std::to_string(n) + ", got " +
                              std::to_string(vertices_.cols()));
    if (!vertices_.allFinite())
      throw DegenerateSimplex("CartesianSimplex: non-finite vertex coordinate");
    using std::abs;
    using std::pow;
    const Matrix<Scalar> edges = vertices_.leftCols(n).colwise() - vertices_.col(n);
    det_ = edges.determinant();
    const Scalar scale = pow(max_edge_length(vertices_), Scalar(n));
    if (!(abs(det_) > degeneracy_delta * scale))
      throw DegenerateSimplex("CartesianSimplex: vertices are (nearly) affinely dependent");
  }

  const Matrix<Scalar>& vertices() const { return vertices_; }
  auto vertex(Eigen::Index i) const { return vertices_.col(i); }
  int dim() const { return static_cast<int>(vertices_.rows()); }
  /// Signed det(A_1 - A_{n+1}, ..., A_n - A_{n+1}).
  Scalar edge_determinant() const { return det_; }

private:
  Matrix<Scalar> vertices_;
  Scalar det_{0};
};

template <typename Scalar>
Scalar volume(const CartesianSimplex<Scalar>& s) {
  using std::abs;
  Scalar factorial{1};
  for (int k = 2; k <= s.dim(); ++k) factorial *= Scalar(k);
  return abs(s.edge_determinant()) / factorial;
}

template <typename Scalar>
Vector<Scalar> to_cartesian(const Vector<Scalar>& weights, const CartesianSimplex<Scalar>& s) {
  if (weights.size() != s.dim() + 1)
    throw DimensionMismatch("to_cartesian: " + std::to_string(weights.size()) +
                            " weights for a " + std::to_string(s.dim()) + "-simplex");
  return s.vertices() * weights;
}

template <typename Scalar>
Vector<Scalar> to_cartesian(const BarycentricPoint<Scalar>& b, const CartesianSimplex<Scalar>& s) {
  return to_cartesian(b.weights(), s);
}

/// Solves [vertices; 1^T] lambda = (p, 1).
template <typename Scalar>
BarycentricPoint<Scalar> to_barycentric(const Vector<Scalar>& p, const CartesianSimplex<Scalar>& s,
                                        Scalar boundary_eps = Scalar(kBoundaryEpsilon)) {
  const int n = s.dim();
  if (p.size() != n)
    throw DimensionMismatch("to_barycentric: point has " + std::to_string(p.size()) +
                            " coordinates, simplex lives in R^" + std::to_string(n));
  Matrix<Scalar> system(n + 1, n + 1);
  system.topRows(n) = s.vertices();
  system.row(n).setOnes();
  Vector<Scalar> rhs(n + 1);
  rhs << p, Scalar(1);
  const Vector<Scalar> lambda = system.fullPivLu().solve(rhs);
  if (!(lambda.minCoeff() > boundary_eps))
    throw NotInterior("to_barycentric: point is not strictly inside the simplex");
  return BarycentricPoint<Scalar>(lambda, boundary_eps);
}

/// Barycentric weights of the foot N_i of the cevian through A_i and m: the
/// i-th weight is exactly zero and the rest are m's weights rescaled to sum 1.
template <typename Scalar>
Vector<Scalar> cevian_foot(Eigen::Index i, const BarycentricPoint<Scalar>& m) {
  if (i < 0 || i >= m.size())
    throw IndexOutOfRange("cevian_foot: index " + std::to_string(i) + " out of range [0, " +
                          std::to_string(m.size()) + ")");
  Vector<Scalar> foot = m.weights();
  foot[i] = Scalar(0);
  foot /= foot.sum();
  foot[i] = Scalar(0);
  return foot;
}

/// A simplex, an interior point M and everything the cevians through M
/// produce. Column i of feet_cart is N_i; r[i] = |M A_i|, s[i] = |M N_i|.
template <typename Scalar = double>
struct CevianConfiguration {
  CartesianSimplex<Scalar> simplex;
  BarycentricPoint<Scalar> m_bary;
  Vector<Scalar> m_cart;
  Matrix<Scalar> feet_bary; // (n+1) x (n+1), column i = weights of N_i
  Matrix<Scalar> feet_cart; // n x (n+1), column i = N_i
  Vector<Scalar> r;
  Vector<Scalar> s;

  int dim() const { return simplex.dim(); }

  /// Largest distance from M to a line A_i N_i, relative to the longest edge.
  Scalar collinearity_error() const {
    Scalar worst{0};
    const Scalar scale = max_edge_length(simplex.vertices());
    for (int i = 0; i <= dim(); ++i) {
      const Vector<Scalar> dir = feet_cart.col(i) - simplex.vertex(i);
      const Vector<Scalar> rel = m_cart - simplex.vertex(i);
      const Vector<Scalar> off = rel - (rel.dot(dir) / dir.squaredNorm()) * dir;
      worst = std::max<Scalar>(worst, off.norm() / scale);
    }
    return worst;
  }

  /// Largest relative deviation of s_i/r_i from lambda_i/(1 - lambda_i).
  Scalar segment_ratio_error() const {
    using std::abs;
    Scalar worst{0};
    for (int i = 0; i <= dim(); ++i) {
      const Scalar lambda = m_bary[i];
      const Scalar expected = lambda / (Scalar(1) - lambda);
      worst = std::max<Scalar>(worst, abs(s[i] / r[i] - expected) / expected);
    }
    return worst;
  }
};

template <typename Scalar>
CevianConfiguration<Scalar> build_configuration(const CartesianSimplex<Scalar>& simplex,
                                                const BarycentricPoint<Scalar>& m) {
  const int n = simplex.dim();
  if (m.dim() != n)
    throw DimensionMismatch("build_configuration: point of dimension " +
                            std::to_string(m.dim()) + " for a " + std::to_string(n) +
                            "-simplex");
  Matrix<Scalar> feet_bary(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) feet_bary.col(i) = cevian_foot(i, m);

  Vector<Scalar> m_cart = to_cartesian(m, simplex);
  Matrix<Scalar> feet_cart = simplex.vertices() * feet_bary;
  Vector<Scalar> r(n + 1), s(n + 1);
  for (int i = 0; i <= n; ++i) {
    r[i] = (m_cart - simplex.vertex(i)).norm();
    s[i] = (m_cart - feet_cart.col(i)).norm();
  }
  return CevianConfiguration<Scalar>{simplex,           m,           std::move(m_cart),
                                     std::move(feet_bary), std::move(feet_cart), std::move(r),
                                     std::move(s)};
}

/// Cartesian vertices of the cevian simplex N_1..N_{n+1}.
template <typename Scalar>
const Matrix<Scalar>& cevian_simplex_vertices(const CevianConfiguration<Scalar>& c) {
  return c.feet_cart;
}

/// Cartesian vertices of corner sub-simplex k: M and every foot except N_k.
template <typename Scalar>
Matrix<Scalar> corner_simplex_vertices(const CevianConfiguration<Scalar>& c, Eigen::Index k) {
  const int n = c.dim();
  if (k < 0 || k > n)
    throw IndexOutOfRange("corner_simplex_vertices: index " + std::to_string(k));
  Matrix<Scalar> out(n, n + 1);
  out.col(0) = c.m_cart;
  for (Eigen::Index i = 0, col = 1; i <= n; ++i)
    if (i != k) out.col(col++) = c.feet_cart.col(i);
  return out;
}

} // namespace cevian
