#pragma once

// Exact dense linear algebra over field scalars held in Eigen containers.
//
// Everything here is templated on the scalar; ModP and FieldElement both qualify. Only
// exact row reduction is used: no pivoting by magnitude, no floating point.

#include <Eigen/Core>
#include <vector>

#include "frobent/field.hpp"
#include "frobent/modp.hpp"

namespace Eigen {

template <>
struct NumTraits<frobent::ModP> : GenericNumTraits<frobent::ModP> {
  using Real = frobent::ModP;
  using NonInteger = frobent::ModP;
  using Literal = frobent::ModP;
  using Nested = frobent::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 3,
  };
};

template <>
struct NumTraits<frobent::FieldElement> : GenericNumTraits<frobent::FieldElement> {
  using Real = frobent::FieldElement;
  using NonInteger = frobent::FieldElement;
  using Literal = frobent::FieldElement;
  using Nested = frobent::FieldElement;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100,
  };
};

}  // namespace Eigen

namespace frobent::linalg {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

template <typename Scalar>
bool is_zero(const Scalar& x) {
  return x.is_zero();
}

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;       ///< reduced row echelon form
  std::vector<Index> pivots;    ///< pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <typename Derived>
Echelon<typename Derived::Scalar> echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> out{input, {}};
  auto& a = out.reduced;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index pivot = -1;
    for (Index r = row; r < a.rows(); ++r) {
      if (!is_zero(a(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    a.row(pivot).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    for (Index c = col; c < a.cols(); ++c) a(row, c) = a(row, c) * inv;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      const Scalar f = a(r, col);
      for (Index c = col; c < a.cols(); ++c) a(r, c) = a(r, c) - f * a(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return static_cast<Index>(echelon(a).pivots.size());
}

/// Columns form a basis of the null space {v : a v = 0}.
template <typename Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Index n = a.cols();
  if (a.rows() == 0) return Matrix<Scalar>::Identity(n, n);
  const auto e = echelon(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix<Scalar> k = Matrix<Scalar>::Zero(n, n - static_cast<Index>(e.pivots.size()));
  Index j = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    k(free, j) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      k(e.pivots[r], j) = -e.reduced(static_cast<Index>(r), free);
    }
    ++j;
  }
  return k;
}

/// Greedy left-to-right maximal independent set of columns.
template <typename Derived>
std::vector<Index> pivot_columns(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  return echelon(a).pivots;
}

/// Indices of columns of `candidates` that extend a basis of span(`base`) to a basis of
/// span(base) + span(candidates).
template <typename D1, typename D2>
std::vector<Index> extend_basis(const Eigen::MatrixBase<D1>& base, const Eigen::MatrixBase<D2>& candidates) {
  using Scalar = typename D1::Scalar;
  Matrix<Scalar> joined(candidates.rows(), base.cols() + candidates.cols());
  joined.leftCols(base.cols()) = base;
  joined.rightCols(candidates.cols()) = candidates;
  std::vector<Index> out;
  for (Index c : pivot_columns(joined)) {
    if (c >= base.cols()) out.push_back(c - base.cols());
  }
  return out;
}

}  // namespace frobent::linalg
