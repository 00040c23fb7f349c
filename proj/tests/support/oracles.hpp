#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pivotkit/pivotkit.hpp"

namespace oracles {

using pivotkit::DenseMatrix;
using pivotkit::Index;

inline Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
   Eigen::MatrixXd e(a.rows(), a.cols());
   for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < a.rows(); ++i) e(i, j) = a(i, j);
   return e;
}

/// Supernode as an n x p matrix with A11 expanded to full symmetric form.
inline Eigen::MatrixXd full_supernode(const pivotkit::SupernodeMatrix& m) {
   Eigen::MatrixXd e(m.n(), m.p());
   for (Index j = 0; j < m.p(); ++j)
      for (Index i = 0; i < m.n(); ++i) e(i, j) = i < m.p() ? m.a11(i, j) : m(i, j);
   return e;
}

/**
 * Block elimination of columns [q, q+s) on a full n x p matrix whose top p
 * rows are symmetric: returns the trailing entries a - a_iq D^{-1} a_kq^T for
 * columns k >= q+s, with D inverted by Eigen.
 */
inline Eigen::MatrixXd eliminate(const Eigen::MatrixXd& a, Index q, Index s) {
   Eigen::MatrixXd d = a.block(q, q, s, s);
   Eigen::MatrixXd dinv = d.inverse();
   Eigen::MatrixXd out = a;
   Index p = a.cols();
   for (Index i = 0; i < a.rows(); ++i) {
      if (i >= q && i < q + s) continue;
      Eigen::RowVectorXd li = a.block(i, q, 1, s) * dinv;
      for (Index k = q + s; k < p; ++k) out(i, k) = a(i, k) - li.dot(a.row(k).segment(q, s));
      out.block(i, q, 1, s) = li;
   }
   return out;
}

/// Abstract operations of one 2x2 pivot step i (1-based) on an n x p supernode.
inline std::int64_t itemized_pivot_ops(std::int64_t n, std::int64_t p, std::int64_t i) {
   return 2 * (n - 2 * i - 1) + 18 + 4 * (n - 2 * i) + (p - 2 * i) * (2 * n - p - 2 * i + 1);
}

inline std::int64_t itemized_tpp_ops(std::int64_t n, std::int64_t p) {
   std::int64_t total = 0;
   for (std::int64_t i = 1; i <= p / 2; ++i) total += itemized_pivot_ops(n, p, i);
   return total;
}

/// Column max by sorting (value descending, row ascending).
inline std::pair<double, Index> sorted_column_max(const std::vector<double>& v) {
   std::vector<std::pair<double, Index>> e;
   for (Index i = 0; i < Index(v.size()); ++i) e.emplace_back(std::fabs(v[i]), i);
   std::sort(e.begin(), e.end(), [](auto const& a, auto const& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
   });
   return e.front();
}

} // namespace oracles
