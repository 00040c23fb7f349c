#include "pivotkit/dense.hpp"

#include <algorithm>
#include <cmath>

namespace pivotkit {

DenseMatrix::DenseMatrix(Index rows, Index cols, double fill)
   : rows_(rows), cols_(cols) {
   if (rows < 0 || cols < 0)
      throw DimensionError("negative matrix dimension");
   data_.assign(size_t(rows * cols), fill);
}

DenseMatrix::DenseMatrix(Index rows, Index cols, std::vector<double> values)
   : rows_(rows), cols_(cols), data_(std::move(values)) {
   if (rows < 0 || cols < 0 || Index(data_.size()) != rows * cols)
      throw DimensionError("value count does not match matrix dimensions");
}

DenseMatrix DenseMatrix::from_rows(
      std::initializer_list<std::initializer_list<double>> rows) {
   Index m = Index(rows.size());
   Index n = m ? Index(rows.begin()->size()) : 0;
   DenseMatrix a(m, n);
   Index i = 0;
   for (auto const& row : rows) {
      if (Index(row.size()) != n)
         throw DimensionError("ragged row literal");
      Index j = 0;
      for (double v : row) a(i, j++) = v;
      ++i;
   }
   return a;
}

DenseMatrix DenseMatrix::identity(Index n) {
   DenseMatrix a(n, n);
   for (Index i = 0; i < n; ++i) a(i, i) = 1.0;
   return a;
}

DenseMatrix DenseMatrix::transpose() const {
   DenseMatrix t(cols_, rows_);
   for (Index j = 0; j < cols_; ++j)
      for (Index i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
   return t;
}

DenseMatrix DenseMatrix::block(Index r0, Index r1, Index c0, Index c1) const {
   if (r0 < 0 || r1 > rows_ || r0 > r1 || c0 < 0 || c1 > cols_ || c0 > c1)
      throw DimensionError("block out of range");
   DenseMatrix b(r1 - r0, c1 - c0);
   for (Index j = c0; j < c1; ++j)
      for (Index i = r0; i < r1; ++i) b(i - r0, j - c0) = (*this)(i, j);
   return b;
}

double max_abs(const DenseMatrix& a) {
   double m = 0.0;
   for (double v : a.values()) m = std::max(m, std::fabs(v));
   return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
   if (a.cols() != b.rows())
      throw DimensionError("multiply: inner dimensions differ");
   DenseMatrix c(a.rows(), b.cols());
   for (Index j = 0; j < b.cols(); ++j)
      for (Index k = 0; k < a.cols(); ++k) {
         double bkj = b(k, j);
         if (bkj == 0.0) continue;
         for (Index i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
      }
   return c;
}

double norm_inf(const DenseMatrix& a) {
   std::vector<double> rowsum(size_t(a.rows()), 0.0);
   for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < a.rows(); ++i) rowsum[i] += std::fabs(a(i, j));
   double m = 0.0;
   for (double s : rowsum) m = std::max(m, s);
   return m;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
   if (Index(x.size()) != a.cols())
      throw DimensionError("multiply: vector length differs");
   std::vector<double> y(size_t(a.rows()), 0.0);
   for (Index j = 0; j < a.cols(); ++j) {
      double xj = x[j];
      for (Index i = 0; i < a.rows(); ++i) y[i] += a(i, j) * xj;
   }
   return y;
}

} // namespace pivotkit
