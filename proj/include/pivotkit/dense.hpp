#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pivotkit {

using Index = std::ptrdiff_t;

/** Base class for all errors raised by the library. */
class Error : public std::runtime_error {
public:
   using std::runtime_error::runtime_error;
};

/** Inconsistent sizes or out-of-range indices. */
class DimensionError : public Error {
public:
   using Error::Error;
};

/** Non-finite data, zero pivots or failed determinant guards. */
class NumericalError : public Error {
public:
   using Error::Error;
};

/** Dense column-major matrix of doubles. */
class DenseMatrix {
public:
   DenseMatrix() = default;
   DenseMatrix(Index rows, Index cols, double fill = 0.0);
   DenseMatrix(Index rows, Index cols, std::vector<double> values);

   /// Build from a row-by-row literal.
   static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
   static DenseMatrix identity(Index n);

   Index rows() const { return rows_; }
   Index cols() const { return cols_; }
   bool empty() const { return rows_ == 0 || cols_ == 0; }

   double& operator()(Index i, Index j) { return data_[j * rows_ + i]; }
   double operator()(Index i, Index j) const { return data_[j * rows_ + i]; }

   std::span<double> column(Index j) { return {data_.data() + j * rows_, size_t(rows_)}; }
   std::span<const double> column(Index j) const {
      return {data_.data() + j * rows_, size_t(rows_)};
   }
   const std::vector<double>& values() const { return data_; }

   DenseMatrix transpose() const;
   /// Rows [r0, r1) and columns [c0, c1).
   DenseMatrix block(Index r0, Index r1, Index c0, Index c1) const;

   bool operator==(const DenseMatrix&) const = default;

private:
   Index rows_ = 0;
   Index cols_ = 0;
   std::vector<double> data_;
};

double max_abs(const DenseMatrix& a);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
/// Infinity norm (max absolute row sum).
double norm_inf(const DenseMatrix& a);
std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

} // namespace pivotkit
