#include "pivotkit/working_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace pivotkit {

PivotStep PivotStep::one_by_one(Index q, double d, std::vector<double> col) {
   if (d == 0.0)
      throw NumericalError("1x1 pivot value is zero");
   PivotStep s;
   s.kind = PivotKind::OneByOne;
   s.position = q;
   s.d11 = d;
   s.col0 = std::move(col);
   return s;
}

PivotStep PivotStep::two_by_two(Index q, double a_tt, double a_tm, double a_mm,
      std::vector<double> col0, std::vector<double> col1, double small) {
   if (col0.size() != col1.size())
      throw DimensionError("2x2 pivot columns differ in length");
   PivotStep s;
   s.kind = PivotKind::TwoByTwo;
   s.position = q;
   s.d11 = a_tt;
   s.d21 = a_tm;
   s.d22 = a_mm;
   s.inv = invert_2x2(determinant_guard(a_tt, a_tm, a_mm, small), a_tt, a_tm, a_mm);
   s.col0 = std::move(col0);
   s.col1 = std::move(col1);
   return s;
}

PivotStep PivotStep::zero(Index q) {
   PivotStep s;
   s.kind = PivotKind::Zero;
   s.position = q;
   return s;
}

void apply_step_to_row(std::span<double> row, const PivotStep& s, RowRule rule, Index col_end) {
   Index q = s.position;
   switch (s.kind) {
   case PivotKind::Zero:
      row[q] = 0.0;
      return;
   case PivotKind::OneByOne: {
      Index first = q + 1;
      if (rule == RowRule::Signed) {
         double l = row[q] / s.d11;
         for (Index k = first; k < col_end; ++k) row[k] -= l * s.col0[k - first];
         row[q] = l;
      } else {
         double lc = row[q] / std::fabs(s.d11);
         for (Index k = first; k < col_end; ++k) row[k] += lc * std::fabs(s.col0[k - first]);
         row[q] = lc;
      }
      return;
   }
   case PivotKind::TwoByTwo: {
      Index first = q + 2;
      double v1 = row[q];
      double v2 = row[q + 1];
      if (rule == RowRule::Signed) {
         double l1 = v1 * s.inv.i11 + v2 * s.inv.i21;
         double l2 = v1 * s.inv.i21 + v2 * s.inv.i22;
         for (Index k = first; k < col_end; ++k)
            row[k] -= l1 * s.col0[k - first] + l2 * s.col1[k - first];
         row[q] = l1;
         row[q + 1] = l2;
      } else {
         double lc1 = v1 * std::fabs(s.inv.i11) + v2 * std::fabs(s.inv.i21);
         double lc2 = v1 * std::fabs(s.inv.i21) + v2 * std::fabs(s.inv.i22);
         for (Index k = first; k < col_end; ++k)
            row[k] += lc1 * std::fabs(s.col0[k - first]) + lc2 * std::fabs(s.col1[k - first]);
         row[q] = lc1;
         row[q + 1] = lc2;
      }
      return;
   }
   }
}

Extremum Extremum::combine(const Extremum& a, const Extremum& b) {
   if (a.row < 0) return b;
   if (b.row < 0) return a;
   if (a.value > b.value) return a;
   if (b.value > a.value) return b;
   return a.row <= b.row ? a : b;
}

WorkingMatrix::WorkingMatrix(Index p, bool owns_a11) : p_(p), owns_a11_(owns_a11) {
   if (p < 1)
      throw DimensionError("working matrix needs at least one column");
   if (owns_a11_) a11_.assign(size_t(p * p), 0.0);
}

WorkingMatrix WorkingMatrix::from_supernode(const SupernodeMatrix& m) {
   WorkingMatrix w(m.p(), true);
   w.set_a11(m);
   w.set_test_rows(m.a21_block(), RowRule::Signed);
   return w;
}

void WorkingMatrix::set_a11(const SupernodeMatrix& m) {
   if (m.p() != p_ || !owns_a11_)
      throw DimensionError("A11 does not fit this working matrix");
   for (Index i = 0; i < p_; ++i)
      for (Index j = 0; j < p_; ++j) a11_[i * p_ + j] = m.a11(i, j);
}

void WorkingMatrix::set_test_rows(const DenseMatrix& rows, RowRule rule, Index offset) {
   if (rows.rows() > 0 && rows.cols() != p_)
      throw DimensionError("test rows must have p columns");
   ntest_ = rows.rows();
   test_rule_ = rule;
   test_offset_ = offset;
   test_.assign(size_t(ntest_ * p_), 0.0);
   for (Index r = 0; r < ntest_; ++r)
      for (Index j = 0; j < p_; ++j) test_[r * p_ + j] = rows(r, j);
}

void WorkingMatrix::set_shadow_rows(const DenseMatrix& rows) {
   if (rows.rows() > 0 && rows.cols() != p_)
      throw DimensionError("shadow rows must have p columns");
   nshadow_ = rows.rows();
   shadow_.assign(size_t(nshadow_ * p_), 0.0);
   for (Index r = 0; r < nshadow_; ++r)
      for (Index j = 0; j < p_; ++j) shadow_[r * p_ + j] = rows(r, j);
}

Extremum WorkingMatrix::column_max_below(Index col, Index start_row,
      std::span<const Index> exclude) const {
   if (col < 0 || col >= p_)
      throw DimensionError("column index out of range");
   auto excluded = [&](Index g) {
      return std::find(exclude.begin(), exclude.end(), g) != exclude.end();
   };
   Extremum best;
   auto offer = [&](double v, Index g) {
      v = std::fabs(v);
      if (best.row < 0 || v > best.value) {
         best.value = v;
         best.row = g;
      }
   };
   if (owns_a11_)
      for (Index i = std::max<Index>(start_row, 0); i < p_; ++i)
         if (!excluded(i)) offer(a11(i, col), i);
   for (Index r = 0; r < ntest_; ++r) {
      Index g = p_ + test_offset_ + r;
      if (g >= start_row && !excluded(g)) offer(test_[r * p_ + col], g);
   }
   return best;
}

void WorkingMatrix::permute_symmetric(Index i, Index j) {
   if (i < 0 || j < 0 || i >= p_ || j >= p_)
      throw DimensionError("permutation index out of range");
   if (i == j) return;
   if (owns_a11_) {
      for (Index k = 0; k < p_; ++k) std::swap(a11_[i * p_ + k], a11_[j * p_ + k]);
      for (Index k = 0; k < p_; ++k) std::swap(a11_[k * p_ + i], a11_[k * p_ + j]);
   }
   for (Index r = 0; r < ntest_; ++r) std::swap(test_[r * p_ + i], test_[r * p_ + j]);
   for (Index r = 0; r < nshadow_; ++r) std::swap(shadow_[r * p_ + i], shadow_[r * p_ + j]);
}

PivotStep WorkingMatrix::make_step_1x1(Index q) const {
   if (!owns_a11_)
      throw DimensionError("pivot step requires the A11 block");
   std::vector<double> col;
   for (Index k = q + 1; k < p_; ++k) col.push_back(a11(k, q));
   return PivotStep::one_by_one(q, a11(q, q), std::move(col));
}

PivotStep WorkingMatrix::make_step_2x2(Index q, double small) const {
   if (!owns_a11_)
      throw DimensionError("pivot step requires the A11 block");
   if (q + 1 >= p_)
      throw DimensionError("2x2 pivot needs two columns");
   std::vector<double> c0, c1;
   for (Index k = q + 2; k < p_; ++k) {
      c0.push_back(a11(k, q));
      c1.push_back(a11(k, q + 1));
   }
   return PivotStep::two_by_two(q, a11(q, q), a11(q + 1, q), a11(q + 1, q + 1),
         std::move(c0), std::move(c1), small);
}

void WorkingMatrix::apply(const PivotStep& s) {
   Index q = s.position;
   if (owns_a11_) {
      for (Index i = q + s.size(); i < p_; ++i) {
         std::span<double> row(a11_.data() + i * p_, size_t(p_));
         apply_step_to_row(row, s, RowRule::Signed, i + 1);
         for (Index k = q; k < i; ++k) a11_[k * p_ + i] = row[k];
      }
   }
   for (Index r = 0; r < ntest_; ++r)
      apply_step_to_row({test_.data() + r * p_, size_t(p_)}, s, test_rule_, p_);
   for (Index r = 0; r < nshadow_; ++r)
      apply_step_to_row({shadow_.data() + r * p_, size_t(p_)}, s, RowRule::Signed, p_);
}

void WorkingMatrix::apply_1x1_pivot(Index q) { apply(make_step_1x1(q)); }

void WorkingMatrix::apply_2x2_pivot(Index q, double small) { apply(make_step_2x2(q, small)); }

double WorkingMatrix::active_max(Index from, bool include_a11, bool include_test,
      bool include_shadow) const {
   double m = 0.0;
   if (owns_a11_ && include_a11)
      for (Index i = from; i < p_; ++i)
         for (Index j = from; j <= i; ++j) m = std::max(m, std::fabs(a11_[i * p_ + j]));
   if (include_test)
      for (Index r = 0; r < ntest_; ++r)
         for (Index j = from; j < p_; ++j) m = std::max(m, std::fabs(test_[r * p_ + j]));
   if (include_shadow)
      for (Index r = 0; r < nshadow_; ++r)
         for (Index j = from; j < p_; ++j) m = std::max(m, std::fabs(shadow_[r * p_ + j]));
   return m;
}

DenseMatrix WorkingMatrix::a11_matrix() const {
   DenseMatrix a(owns_a11_ ? p_ : 0, owns_a11_ ? p_ : 0);
   if (owns_a11_)
      for (Index i = 0; i < p_; ++i)
         for (Index j = 0; j < p_; ++j) a(i, j) = a11_[i * p_ + j];
   return a;
}

DenseMatrix WorkingMatrix::test_matrix() const {
   DenseMatrix a(ntest_, p_);
   for (Index r = 0; r < ntest_; ++r)
      for (Index j = 0; j < p_; ++j) a(r, j) = test_[r * p_ + j];
   return a;
}

DenseMatrix WorkingMatrix::shadow_matrix() const {
   DenseMatrix a(nshadow_, p_);
   for (Index r = 0; r < nshadow_; ++r)
      for (Index j = 0; j < p_; ++j) a(r, j) = shadow_[r * p_ + j];
   return a;
}

bool WorkingMatrix::a11_symmetric() const {
   for (Index i = 0; i < p_ && owns_a11_; ++i)
      for (Index j = 0; j < i; ++j)
         if (a11_[i * p_ + j] != a11_[j * p_ + i]) return false;
   return true;
}

} // namespace pivotkit
