#include "pivotkit/supernode.hpp"

#include <algorithm>
#include <cmath>

namespace pivotkit {

void PivotParams::validate() const {
   if (!(u > 0.0 && u <= 0.5))
      throw DimensionError("threshold u must lie in (0, 0.5]");
   if (!(small > 0.0))
      throw DimensionError("drop tolerance small must be positive");
}

SupernodeMatrix::SupernodeMatrix(Index n, Index p) : values_(n, p) {
   if (p < 1 || n < p)
      throw DimensionError("supernode requires n >= p >= 1");
}

SupernodeMatrix::SupernodeMatrix(DenseMatrix values) : values_(std::move(values)) {
   if (values_.cols() < 1 || values_.rows() < values_.cols())
      throw DimensionError("supernode requires n >= p >= 1");
}

SupernodeMatrix SupernodeMatrix::from_blocks(const DenseMatrix& a11, const DenseMatrix& a21) {
   Index p = a11.rows();
   if (a11.cols() != p || (a21.rows() > 0 && a21.cols() != p))
      throw DimensionError("A11 must be p x p and A21 must have p columns");
   SupernodeMatrix m(p + a21.rows(), p);
   for (Index j = 0; j < p; ++j) {
      for (Index i = 0; i < p; ++i) m(i, j) = a11(i, j);
      for (Index i = 0; i < a21.rows(); ++i) m(p + i, j) = a21(i, j);
   }
   return m;
}

SupernodeMatrix SupernodeMatrix::from_symmetric(const DenseMatrix& a, Index p) {
   if (a.rows() != a.cols())
      throw DimensionError("system matrix must be square");
   if (p < 1 || p > a.rows())
      throw DimensionError("supernode width out of range");
   return SupernodeMatrix(a.block(0, a.rows(), 0, p));
}

DenseMatrix SupernodeMatrix::a11_block() const {
   DenseMatrix b(p(), p());
   for (Index j = 0; j < p(); ++j)
      for (Index i = 0; i < p(); ++i) b(i, j) = a11(i, j);
   return b;
}

DenseMatrix SupernodeMatrix::a21_block() const {
   return values_.block(p(), n(), 0, p());
}

double SupernodeMatrix::max_abs_entry() const {
   double m = 0.0;
   for (Index j = 0; j < p(); ++j)
      for (Index i = j; i < n(); ++i) m = std::max(m, std::fabs(values_(i, j)));
   return m;
}

void SupernodeMatrix::require_finite() const {
   for (Index j = 0; j < p(); ++j)
      for (Index i = j; i < n(); ++i)
         if (!std::isfinite(values_(i, j)))
            throw NumericalError("supernode contains a non-finite value");
}

std::string to_string(PivotKind kind) {
   switch (kind) {
   case PivotKind::OneByOne: return "1x1";
   case PivotKind::TwoByTwo: return "2x2";
   case PivotKind::Zero: return "zero";
   }
   return "unknown";
}

DenseMatrix PartialFactorization::d_matrix() const {
   DenseMatrix d(nelim, nelim);
   for (auto const& b : pivots) {
      Index q = b.position;
      d(q, q) = b.d11;
      if (b.kind == PivotKind::TwoByTwo) {
         d(q + 1, q) = b.d21;
         d(q, q + 1) = b.d21;
         d(q + 1, q + 1) = b.d22;
      }
   }
   return d;
}

DenseMatrix PartialFactorization::trailing_rows() const {
   return L.block(nelim, n, 0, nelim);
}

double PartialFactorization::max_abs_l() const { return max_abs(L); }

Index PartialFactorization::zero_pivots() const {
   return Index(std::count_if(pivots.begin(), pivots.end(),
         [](PivotBlock const& b) { return b.kind == PivotKind::Zero; }));
}

double GrowthTrace::max_mu() const {
   double m = 0.0;
   for (double v : mu) m = std::max(m, v);
   return m;
}

double GrowthTrace::growth() const {
   if (mu.empty() || mu.front() == 0.0) return 1.0;
   return max_mu() / mu.front();
}

DeterminantGuard determinant_guard(double a_tt, double a_tm, double a_mm, double small) {
   DeterminantGuard g;
   double big = std::max({std::fabs(a_tt), std::fabs(a_tm), std::fabs(a_mm)});
   if (big < small) return g;
   g.detscale = 1.0 / big;
   g.detpiv1 = (a_tm * g.detscale) * a_tm;
   g.detpiv0 = a_mm * g.detscale * a_tt;
   g.detpiv = g.detpiv0 - g.detpiv1;
   g.passed = std::fabs(g.detpiv) >
         std::max({small, std::fabs(g.detpiv0) / 2, std::fabs(g.detpiv1) / 2});
   return g;
}

Inverse2x2 invert_2x2(const DeterminantGuard& g, double a_tt, double a_tm, double a_mm) {
   if (!g.passed)
      throw NumericalError("2x2 pivot fails the determinant guard");
   Inverse2x2 inv;
   inv.i11 = (a_mm * g.detscale) / g.detpiv;
   inv.i21 = (-a_tm * g.detscale) / g.detpiv;
   inv.i22 = (a_tt * g.detscale) / g.detpiv;
   return inv;
}

DenseMatrix form_schur(const DenseMatrix& L, std::span<const PivotBlock> pivots) {
   Index m = L.rows();
   Index k = L.cols();
   Index covered = 0;
   for (auto const& b : pivots) {
      if (b.position != covered)
         throw DimensionError("pivot blocks must tile the eliminated columns in order");
      covered += b.size();
   }
   if (covered != k)
      throw DimensionError("pivot blocks do not match the columns of L");

   // W = L D
   DenseMatrix w(m, k);
   for (auto const& b : pivots) {
      Index q = b.position;
      if (b.kind == PivotKind::TwoByTwo) {
         for (Index i = 0; i < m; ++i) {
            w(i, q) = L(i, q) * b.d11 + L(i, q + 1) * b.d21;
            w(i, q + 1) = L(i, q) * b.d21 + L(i, q + 1) * b.d22;
         }
      } else {
         for (Index i = 0; i < m; ++i) w(i, q) = L(i, q) * b.d11;
      }
   }
   DenseMatrix s(m, m);
   for (Index j = 0; j < m; ++j)
      for (Index i = j; i < m; ++i) {
         double acc = 0.0;
         for (Index c = 0; c < k; ++c) acc += w(i, c) * L(j, c);
         s(i, j) = acc;
         s(j, i) = acc;
      }
   return s;
}

DenseMatrix permute_symmetric(const DenseMatrix& a, std::span<const Index> perm) {
   Index n = a.rows();
   if (a.cols() != n || Index(perm.size()) != n)
      throw DimensionError("permutation size differs from matrix order");
   DenseMatrix b(n, n);
   for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) b(i, j) = a(perm[i], perm[j]);
   return b;
}

double reconstruction_residual(const SupernodeMatrix& a, const PartialFactorization& f) {
   Index n = a.n();
   Index p = a.p();
   Index k = f.nelim;
   if (f.L.rows() != n || f.L.cols() != k || Index(f.perm.size()) != p)
      throw DimensionError("factorization does not match the supernode");
   DenseMatrix d = f.d_matrix();
   DenseMatrix ld = multiply(f.L, d);
   double worst = 0.0;
   for (Index j = 0; j < k; ++j) {
      Index cj = f.perm[j];
      for (Index i = 0; i < n; ++i) {
         double orig = i < p ? a.a11(f.perm[i], cj) : a(i, cj);
         double acc = 0.0;
         for (Index c = 0; c < k; ++c) acc += ld(i, c) * f.L(j, c);
         worst = std::max(worst, std::fabs(orig - acc));
      }
   }
   return worst;
}

} // namespace pivotkit
