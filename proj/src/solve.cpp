#include "pivotkit/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pivotkit/compressed.hpp"
#include "pivotkit/restricted.hpp"

namespace pivotkit {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
   return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void apply_dinv(const std::vector<PivotBlock>& pivots, std::span<double> y, double small) {
   for (auto const& b : pivots) {
      Index q = b.position;
      switch (b.kind) {
      case PivotKind::Zero: y[q] = 0.0; break;
      case PivotKind::OneByOne: y[q] /= b.d11; break;
      case PivotKind::TwoByTwo: {
         Inverse2x2 inv = invert_2x2(determinant_guard(b.d11, b.d21, b.d22, small), b.d11, b.d21, b.d22);
         double y0 = y[q];
         double y1 = y[q + 1];
         y[q] = y0 * inv.i11 + y1 * inv.i21;
         y[q + 1] = y0 * inv.i21 + y1 * inv.i22;
         break;
      }
      }
   }
}

/// Solve with a square partial factorization; uneliminated positions get 0.
std::vector<double> square_solve(const PartialFactorization& f, std::span<const double> rhs,
      double small) {
   Index n = f.n;
   Index k = f.nelim;
   std::vector<double> y(static_cast<size_t>(n));
   for (Index i = 0; i < n; ++i) y[i] = rhs[f.perm[i]];
   for (Index c = 0; c < k; ++c) {
      double yc = y[c];
      if (yc == 0.0) continue;
      for (Index i = c + 1; i < n; ++i) y[i] -= f.L(i, c) * yc;
   }
   apply_dinv(f.pivots, std::span<double>(y).first(size_t(k)), small);
   std::fill(y.begin() + k, y.end(), 0.0);
   for (Index j = k - 1; j >= 0; --j) {
      double acc = y[j];
      for (Index i = j + 1; i < n; ++i) acc -= f.L(i, j) * y[i];
      y[j] = acc;
   }
   std::vector<double> x(static_cast<size_t>(n));
   for (Index i = 0; i < n; ++i) x[f.perm[i]] = y[i];
   return x;
}

/** Supernode factors plus a threshold-pivoted root holding everything left over. */
class TwoLevelFactors {
public:
   TwoLevelFactors(const DenseMatrix& a, Factorization sn, const PivotParams& params)
      : sn_(std::move(sn.factors)), small_(params.small) {
      n_ = a.rows();
      Index p = sn_.p;
      Index k = sn_.nelim;
      for (Index i = k; i < p; ++i) {
         rest_.push_back(sn_.perm[i]);
         lrow_.push_back(i);
      }
      for (Index g = p; g < n_; ++g) {
         rest_.push_back(g);
         lrow_.push_back(g);
      }
      Index nr = Index(rest_.size());
      if (nr == 0) return;
      DenseMatrix lr(nr, k);
      for (Index i = 0; i < nr; ++i)
         for (Index c = 0; c < k; ++c) lr(i, c) = sn_.L(lrow_[i], c);
      DenseMatrix s = form_schur(lr, sn_.pivots);
      DenseMatrix root(nr, nr);
      for (Index j = 0; j < nr; ++j)
         for (Index i = 0; i < nr; ++i) root(i, j) = a(rest_[i], rest_[j]) - s(i, j);
      root_ = factor_tpp(SupernodeMatrix(std::move(root)), params).factors;
   }

   /// Root columns eliminated with a nonzero pivot.
   Index root_nelim() const { return root_.nelim - root_.zero_pivots(); }
   /// Root columns whose solution component is set to zero.
   Index forced_zero() const { return Index(rest_.size()) - root_nelim(); }

   std::vector<double> solve(std::span<const double> r) const {
      Index k = sn_.nelim;
      Index nr = Index(rest_.size());
      std::vector<double> y(static_cast<size_t>(k));
      for (Index j = 0; j < k; ++j) y[j] = r[sn_.perm[j]];
      for (Index c = 0; c < k; ++c)
         for (Index j = c + 1; j < k; ++j) y[j] -= sn_.L(j, c) * y[c];
      std::vector<double> rr(static_cast<size_t>(nr));
      for (Index i = 0; i < nr; ++i) {
         double acc = r[rest_[i]];
         for (Index c = 0; c < k; ++c) acc -= sn_.L(lrow_[i], c) * y[c];
         rr[i] = acc;
      }
      std::vector<double> xr = nr ? square_solve(root_, rr, small_) : std::vector<double>{};
      apply_dinv(sn_.pivots, y, small_);
      for (Index c = 0; c < k; ++c) {
         double acc = y[c];
         for (Index i = 0; i < nr; ++i) acc -= sn_.L(lrow_[i], c) * xr[i];
         y[c] = acc;
      }
      for (Index j = k - 1; j >= 0; --j) {
         double acc = y[j];
         for (Index i = j + 1; i < k; ++i) acc -= sn_.L(i, j) * y[i];
         y[j] = acc;
      }
      std::vector<double> x(static_cast<size_t>(n_));
      for (Index j = 0; j < k; ++j) x[sn_.perm[j]] = y[j];
      for (Index i = 0; i < nr; ++i) x[rest_[i]] = xr[i];
      return x;
   }

private:
   PartialFactorization sn_;
   PartialFactorization root_;
   std::vector<Index> rest_;
   std::vector<Index> lrow_;
   Index n_ = 0;
   double small_;
};

} // namespace

std::string to_string(Method m) {
   switch (m) {
   case Method::Tpp: return "tpp";
   case Method::Strict: return "strict";
   case Method::Relaxed: return "relaxed";
   case Method::Restricted: return "restricted";
   }
   return "unknown";
}

Method parse_method(std::string_view name) {
   for (Method m : {Method::Tpp, Method::Strict, Method::Relaxed, Method::Restricted})
      if (to_string(m) == name) return m;
   throw DimensionError("unknown method: " + std::string(name));
}

Factorization factor(const SupernodeMatrix& m, Method method, const PivotParams& params) {
   switch (method) {
   case Method::Tpp: return factor_tpp(m, params);
   case Method::Strict: return factor_compressed(m, CompressionMode::Strict, params);
   case Method::Relaxed: return factor_compressed(m, CompressionMode::Relaxed, params);
   case Method::Restricted: return factor_restricted(m, params);
   }
   throw DimensionError("unknown method");
}

double backward_error(const DenseMatrix& a, std::span<const double> x, std::span<const double> b) {
   if (a.rows() != a.cols() || Index(x.size()) != a.cols() || Index(b.size()) != a.rows())
      throw DimensionError("backward_error: inconsistent dimensions");
   std::vector<double> ax = multiply(a, x);
   double num = 0.0;
   double xn = 0.0;
   double bn = 0.0;
   for (size_t i = 0; i < ax.size(); ++i) {
      num = std::max(num, std::fabs(ax[i] - b[i]));
      bn = std::max(bn, std::fabs(b[i]));
      xn = std::max(xn, std::fabs(x[i]));
   }
   double den = norm_inf(a) * xn + bn;
   if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
   return num / den;
}

SolveReport solve_with_refinement(const DenseMatrix& a, std::span<const double> b, Method method,
      const PivotParams& params, const SolveOptions& options) {
   Index n = a.rows();
   if (a.cols() != n || Index(b.size()) != n || n < 1)
      throw DimensionError("solve needs a square system and a matching right-hand side");
   for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
         if (a(i, j) != a(j, i))
            throw DimensionError("system matrix is not symmetric");

   std::vector<double> scale(size_t(n), 1.0);
   if (options.equilibrate)
      for (Index i = 0; i < n; ++i) {
         double m = 0.0;
         for (Index j = 0; j < n; ++j) m = std::max(m, std::fabs(a(i, j)));
         if (m > 0.0) scale[i] = 1.0 / std::sqrt(m);
      }
   DenseMatrix as(n, n);
   for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) as(i, j) = scale[i] * a(i, j) * scale[j];

   SolveReport rep;
   rep.method = to_string(method);
   rep.n = n;
   rep.p = std::min(options.p, n);

   auto t0 = Clock::now();
   Factorization sn = factor(SupernodeMatrix::from_symmetric(as, rep.p), method, params);
   rep.nelim = sn.factors.nelim;
   rep.delayed = rep.p - rep.nelim;
   rep.growth = sn.growth.growth();
   rep.max_abs_l = sn.factors.max_abs_l();
   TwoLevelFactors factors(as, std::move(sn), params);
   rep.root_nelim = factors.root_nelim();
   rep.zero_pivots = factors.forced_zero();
   rep.factor_ms = ms_since(t0);

   t0 = Clock::now();
   auto solve_scaled = [&](std::span<const double> r) {
      std::vector<double> rs(static_cast<size_t>(n));
      for (Index i = 0; i < n; ++i) rs[i] = scale[i] * r[i];
      std::vector<double> xs = factors.solve(rs);
      for (Index i = 0; i < n; ++i) xs[i] *= scale[i];
      return xs;
   };
   std::vector<double> x = solve_scaled(b);
   rep.bwd_err.push_back(backward_error(a, x, b));
   for (Index step = 0; step < options.max_steps && !(rep.bwd_err.back() < options.target); ++step) {
      std::vector<double> ax = multiply(a, x);
      std::vector<double> r(static_cast<size_t>(n));
      for (Index i = 0; i < n; ++i) r[i] = b[i] - ax[i];
      std::vector<double> dx = solve_scaled(r);
      for (Index i = 0; i < n; ++i) x[i] += dx[i];
      rep.bwd_err.push_back(backward_error(a, x, b));
   }
   rep.solve_ms = ms_since(t0);
   rep.converged = rep.bwd_err.back() < options.target;
   rep.x = std::move(x);
   return rep;
}

} // namespace pivotkit
