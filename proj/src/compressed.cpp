#include "pivotkit/compressed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pivotkit {

DenseMatrix CompressedMatrix::stacked_rows() const {
   Index np = p();
   DenseMatrix s(np, np);
   for (Index j = 0; j < np; ++j)
      for (Index i = 0; i < std::min(r(), np); ++i) s(i, j) = rows(i, j);
   return s;
}

CompressedMatrix build_strict(const DenseMatrix& a21, Index first_row) {
   Index p = a21.cols();
   CompressedMatrix c;
   c.mode = CompressionMode::Strict;
   c.rows = DenseMatrix(p, p);
   c.partition.assign(size_t(p), {});
   for (Index i = 0; i < a21.rows(); ++i) {
      Index jmax = 0;
      double vmax = std::fabs(a21(i, 0));
      for (Index k = 1; k < p; ++k)
         if (std::fabs(a21(i, k)) > vmax) {
            vmax = std::fabs(a21(i, k));
            jmax = k;
         }
      c.partition[jmax].push_back(first_row + i);
      for (Index k = 0; k < p; ++k)
         c.rows(jmax, k) = std::max(c.rows(jmax, k), std::fabs(a21(i, k)));
   }
   return c;
}

CompressedMatrix select_relaxed(const DenseMatrix& candidates, std::span<const Index> provenance) {
   Index n = candidates.rows();
   Index p = candidates.cols();
   if (Index(provenance.size()) != n)
      throw DimensionError("provenance must name every candidate row");
   std::vector<bool> flagged(size_t(n), false);
   std::vector<Index> picked;
   for (Index j = 0; j < p && Index(picked.size()) < n; ++j) {
      Index best = -1;
      double vbest = 0.0;
      for (Index i = 0; i < n; ++i) {
         if (flagged[i]) continue;
         double v = std::fabs(candidates(i, j));
         if (best < 0 || v > vbest) {
            best = i;
            vbest = v;
         }
      }
      flagged[best] = true;
      picked.push_back(best);
   }
   CompressedMatrix c;
   c.mode = CompressionMode::Relaxed;
   c.rows = DenseMatrix(Index(picked.size()), p);
   for (Index r = 0; r < Index(picked.size()); ++r) {
      for (Index k = 0; k < p; ++k) c.rows(r, k) = candidates(picked[r], k);
      c.source_rows.push_back(provenance[picked[r]]);
   }
   return c;
}

CompressedMatrix build_relaxed(const DenseMatrix& a21, Index first_row) {
   std::vector<Index> ids(size_t(a21.rows()));
   std::iota(ids.begin(), ids.end(), first_row);
   return select_relaxed(a21, ids);
}

void update_strict_c(DenseMatrix& c, const PivotStep& step) {
   std::vector<double> row(size_t(c.cols()));
   for (Index i = 0; i < c.rows(); ++i) {
      for (Index k = 0; k < c.cols(); ++k) row[k] = c(i, k);
      apply_step_to_row(row, step, RowRule::Absolute, c.cols());
      for (Index k = 0; k < c.cols(); ++k) c(i, k) = row[k];
   }
}

DenseMatrix apply_pivot_sequence(const detail::PivotLog& log, const DenseMatrix& rows) {
   DenseMatrix out = rows;
   std::vector<double> row(size_t(rows.cols()));
   for (Index i = 0; i < rows.rows(); ++i) {
      for (Index k = 0; k < rows.cols(); ++k) row[k] = rows(i, k);
      detail::replay(log, row);
      for (Index k = 0; k < rows.cols(); ++k) out(i, k) = row[k];
   }
   return out;
}

CompressedFactorization factor_with_compressed(const SupernodeMatrix& m, CompressedMatrix c,
      const PivotParams& params, const CompressedOptions& options) {
   params.validate();
   m.require_finite();
   if (c.p() != m.p())
      throw DimensionError("compressed matrix width differs from the supernode");
   Index p = m.p();
   DenseMatrix a21 = m.a21_block();

   WorkingMatrix w(p, true);
   w.set_a11(m);
   w.set_test_rows(c.stacked_rows(),
         c.mode == CompressionMode::Strict ? RowRule::Absolute : RowRule::Signed);
   bool shadow = options.track_growth || options.record_trace;
   if (shadow) w.set_shadow_rows(a21);

   CompressedFactorization out;
   detail::EngineOptions eo;
   eo.test_rows_are_true = false;
   eo.track_growth = options.track_growth;
   eo.record_log = true;
   if (options.record_trace) {
      out.trace.emplace();
      eo.on_step = [&out](Index, const std::vector<WorkingMatrix>& procs) {
         out.trace->a21.push_back(procs.front().shadow_matrix());
         out.trace->c.push_back(procs.front().test_matrix());
      };
   }
   detail::PivotEngine engine({std::move(w)}, detail::Layout::Owner, params, std::move(eo));
   detail::EngineResult r = engine.run();

   DenseMatrix l21 = apply_pivot_sequence(r.log, a21);
   out.factors = detail::assemble(r, detail::extract_l11(engine.root(), r.pivots, r.nelim), l21);
   out.growth = std::move(r.growth);
   out.stats = r.stats;
   out.compressed = std::move(c);
   out.log = std::move(r.log);
   return out;
}

CompressedFactorization factor_compressed(const SupernodeMatrix& m, CompressionMode mode,
      const PivotParams& params, const CompressedOptions& options) {
   DenseMatrix a21 = m.a21_block();
   CompressedMatrix c = mode == CompressionMode::Strict ? build_strict(a21) : build_relaxed(a21);
   return factor_with_compressed(m, std::move(c), params, options);
}

DominanceResult check_dominance(const CompressedTrace& trace, const CompressedMatrix& c) {
   constexpr double slack = 1.0 + 1e-12;
   DominanceResult res;
   auto fail = [&](Index s, Index i, Index k) {
      res.holds = false;
      res.first_violation = s;
      res.row = i;
      res.col = k;
   };
   for (Index s = 0; s < Index(trace.a21.size()) && res.holds; ++s) {
      const DenseMatrix& a = trace.a21[s];
      const DenseMatrix& cs = trace.c[s];
      if (c.mode == CompressionMode::Strict) {
         for (Index j = 0; j < Index(c.partition.size()) && res.holds; ++j)
            for (Index i : c.partition[j])
               for (Index k = 0; k < a.cols() && res.holds; ++k)
                  if (std::fabs(a(i, k)) > cs(j, k) * slack) fail(s, i, k);
      } else {
         for (Index k = 0; k < a.cols() && res.holds; ++k) {
            double cmax = 0.0;
            for (Index j = 0; j < cs.rows(); ++j) cmax = std::max(cmax, std::fabs(cs(j, k)));
            for (Index i = 0; i < a.rows() && res.holds; ++i)
               if (std::fabs(a(i, k)) > cmax * slack) fail(s, i, k);
         }
      }
   }
   return res;
}

} // namespace pivotkit
