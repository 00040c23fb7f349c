#include "pivotkit/detail/engine.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include "pivotkit/detail/tree.hpp"
#include "pivotkit/tpp.hpp"

namespace pivotkit::detail {

void replay(const PivotLog& log, std::span<double> row) {
   for (auto const& ev : log) {
      if (auto const* sw = std::get_if<SwapEvent>(&ev)) {
         std::swap(row[sw->i], row[sw->j]);
      } else {
         apply_step_to_row(row, std::get<PivotStep>(ev), RowRule::Signed, Index(row.size()));
      }
   }
}

PivotEngine::PivotEngine(std::vector<WorkingMatrix> procs, Layout layout, PivotParams params,
      EngineOptions options)
   : procs_(std::move(procs)), layout_(layout), params_(params), opt_(std::move(options)) {
   params_.validate();
   if (procs_.empty() || !procs_.front().owns_a11())
      throw DimensionError("processor 0 must hold A11");
   p_ = procs_.front().p();
   for (auto const& w : procs_) {
      if (w.p() != p_)
         throw DimensionError("processors disagree on the column count");
      if (layout_ == Layout::Replicated && !w.owns_a11())
         throw DimensionError("replicated layout needs A11 on every processor");
      ntest_ += w.test_rows();
   }
}

Extremum PivotEngine::column_max(Index col, Index start, std::span<const Index> exclude) const {
   std::vector<Extremum> local;
   local.reserve(procs_.size());
   for (auto const& w : procs_) local.push_back(w.column_max_below(col, start, exclude));
   return tree_reduce(std::move(local), Extremum::combine);
}

void PivotEngine::swap(Index i, Index j) {
   if (i == j) return;
   for (auto& w : procs_) w.permute_symmetric(i, j);
   std::swap(result_.perm[i], result_.perm[j]);
   if (opt_.record_log) result_.log.push_back(SwapEvent{i, j});
}

void PivotEngine::apply(const PivotStep& step) {
   for (auto& w : procs_) w.apply(step);
}

PivotContext PivotEngine::context(Index m, Index t) const {
   PivotContext c;
   c.nelim = nelim_;
   c.m = m;
   c.t = t;
   c.cols = p_ - nelim_;
   c.rows = c.cols + ntest_;
   return c;
}

double PivotEngine::measure() const {
   // A11 replicas duplicate processor 0, so only its copy is scanned
   double mu = 0.0;
   for (size_t k = 0; k < procs_.size(); ++k)
      mu = std::max(mu, procs_[k].active_max(nelim_, k == 0, opt_.test_rows_are_true, true));
   return mu;
}

void PivotEngine::record(const PivotStep& step) {
   PivotBlock b;
   b.kind = step.kind;
   b.position = nelim_;
   b.columns[0] = result_.perm[nelim_];
   if (step.kind == PivotKind::TwoByTwo) b.columns[1] = result_.perm[nelim_ + 1];
   b.d11 = step.d11;
   b.d21 = step.d21;
   b.d22 = step.d22;
   result_.pivots.push_back(b);
   switch (step.kind) {
   case PivotKind::OneByOne: ++result_.stats.accepted_1x1; break;
   case PivotKind::TwoByTwo: ++result_.stats.accepted_2x2; break;
   case PivotKind::Zero: ++result_.stats.zero_pivots; break;
   }
   if (opt_.record_log) result_.log.push_back(step);
   nelim_ += step.size();
   if (opt_.track_growth) {
      result_.growth.mu.push_back(measure());
      result_.growth.steps.push_back(step.kind);
   }
   if (opt_.on_step) opt_.on_step(Index(result_.pivots.size()), procs_);
}

EngineResult PivotEngine::run() {
   result_ = EngineResult{};
   nelim_ = 0;
   result_.perm.resize(size_t(p_));
   std::iota(result_.perm.begin(), result_.perm.end(), Index(0));
   if (opt_.track_growth) result_.growth.mu.push_back(measure());
   if (opt_.on_step) opt_.on_step(0, procs_);

   const double small = params_.small;
   PivotEventSink* sink = opt_.sink;
   Index m = 0;
   Index idle = 0;       // candidates visited since the last elimination
   Index pair_at = -1;   // nelim at which the leading pair was last tested

   while (nelim_ < p_ && idle < p_ - nelim_) {
      if (m >= p_) m = nelim_;
      const Index front = nelim_;
      const WorkingMatrix& a = procs_.front();

      if (column_max(m, nelim_, {}).value < small) {
         PivotContext ctx = context(m, -1);
         swap(m, nelim_);
         PivotStep step = PivotStep::zero(nelim_);
         if (sink) sink->on_pivot(PivotKind::Zero, ctx);
         apply(step);
         record(step);
         m = (m == front) ? nelim_ : m + 1;
         idle = 0;
         continue;
      }

      Index t = -1;
      Index s = -1;
      if (m == front) {
         if (m + 1 < p_) {
            t = m;
            s = m + 1;
         }
      } else if (!(m == front + 1 && pair_at == nelim_)) {
         t = front;
         double best = std::fabs(a.a11(m, front));
         for (Index j = front + 1; j < m; ++j) {
            double v = std::fabs(a.a11(m, j));
            if (v > best) {
               best = v;
               t = j;
            }
         }
         if (sink && m - front > 1) sink->on_partner_search(context(m, t), m - front);
         s = m;
      }

      if (t >= 0) {
         std::array<Index, 2> ex{t, s};
         double maxt = column_max(t, nelim_, ex).value;
         double maxs = column_max(s, nelim_, ex).value;
         bool ok = test_2x2(a.a11(t, t), a.a11(s, t), a.a11(s, s), maxs, maxt, params_);
         PivotContext ctx = context(m, t);
         if (sink) sink->on_test_2x2(ctx, ok);
         if (m == front) pair_at = nelim_;
         if (ok) {
            swap(t, nelim_);
            swap(s, nelim_ + 1);
            PivotStep step = procs_.front().make_step_2x2(nelim_, small);
            if (sink) sink->on_pivot(PivotKind::TwoByTwo, ctx);
            apply(step);
            record(step);
            m = (m == front) ? nelim_ : m + 1;
            idle = 0;
            continue;
         }
         ++result_.stats.rejected_2x2;
      }

      std::array<Index, 1> ex{m};
      double maxm = column_max(m, nelim_, ex).value;
      bool ok = test_1x1(a.a11(m, m), maxm, params_.u);
      PivotContext ctx = context(m, -1);
      if (sink) sink->on_test_1x1(ctx, ok, t >= 0);
      if (ok) {
         swap(m, nelim_);
         PivotStep step = procs_.front().make_step_1x1(nelim_);
         if (sink) sink->on_pivot(PivotKind::OneByOne, ctx);
         apply(step);
         record(step);
         m = m + 1;
         idle = 0;
         continue;
      }
      ++result_.stats.rejected_1x1;
      ++idle;
      ++m;
   }

   if (layout_ == Layout::Replicated) {
      DenseMatrix ref = procs_.front().a11_matrix();
      for (auto const& w : procs_)
         if (!(w.a11_matrix() == ref))
            throw std::logic_error("A11 replicas diverged");
   }
   result_.nelim = nelim_;
   return std::move(result_);
}

DenseMatrix extract_l11(const WorkingMatrix& w, const std::vector<PivotBlock>& pivots, Index nelim) {
   Index p = w.p();
   DenseMatrix L(p, nelim);
   for (auto const& b : pivots) {
      Index q = b.position;
      L(q, q) = 1.0;
      if (b.kind == PivotKind::TwoByTwo) {
         L(q + 1, q + 1) = 1.0;
         for (Index i = q + 2; i < p; ++i) {
            L(i, q) = w.a11(i, q);
            L(i, q + 1) = w.a11(i, q + 1);
         }
      } else {
         for (Index i = q + 1; i < p; ++i) L(i, q) = w.a11(i, q);
      }
   }
   return L;
}

PartialFactorization assemble(const EngineResult& r, const DenseMatrix& l11,
      const DenseMatrix& a21_rows) {
   PartialFactorization f;
   f.p = l11.rows();
   f.n = f.p + a21_rows.rows();
   f.nelim = r.nelim;
   f.perm = r.perm;
   f.pivots = r.pivots;
   f.delayed.assign(r.perm.begin() + r.nelim, r.perm.end());
   f.L = DenseMatrix(f.n, f.nelim);
   for (Index j = 0; j < f.nelim; ++j) {
      for (Index i = 0; i < f.p; ++i) f.L(i, j) = l11(i, j);
      for (Index i = 0; i < a21_rows.rows(); ++i) f.L(f.p + i, j) = a21_rows(i, j);
   }
   return f;
}

} // namespace pivotkit::detail
