#include "pivotkit/parsim.hpp"

#include <algorithm>

#include "pivotkit/detail/tree.hpp"

namespace pivotkit {

namespace {

using detail::PivotContext;

enum class CommPattern { None, VariantA, VariantB };

/**
 * Charges pivot-selection events. Ops follow the per-pivot itemization
 * (maxima, test, apply, update); replicas of A11 under Variant B repeat the
 * A11-only share of every event.
 */
class CounterSink final : public detail::PivotEventSink {
public:
   CounterSink(CommPattern comm, Index P, CommCounters& c)
      : comm_(comm), P_(P), lg_(exact_log2(P)), c_(c) {}

   void on_partner_search(const PivotContext&, Index span) override {
      ops(span - 1, span - 1);
   }

   void on_test_2x2(const PivotContext& x, bool) override {
      ops(2 * (x.rows - 3) + 18, 2 * (x.cols - 3) + 18);
      if (comm_ == CommPattern::VariantA) message(1, 3);
      if (comm_ != CommPattern::None) message(lg_, 4 * (P_ - 1));
   }

   void on_test_1x1(const PivotContext& x, bool, bool reused) override {
      if (reused) {
         ops(3, 3);
         return;
      }
      ops((x.rows - 2) + 2, (x.cols - 2) + 2);
      if (comm_ == CommPattern::VariantA) message(1, 1);
      if (comm_ != CommPattern::None) message(lg_, 2 * (P_ - 1));
   }

   void on_pivot(PivotKind kind, const PivotContext& x) override {
      Index r = x.rows;
      Index k = x.cols;
      switch (kind) {
      case PivotKind::TwoByTwo:
         ops(4 * (r - 2) + (k - 2) * (2 * r - k - 1), 4 * (k - 2) + (k - 2) * (k - 1));
         if (comm_ == CommPattern::VariantA) message(1, 2 * P_ * (k - 2));
         break;
      case PivotKind::OneByOne:
         ops((r - 1) + (k - 1) * (2 * r - k) / 2, (k - 1) + (k - 1) * k / 2);
         if (comm_ == CommPattern::VariantA) message(1, P_ * (k - 1));
         break;
      case PivotKind::Zero:
         if (comm_ == CommPattern::VariantA) message(1, 1);
         break;
      }
   }

private:
   void ops(std::int64_t owner, std::int64_t replica) {
      c_.ops += owner;
      if (comm_ == CommPattern::VariantB) c_.ops += (P_ - 1) * replica;
   }
   void message(std::int64_t msgs, std::int64_t words) {
      c_.msgs += msgs;
      c_.bw += words;
   }

   CommPattern comm_;
   Index P_;
   int lg_;
   CommCounters& c_;
};

/// Ops of applying the recorded pivots to one row without further tests.
std::int64_t row_apply_ops(const std::vector<PivotBlock>& pivots, Index p) {
   std::int64_t ops = 0;
   for (auto const& b : pivots) {
      Index k = p - b.position;
      if (b.kind == PivotKind::TwoByTwo) ops += 4 + 2 * (k - 2);
      else if (b.kind == PivotKind::OneByOne) ops += 1 + (k - 1);
   }
   return ops;
}

std::int64_t a11_words(Index p) { return p * (p + 1) / 2; }

CompressedMatrix reduce_tree(const SupernodeMatrix& m, CompressionMode mode, Index P,
      CommCounters* c) {
   Index p = m.p();
   DenseMatrix a21 = m.a21_block();
   Partition part = Partition::equal(a21.rows(), P);
   std::vector<CompressedMatrix> leaves;
   for (Index k = 0; k < P; ++k) {
      auto [first, last] = part.blocks[k];
      DenseMatrix block = a21.block(first, last, 0, p);
      if (mode == CompressionMode::Strict) {
         leaves.push_back(build_strict(block, first));
         if (c) c->ops += (last - first) * (3 * p - 1);
      } else {
         leaves.push_back(build_relaxed(block, first));
         if (c) c->ops += (last - first) * 2 * p;
      }
   }
   auto merge = [&](const CompressedMatrix& a, const CompressedMatrix& b) {
      if (c) {
         c->ops += mode == CompressionMode::Strict ? p * p : p;
         c->bw += 2 * p * p;
      }
      return mode == CompressionMode::Strict ? merge_strict(a, b) : merge_relaxed(a, b);
   };
   CompressedMatrix root = detail::tree_reduce(std::move(leaves), merge);
   if (c) c->msgs += exact_log2(P);
   return root;
}

/// Factor A11 stacked over `rows` on the root processor, then distribute L11 and D.
SimulationResult root_and_apply(const SupernodeMatrix& m, Index P, const PivotParams& params,
      const DenseMatrix& rows, RowRule rule, CommCounters counters) {
   Index p = m.p();
   WorkingMatrix w(p, true);
   w.set_a11(m);
   if (rows.rows() > 0) w.set_test_rows(rows, rule);
   CounterSink sink(CommPattern::None, 1, counters);
   detail::EngineOptions eo;
   eo.test_rows_are_true = false;
   eo.track_growth = false;
   eo.record_log = true;
   eo.sink = &sink;
   detail::PivotEngine engine({std::move(w)}, detail::Layout::Owner, params, std::move(eo));
   detail::EngineResult r = engine.run();

   counters.msgs += 1;
   counters.bw += (P - 1) * a11_words(p);

   DenseMatrix a21 = m.a21_block();
   Partition part = Partition::equal(a21.rows(), P);
   DenseMatrix l21(a21.rows(), p);
   std::int64_t per_row = row_apply_ops(r.pivots, p);
   for (Index k = 0; k < P; ++k) {
      auto [first, last] = part.blocks[k];
      DenseMatrix local = apply_pivot_sequence(r.log, a21.block(first, last, 0, p));
      for (Index i = first; i < last; ++i)
         for (Index j = 0; j < p; ++j) l21(i, j) = local(i - first, j);
      counters.ops += (last - first) * per_row;
   }

   SimulationResult out;
   out.factors = detail::assemble(r, detail::extract_l11(engine.root(), r.pivots, r.nelim), l21);
   out.stats = r.stats;
   out.counters = counters;
   return out;
}

SimulationResult simulate_tpp(const SupernodeMatrix& m, Index P, const PivotParams& params,
      bool replicated) {
   Index p = m.p();
   DenseMatrix a21 = m.a21_block();
   Partition part = Partition::equal(a21.rows(), P);
   CommCounters counters;
   std::vector<WorkingMatrix> procs;
   for (Index k = 0; k < P; ++k) {
      bool owns = replicated || k == 0;
      WorkingMatrix w(p, owns);
      if (owns) w.set_a11(m);
      auto [first, last] = part.blocks[k];
      w.set_test_rows(a21.block(first, last, 0, p), RowRule::Signed, first);
      procs.push_back(std::move(w));
   }
   if (replicated) {
      counters.msgs += 1;
      counters.bw += (P - 1) * a11_words(p);
   }
   CounterSink sink(replicated ? CommPattern::VariantB : CommPattern::VariantA, P, counters);
   detail::EngineOptions eo;
   eo.track_growth = false;
   eo.sink = &sink;
   detail::PivotEngine engine(std::move(procs),
         replicated ? detail::Layout::Replicated : detail::Layout::Owner, params, std::move(eo));
   detail::EngineResult r = engine.run();

   DenseMatrix l21(a21.rows(), p);
   for (Index k = 0; k < P; ++k) {
      const WorkingMatrix& w = engine.processors()[k];
      for (Index i = 0; i < w.test_rows(); ++i)
         for (Index j = 0; j < p; ++j) l21(part.blocks[k].first + i, j) = w.test(i, j);
   }
   SimulationResult out;
   out.factors = detail::assemble(r, detail::extract_l11(engine.root(), r.pivots, r.nelim), l21);
   out.stats = r.stats;
   out.counters = counters;
   return out;
}

} // namespace

Partition Partition::equal(Index rows, Index P) {
   exact_log2(P);
   if (rows < 0)
      throw DimensionError("row count must be nonnegative");
   Partition part;
   part.P = P;
   Index base = rows / P;
   Index extra = rows % P;
   Index first = 0;
   for (Index k = 0; k < P; ++k) {
      Index len = base + (k < extra ? 1 : 0);
      part.blocks.emplace_back(first, first + len);
      first += len;
   }
   return part;
}

CommCounters& CommCounters::operator+=(const CommCounters& o) {
   ops += o.ops;
   msgs += o.msgs;
   bw += o.bw;
   return *this;
}

bool CommCounters::matches(const CostTriple& c) const {
   return c.ops == Rational(ops) && c.msgs == Rational(msgs) && c.bw == Rational(bw);
}

CompressedMatrix merge_strict(const CompressedMatrix& a, const CompressedMatrix& b) {
   if (a.mode != CompressionMode::Strict || b.mode != CompressionMode::Strict)
      throw DimensionError("merge_strict needs two strict compressed matrices");
   if (a.p() != b.p() || a.r() != b.r())
      throw DimensionError("compressed matrices differ in shape");
   CompressedMatrix c = a;
   for (Index j = 0; j < c.r(); ++j) {
      for (Index k = 0; k < c.p(); ++k) c.rows(j, k) = std::max(a.rows(j, k), b.rows(j, k));
      auto& set = c.partition[j];
      set.insert(set.end(), b.partition[j].begin(), b.partition[j].end());
      std::sort(set.begin(), set.end());
   }
   return c;
}

CompressedMatrix merge_relaxed(const CompressedMatrix& a, const CompressedMatrix& b) {
   if (a.mode != CompressionMode::Relaxed || b.mode != CompressionMode::Relaxed)
      throw DimensionError("merge_relaxed needs two relaxed compressed matrices");
   if (a.p() != b.p())
      throw DimensionError("compressed matrices differ in width");
   DenseMatrix stack(a.r() + b.r(), a.p());
   std::vector<Index> ids;
   for (Index i = 0; i < a.r(); ++i) {
      for (Index k = 0; k < a.p(); ++k) stack(i, k) = a.rows(i, k);
      ids.push_back(a.source_rows[i]);
   }
   for (Index i = 0; i < b.r(); ++i) {
      for (Index k = 0; k < b.p(); ++k) stack(a.r() + i, k) = b.rows(i, k);
      ids.push_back(b.source_rows[i]);
   }
   return select_relaxed(stack, ids);
}

CompressedMatrix reduce_compressed(const SupernodeMatrix& m, CompressionMode mode, Index P) {
   return reduce_tree(m, mode, P, nullptr);
}

SimulationResult simulate(Scheme scheme, const SupernodeMatrix& m, Index P,
      const PivotParams& params) {
   params.validate();
   m.require_finite();
   exact_log2(P);
   Index p = m.p();
   switch (scheme) {
   case Scheme::TppA: return simulate_tpp(m, P, params, false);
   case Scheme::TppB: return simulate_tpp(m, P, params, true);
   case Scheme::Strict:
   case Scheme::Relaxed: {
      bool strict = scheme == Scheme::Strict;
      CommCounters counters;
      CompressedMatrix c = reduce_tree(m,
            strict ? CompressionMode::Strict : CompressionMode::Relaxed, P, &counters);
      if (strict) counters.ops += a11_words(p); // |A11| copy for the bound rows
      SimulationResult out = root_and_apply(m, P, params, c.stacked_rows(),
            strict ? RowRule::Absolute : RowRule::Signed, counters);
      out.compressed = std::move(c);
      return out;
   }
   case Scheme::Restricted:
      return root_and_apply(m, P, params, DenseMatrix(0, p), RowRule::Signed, CommCounters{});
   }
   throw DimensionError("unknown scheme");
}

} // namespace pivotkit
