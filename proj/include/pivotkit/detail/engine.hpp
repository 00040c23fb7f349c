#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "pivotkit/working_matrix.hpp"

namespace pivotkit::detail {

/** Where A11 lives across logical processors. */
enum class Layout {
   Owner,      ///< processor 0 holds A11, the others hold only extra rows
   Replicated, ///< every processor holds an identical copy of A11
};

/** Dimensions of the active matrix when an event happens. */
struct PivotContext {
   Index nelim = 0;
   Index m = 0;
   Index t = -1;
   Index rows = 0; ///< scanned active rows across all processors
   Index cols = 0; ///< active columns (p - nelim)
};

/** Receives one callback per pivot-selection event, in execution order. */
class PivotEventSink {
public:
   virtual ~PivotEventSink() = default;
   virtual void on_partner_search(const PivotContext&, Index /*span*/) {}
   virtual void on_test_2x2(const PivotContext&, bool /*accepted*/) {}
   /// `reused` is true when the column maximum follows from a preceding 2x2 test.
   virtual void on_test_1x1(const PivotContext&, bool /*accepted*/, bool /*reused*/) {}
   virtual void on_pivot(PivotKind, const PivotContext&) {}
};

struct SwapEvent {
   Index i = 0;
   Index j = 0;
};

/** Swaps and pivot steps in execution order; replaying it on a row reproduces its update. */
using PivotLog = std::vector<std::variant<SwapEvent, PivotStep>>;

/// Replays `log` on a row of p entries with the signed rule.
void replay(const PivotLog& log, std::span<double> row);

struct EngineOptions {
   /// Test rows are rows of the true matrix and count towards growth.
   bool test_rows_are_true = true;
   bool track_growth = true;
   bool record_log = false;
   PivotEventSink* sink = nullptr;
   /// Called after every pivot block with the number of blocks applied so far.
   std::function<void(Index, const std::vector<WorkingMatrix>&)> on_step;
};

struct EngineResult {
   std::vector<Index> perm;
   std::vector<PivotBlock> pivots;
   Index nelim = 0;
   GrowthTrace growth;
   FactorStats stats;
   PivotLog log;
};

/**
 * Threshold pivot selection over a set of logical processors. Candidates are
 * tested as 2x2 blocks first and 1x1 afterwards; accepted pivots move to the
 * front; the run stops once a full sweep over the remaining columns accepts
 * nothing.
 */
class PivotEngine {
public:
   PivotEngine(std::vector<WorkingMatrix> procs, Layout layout, PivotParams params,
         EngineOptions options = {});

   EngineResult run();

   const std::vector<WorkingMatrix>& processors() const { return procs_; }
   const WorkingMatrix& root() const { return procs_.front(); }

private:
   Extremum column_max(Index col, Index start, std::span<const Index> exclude) const;
   void swap(Index i, Index j);
   void apply(const PivotStep& step);
   PivotContext context(Index m, Index t) const;
   void record(const PivotStep& step);
   double measure() const;

   std::vector<WorkingMatrix> procs_;
   Layout layout_;
   PivotParams params_;
   EngineOptions opt_;
   Index p_ = 0;
   Index ntest_ = 0;
   Index nelim_ = 0;
   EngineResult result_;
};

/// L11 part (p x nelim) of a finished working matrix, in permuted order.
DenseMatrix extract_l11(const WorkingMatrix& w, const std::vector<PivotBlock>& pivots, Index nelim);

/// Stacks L11 over the leading nelim columns of the updated A21 rows.
PartialFactorization assemble(const EngineResult& r, const DenseMatrix& l11, const DenseMatrix& a21_rows);

} // namespace pivotkit::detail
