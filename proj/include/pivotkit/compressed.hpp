#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pivotkit/detail/engine.hpp"
#include "pivotkit/tpp.hpp"

namespace pivotkit {

enum class CompressionMode { Strict, Relaxed };

/**
 * Representative matrix C standing in for A21 during pivot tests.
 *
 * Strict: p rows, row j bounds |a(i,:)| for every A21 row i in partition[j].
 * Relaxed: up to p signed A21 rows; source_rows[j] names the row copied into row j.
 */
struct CompressedMatrix {
   CompressionMode mode = CompressionMode::Strict;
   DenseMatrix rows;
   std::vector<std::vector<Index>> partition;
   std::vector<Index> source_rows;

   Index r() const { return rows.rows(); }
   Index p() const { return rows.cols(); }
   /// C padded with zero rows to p rows, the fixed payload of the stacked factorization.
   DenseMatrix stacked_rows() const;
};

/// Row i of A21 joins the set of the column holding its largest |entry| (lowest column on ties).
CompressedMatrix build_strict(const DenseMatrix& a21, Index first_row = 0);

/// Column by column, copy the unflagged row with the largest |entry| (first on ties).
CompressedMatrix build_relaxed(const DenseMatrix& a21, Index first_row = 0);

/// Relaxed selection over an explicit candidate list; provenance[i] names candidate i.
CompressedMatrix select_relaxed(const DenseMatrix& candidates, std::span<const Index> provenance);

/// Absolute-value update of strict C rows for one pivot step.
void update_strict_c(DenseMatrix& c, const PivotStep& step);

/// Applies a recorded pivot sequence to independent rows (returns the updated rows).
DenseMatrix apply_pivot_sequence(const detail::PivotLog& log, const DenseMatrix& rows);

/** Snapshots of the true A21 and of C, before and after every pivot block. */
struct CompressedTrace {
   std::vector<DenseMatrix> a21;
   std::vector<DenseMatrix> c;
};

struct CompressedOptions {
   bool track_growth = true;
   bool record_trace = false;
};

struct CompressedFactorization : Factorization {
   CompressedMatrix compressed;
   std::optional<CompressedTrace> trace;
   detail::PivotLog log;
};

CompressedFactorization factor_compressed(const SupernodeMatrix& m, CompressionMode mode,
      const PivotParams& params = {}, const CompressedOptions& options = {});

/// Same pipeline with a caller-supplied C (for experiments with other compressions).
CompressedFactorization factor_with_compressed(const SupernodeMatrix& m, CompressedMatrix c,
      const PivotParams& params = {}, const CompressedOptions& options = {});

struct DominanceResult {
   bool holds = true;
   Index first_violation = -1; ///< snapshot index (pivot blocks applied)
   Index row = -1;
   Index col = -1;
};

/**
 * Strict C: every traced |a(i,k)| with i in partition[j] stays below c(j,k).
 * Relaxed C: every traced |a(i,k)| stays below the largest |c(:,k)|.
 * A relative slack of 1e-12 absorbs rounding.
 */
DominanceResult check_dominance(const CompressedTrace& trace, const CompressedMatrix& c);

} // namespace pivotkit
