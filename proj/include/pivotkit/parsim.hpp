#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pivotkit/comm_model.hpp"
#include "pivotkit/compressed.hpp"

namespace pivotkit {

/** P contiguous row ranges [first, last) whose sizes differ by at most one. */
struct Partition {
   Index P = 1;
   std::vector<std::pair<Index, Index>> blocks;

   /// Splits `rows` rows over P processors; P must be a power of two.
   static Partition equal(Index rows, Index P);
   Index size(Index k) const { return blocks[k].second - blocks[k].first; }
};

/** Operation, critical-path message and bandwidth counts. */
struct CommCounters {
   std::int64_t ops = 0;
   std::int64_t msgs = 0;
   std::int64_t bw = 0;

   CommCounters& operator+=(const CommCounters& o);
   bool operator==(const CommCounters&) const = default;
   /// Equal to an exact cost triple with integral entries.
   bool matches(const CostTriple& c) const;
};

/// Elementwise maximum with unioned provenance sets.
CompressedMatrix merge_strict(const CompressedMatrix& a, const CompressedMatrix& b);

/// Stacks the rows of a over those of b and reruns the relaxed selection.
CompressedMatrix merge_relaxed(const CompressedMatrix& a, const CompressedMatrix& b);

/** Factorization computed by the logical processors plus the counters they incurred. */
struct SimulationResult {
   PartialFactorization factors;
   FactorStats stats;
   CommCounters counters;
   /// C after the tree reduction (compressed schemes only).
   std::optional<CompressedMatrix> compressed;
};

/**
 * Runs `scheme` on P logical processors, executed one after another in
 * index order. A21 rows are split with Partition::equal.
 */
SimulationResult simulate(Scheme scheme, const SupernodeMatrix& m, Index P,
      const PivotParams& params = {});

/// Tree reduction of per-processor compressed matrices as performed by simulate.
CompressedMatrix reduce_compressed(const SupernodeMatrix& m, CompressionMode mode, Index P);

} // namespace pivotkit
