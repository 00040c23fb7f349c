#pragma once

#include "pivotkit/detail/engine.hpp"
#include "pivotkit/tpp.hpp"

namespace pivotkit {

/** Realized size of the factors of a restricted run; informative only. */
struct GrowthReport {
   double max_abs_l21 = 0.0;
   double growth = 1.0;
};

struct RestrictedFactorization : Factorization {
   GrowthReport report;
   detail::PivotLog log;
};

/// Pivot tests look at A11 only; the chosen sequence is then applied to A21.
RestrictedFactorization factor_restricted(const SupernodeMatrix& m, const PivotParams& params = {},
      bool track_growth = true);

} // namespace pivotkit
