#pragma once

#include "pivotkit/supernode.hpp"

namespace pivotkit {

/// Accept a 1x1 pivot iff |pivot| >= u * maxm.
bool test_1x1(double pivot, double maxm, double u);

/**
 * Accept the 2x2 block [[a_tt, a_tm], [a_tm, a_mm]] when it passes the
 * determinant guard and |D^{-1}| (maxt, maxm)^T <= (1/u, 1/u)^T, where
 * maxt and maxm are the column maxima outside rows t and m.
 */
bool test_2x2(double a_tt, double a_tm, double a_mm, double maxm, double maxt,
      const PivotParams& params);

/** Output shared by every pivoting strategy. */
struct Factorization {
   PartialFactorization factors;
   GrowthTrace growth;
   FactorStats stats;
};

/// Threshold partial pivoting over the whole supernode.
Factorization factor_tpp(const SupernodeMatrix& m, const PivotParams& params = {});

} // namespace pivotkit
