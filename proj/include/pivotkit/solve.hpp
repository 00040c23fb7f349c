#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pivotkit/parsim.hpp"
#include "pivotkit/tpp.hpp"

namespace pivotkit {

/** Pivoting strategy used on the leading supernode. */
enum class Method { Tpp, Strict, Relaxed, Restricted };

std::string to_string(Method m);
/// tpp, strict, relaxed, restricted.
Method parse_method(std::string_view name);

/// Runs the serial strategy `method` on a supernode.
Factorization factor(const SupernodeMatrix& m, Method method, const PivotParams& params = {});

/// ||A x - b||_inf / (||A||_inf ||x||_inf + ||b||_inf); 0 when both parts vanish.
double backward_error(const DenseMatrix& a, std::span<const double> x, std::span<const double> b);

struct SolveOptions {
   Index p = 32;            ///< supernode width (clipped to the system order)
   Index max_steps = 10;    ///< refinement steps after the first solve
   double target = 1e-14;   ///< stop once the backward error drops below this
   /// Symmetric scaling by 1/sqrt(max |row|); a simple stand-in, not a matching-based scaling.
   bool equilibrate = false;
};

struct SolveReport {
   std::string method;
   std::string instance;
   Index n = 0;
   Index p = 0;
   Index nelim = 0;        ///< eliminated in the supernode
   Index delayed = 0;      ///< passed on to the root
   Index root_nelim = 0;   ///< eliminated in the root with a nonzero pivot
   Index zero_pivots = 0;  ///< root columns whose solution component is set to zero
   double growth = 1.0;    ///< supernode max mu_q / mu_0
   double max_abs_l = 0.0; ///< supernode max |L|
   std::vector<double> bwd_err;
   bool converged = false;
   std::optional<CommCounters> counters;
   double factor_ms = 0.0;
   double solve_ms = 0.0;
   std::vector<double> x;
};

/**
 * Factor the leading p columns with `method`, factor the root (delayed
 * columns plus the trailing block, updated by the supernode) with threshold
 * partial pivoting, then solve and refine.
 */
SolveReport solve_with_refinement(const DenseMatrix& a, std::span<const double> b, Method method,
      const PivotParams& params = {}, const SolveOptions& options = {});

} // namespace pivotkit
