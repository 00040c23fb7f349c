#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "pivotkit/dense.hpp"

namespace pivotkit {

using Rational = boost::rational<std::int64_t>;

/** The five parallel pivoting schemes with a cost model. */
enum class Scheme { TppA, TppB, Strict, Relaxed, Restricted };

std::string to_string(Scheme s);
/// Accepts tpp_A, tpp_B, strict, relaxed, restricted; throws DimensionError otherwise.
Scheme parse_scheme(std::string_view name);

/** Operations, critical-path messages and words moved. */
struct CostTriple {
   Rational ops{0};
   Rational msgs{0};
   Rational bw{0};

   bool operator==(const CostTriple&) const = default;
};

/** Order-of-magnitude class of a scheme's costs, assuming P = O(n). */
struct AsymptoticClass {
   std::string ops;
   std::string msgs;
   std::string bw;
};

/// log2 of a power of two; throws DimensionError otherwise.
int exact_log2(Index P);

/// Operation count of threshold partial pivoting with only 2x2 pivots (p even).
Rational tpp_ops(Index n, Index p);

/// Reduction of k values on a binary tree of P processors.
CostTriple reduction_costs(Index k, Index P);

/// Closed-form costs for factorizing an n x p supernode on P processors.
CostTriple scheme_costs(Scheme s, Index n, Index p, Index P);

AsymptoticClass asymptotic_class(Scheme s);

} // namespace pivotkit
