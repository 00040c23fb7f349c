#pragma once

#include <cmath>
#include <cstdint>

#include "pivotkit/pivotkit.hpp"

namespace fixtures {

using pivotkit::DenseMatrix;
using pivotkit::Index;
using pivotkit::SupernodeMatrix;

/// Five-row A21 used by the strict and relaxed construction examples.
inline DenseMatrix example_a21() {
   return DenseMatrix::from_rows({
      {1, 10, 10},
      {2, 3, 4},
      {0, 10, -3},
      {4, -5, 4},
      {0, -6, 8},
   });
}

/// Counterexample for relaxed compression at u = 0.01, epsilon = 1e-6.
inline SupernodeMatrix counterexample() {
   return SupernodeMatrix(DenseMatrix::from_rows({
      {1, -1},
      {-1, 2},
      {100, 0},
      {0, 100},
      {99.999999, 99.999999},
   }));
}

/// Seeded random-indefinite or diagonally dominant supernode.
inline SupernodeMatrix random_supernode(Index n, Index p, std::uint64_t seed, bool dominant) {
   pivotkit::GeneratorSpec spec;
   spec.kind = dominant ? pivotkit::GeneratorKind::DiagDominant
                        : pivotkit::GeneratorKind::RandomIndefinite;
   spec.n = n;
   spec.p = p;
   spec.seed = seed;
   return pivotkit::generate(spec);
}

inline SupernodeMatrix with_zero_a21(const SupernodeMatrix& m) {
   SupernodeMatrix z = m;
   for (Index j = 0; j < m.p(); ++j)
      for (Index i = m.p(); i < m.n(); ++i) z(i, j) = 0.0;
   return z;
}

/// 50 * eps * max(n, p) * max mu, the admissible reconstruction residual.
inline double residual_bound(const SupernodeMatrix& m, const pivotkit::GrowthTrace& g) {
   return 50.0 * 0x1p-52 * double(std::max(m.n(), m.p())) * g.max_mu();
}

} // namespace fixtures
