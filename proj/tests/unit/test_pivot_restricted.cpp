#include "doctest.h"

#include "../support/fixtures.hpp"

using namespace pivotkit;

TEST_CASE("factor_restricted on the relaxed counterexample") {
   RestrictedFactorization f = factor_restricted(fixtures::counterexample());
   CHECK(f.factors.nelim == 2);
   CHECK(std::fabs(f.factors.L(4, 1)) == doctest::Approx(200.0).epsilon(1e-6));
   CHECK(f.report.max_abs_l21 == std::fabs(f.factors.L(4, 1)));
   CHECK(f.report.growth > 1.0);
}

TEST_CASE("factor_restricted matches factor_tpp when A21 vanishes") {
   for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SupernodeMatrix m = fixtures::with_zero_a21(fixtures::random_supernode(20, 8, seed, false));
      Factorization t = factor_tpp(m);
      RestrictedFactorization r = factor_restricted(m);
      CHECK(r.factors.perm == t.factors.perm);
      CHECK(r.factors.pivots == t.factors.pivots);
      CHECK(r.factors.L == t.factors.L);
   }
}

TEST_CASE("factor_restricted on diagonally dominant supernodes") {
   for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      SupernodeMatrix m = fixtures::random_supernode(30, 10, seed, true);
      RestrictedFactorization r = factor_restricted(m);
      CHECK(r.factors.nelim == 10);
      CHECK(r.factors.max_abs_l() <= 100.0);
   }
}

TEST_CASE("factor_restricted delays no more than factor_tpp") {
   for (double u : {0.5, 0.1, 0.01}) {
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
         SupernodeMatrix m = fixtures::random_supernode(40, 12, seed, false);
         PivotParams params{u, 1e-20};
         RestrictedFactorization r = factor_restricted(m, params);
         Factorization t = factor_tpp(m, params);
         CHECK(r.factors.delayed.size() <= t.factors.delayed.size());
         if (r.factors.nelim == m.p())
            CHECK(reconstruction_residual(m, r.factors) <= fixtures::residual_bound(m, r.growth));
      }
   }
}
