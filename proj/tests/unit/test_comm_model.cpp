#include "doctest.h"

#include "../support/oracles.hpp"

using namespace pivotkit;

TEST_CASE("tpp_ops") {
   CHECK(tpp_ops(4, 2) == Rational(28));
   CHECK(tpp_ops(2, 2) == Rational(oracles::itemized_tpp_ops(2, 2)));
   CHECK(tpp_ops(2, 2) == Rational(16));
   for (Index p = 2; p <= 64; p += 2)
      CHECK(tpp_ops(p, p) == Rational(29, 6) * p + Rational(5, 4) * p * p + Rational(1, 6) * p * p * p);
   for (Index p = 2; p <= 64; p += 2)
      for (Index n = p; n <= 512; n += 7) CHECK(tpp_ops(n, p) == Rational(oracles::itemized_tpp_ops(n, p)));
   CHECK_THROWS_AS(tpp_ops(5, 3), DimensionError);
   CHECK_THROWS_AS(tpp_ops(2, 4), DimensionError);
   CHECK_THROWS_AS(tpp_ops(4, 0), DimensionError);
}

TEST_CASE("reduction_costs") {
   CHECK(reduction_costs(5, 1) == CostTriple{});
   CHECK(reduction_costs(3, 4) == CostTriple{9, 2, 18});
   CHECK(reduction_costs(1, 8) == CostTriple{7, 3, 14});
   CHECK_THROWS_AS(reduction_costs(1, 6), DimensionError);
   CHECK_THROWS_AS(reduction_costs(-1, 2), DimensionError);
}

TEST_CASE("scheme_costs") {
   SUBCASE("compressed message counts") {
      CHECK(scheme_costs(Scheme::Strict, 64, 8, 8).msgs == Rational(4));
      CHECK(scheme_costs(Scheme::Relaxed, 64, 8, 8).msgs == Rational(4));
   }
   SUBCASE("restricted") {
      CHECK_THROWS_AS(scheme_costs(Scheme::Restricted, 6, 3, 2), DimensionError);
      CHECK(scheme_costs(Scheme::Restricted, 6, 2, 2).bw == Rational(3));
      for (Index P : {1, 2, 4, 8, 16}) CHECK(scheme_costs(Scheme::Restricted, 40, 6, P).msgs == Rational(1));
      for (Index p = 2; p <= 32; p += 2)
         for (Index n = p; n <= 100; n += 3)
            CHECK(scheme_costs(Scheme::Restricted, n, p, 4).ops == tpp_ops(n, p) - Rational(p * (n - p)));
   }
   SUBCASE("relaxed operations at (8, 2, 2)") {
      Rational expect = tpp_ops(8, 2) + Rational(1, 2) * 2 * ((2 + 2) * 2 - 2) + (8 + 2) * 2;
      CHECK(scheme_costs(Scheme::Relaxed, 8, 2, 2).ops == expect);
   }
   SUBCASE("variant A message count") {
      CHECK(scheme_costs(Scheme::TppA, 16, 4, 4).msgs == Rational(8));
   }
   SUBCASE("variant B bandwidth is replication plus one reduction of 2 values per pivot") {
      for (Index p = 2; p <= 16; p += 2)
         for (Index P : {1, 2, 4, 8}) {
            Rational replication((P - 1) * p * (p + 1), 2);
            Rational reductions = Rational(p / 2) * reduction_costs(2, P).bw;
            CHECK(scheme_costs(Scheme::TppB, 3 * p, p, P).bw == replication + reductions);
         }
   }
   SUBCASE("nonnegative with integral messages") {
      for (Scheme s : {Scheme::TppA, Scheme::TppB, Scheme::Strict, Scheme::Relaxed, Scheme::Restricted})
         for (Index p = 2; p <= 64; p += 6)
            for (Index n = p; n <= 512; n += 37)
               for (Index P : {1, 2, 4, 8, 16}) {
                  CostTriple c = scheme_costs(s, n, p, P);
                  CHECK(c.ops >= 0);
                  CHECK(c.bw >= 0);
                  CHECK(c.msgs.denominator() == 1);
               }
   }
   SUBCASE("single processor moves no data except the variant A broadcasts") {
      CHECK(scheme_costs(Scheme::TppA, 20, 4, 1).bw == Rational(10));
      for (Scheme s : {Scheme::TppB, Scheme::Strict, Scheme::Relaxed, Scheme::Restricted})
         CHECK(scheme_costs(s, 20, 4, 1).bw == Rational(0));
   }
}

TEST_CASE("scheme names and asymptotic classes") {
   for (Scheme s : {Scheme::TppA, Scheme::TppB, Scheme::Strict, Scheme::Relaxed, Scheme::Restricted})
      CHECK(parse_scheme(to_string(s)) == s);
   CHECK_THROWS_AS(parse_scheme("calu"), DimensionError);
   CHECK(asymptotic_class(Scheme::Restricted).msgs == "O(1)");
   CHECK(asymptotic_class(Scheme::Strict).msgs == "O(log n)");
   CHECK(asymptotic_class(Scheme::TppB).ops == "O(np^3)");
}

TEST_CASE("exact_log2") {
   CHECK(exact_log2(1) == 0);
   CHECK(exact_log2(16) == 4);
   CHECK_THROWS_AS(exact_log2(0), DimensionError);
   CHECK_THROWS_AS(exact_log2(12), DimensionError);
}
