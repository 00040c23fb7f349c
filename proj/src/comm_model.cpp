#include "pivotkit/comm_model.hpp"

namespace pivotkit {

namespace {

void require_even(Index n, Index p) {
   if (p < 2 || p % 2 != 0)
      throw DimensionError("cost model needs an even p >= 2");
   if (n < p)
      throw DimensionError("cost model needs n >= p");
}

} // namespace

std::string to_string(Scheme s) {
   switch (s) {
   case Scheme::TppA: return "tpp_A";
   case Scheme::TppB: return "tpp_B";
   case Scheme::Strict: return "strict";
   case Scheme::Relaxed: return "relaxed";
   case Scheme::Restricted: return "restricted";
   }
   return "unknown";
}

Scheme parse_scheme(std::string_view name) {
   for (Scheme s : {Scheme::TppA, Scheme::TppB, Scheme::Strict, Scheme::Relaxed, Scheme::Restricted})
      if (to_string(s) == name) return s;
   throw DimensionError("unknown scheme: " + std::string(name));
}

int exact_log2(Index P) {
   if (P < 1 || (P & (P - 1)) != 0)
      throw DimensionError("processor count must be a power of two");
   int l = 0;
   while ((Index(1) << l) < P) ++l;
   return l;
}

Rational tpp_ops(Index n, Index p) {
   require_even(n, p);
   Rational N(n), Pc(p);
   return Rational(29, 6) * Pc - Rational(3, 4) * Pc * Pc - Rational(1, 3) * Pc * Pc * Pc +
         2 * N * Pc + Rational(1, 2) * N * Pc * Pc;
}

CostTriple reduction_costs(Index k, Index P) {
   int lg = exact_log2(P);
   if (k < 0)
      throw DimensionError("reduction size must be nonnegative");
   return {Rational((P - 1) * k), Rational(lg), Rational(2 * (P - 1) * k)};
}

CostTriple scheme_costs(Scheme s, Index n, Index p, Index P) {
   require_even(n, p);
   int lg = exact_log2(P);
   Rational N(n), Pc(p), Q(P), L(lg);
   Rational half(1, 2);
   CostTriple c;
   switch (s) {
   case Scheme::TppA:
      c.ops = tpp_ops(n, p);
      c.msgs = Pc + half * Pc * L;
      c.bw = -half * Pc + half * Q * Pc * (Pc + 2);
      break;
   case Scheme::TppB:
      c.ops = tpp_ops(n, p) +
            (Q - 1) * (Rational(29, 6) * Pc + Rational(5, 4) * Pc * Pc + Rational(1, 6) * Pc * Pc * Pc);
      c.msgs = 1 + half * Pc * L;
      // initial replication of A11 plus one 2-value reduction per pivot
      c.bw = -half * Pc * (Pc + 5) + half * Q * Pc * (Pc + 5);
      break;
   case Scheme::Strict:
      c.ops = tpp_ops(n, p) + half * Pc * ((Pc - 1) * Pc + 3) + N * (2 * Pc - 1) + Q * Pc * Pc;
      c.msgs = 1 + L;
      c.bw = -half * Pc * (5 * Pc + 1) + half * Q * Pc * (5 * Pc + 1);
      break;
   case Scheme::Relaxed:
      c.ops = tpp_ops(n, p) + half * Pc * ((Pc + 2) * Pc - 2) + (N + Q) * Pc;
      c.msgs = 1 + L;
      c.bw = -half * Pc * (5 * Pc + 1) + half * Q * Pc * (5 * Pc + 1);
      break;
   case Scheme::Restricted:
      c.ops = tpp_ops(n, p) - Pc * (N - Pc);
      c.msgs = 1;
      c.bw = -half * Pc * (Pc + 1) + half * Q * Pc * (Pc + 1);
      break;
   }
   return c;
}

AsymptoticClass asymptotic_class(Scheme s) {
   switch (s) {
   case Scheme::TppA: return {"O(np^2)", "O(p log n)", "O(np^2)"};
   case Scheme::TppB: return {"O(np^3)", "O(p log n)", "O(np^2)"};
   case Scheme::Strict: return {"O(np^2)", "O(log n)", "O(np^2)"};
   case Scheme::Relaxed: return {"O(np^2)", "O(log n)", "O(np^2)"};
   case Scheme::Restricted: return {"O(np^2)", "O(1)", "O(np^2)"};
   }
   throw DimensionError("unknown scheme");
}

} // namespace pivotkit
