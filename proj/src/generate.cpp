#include "pivotkit/generate.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

namespace pivotkit {

namespace {

/// Portable draws from the 64-bit Mersenne Twister.
class Uniform {
public:
   explicit Uniform(std::uint64_t seed) : eng_(seed) {}
   double unit() { return double(eng_() >> 11) * 0x1.0p-53; }
   double symmetric() { return 2.0 * unit() - 1.0; }
   bool coin() { return (eng_() >> 63) != 0; }

private:
   std::mt19937_64 eng_;
};

void fill_uniform(DenseMatrix& a, Uniform& rng) {
   Index n = a.rows();
   for (Index j = 0; j < n; ++j)
      for (Index i = j; i < n; ++i) {
         double v = rng.symmetric();
         a(i, j) = v;
         a(j, i) = v;
      }
}

void make_dominant(DenseMatrix& a, Index from, Uniform& rng) {
   Index n = a.rows();
   for (Index i = from; i < n; ++i) {
      double s = 0.0;
      for (Index j = 0; j < n; ++j)
         if (j != i) s += std::fabs(a(i, j));
      double d = s + 1.0 + rng.unit();
      a(i, i) = rng.coin() ? d : -d;
   }
}

} // namespace

std::string to_string(GeneratorKind k) {
   switch (k) {
   case GeneratorKind::RandomIndefinite: return "random-indefinite";
   case GeneratorKind::DiagDominant: return "diag-dominant";
   case GeneratorKind::All2x2Accept: return "all-2x2-accept";
   case GeneratorKind::PathologicalRelaxed: return "pathological-relaxed";
   }
   return "unknown";
}

GeneratorKind parse_generator(std::string_view name) {
   for (GeneratorKind k : {GeneratorKind::RandomIndefinite, GeneratorKind::DiagDominant,
              GeneratorKind::All2x2Accept, GeneratorKind::PathologicalRelaxed})
      if (to_string(k) == name) return k;
   throw DimensionError("unknown generator kind: " + std::string(name));
}

DenseMatrix generate_system(const GeneratorSpec& spec) {
   Index n = spec.n;
   Index p = spec.p;
   if (p < 1 || n < p)
      throw DimensionError("generator needs n >= p >= 1");
   Uniform rng(spec.seed);
   DenseMatrix a(n, n);
   switch (spec.kind) {
   case GeneratorKind::RandomIndefinite:
      fill_uniform(a, rng);
      for (Index i = 0; i < n; ++i) a(i, i) += rng.coin() ? 1.0 : -1.0;
      break;
   case GeneratorKind::DiagDominant:
      fill_uniform(a, rng);
      make_dominant(a, 0, rng);
      break;
   case GeneratorKind::All2x2Accept: {
      if (p % 2 != 0)
         throw DimensionError("all-2x2-accept needs an even p");
      fill_uniform(a, rng);
      for (Index j = 0; j < p; ++j)
         for (Index i = 0; i < p; ++i) a(i, j) = 0.0;
      for (Index q = 0; q < p; q += 2) {
         double d0 = 0.1 * rng.symmetric();
         double off = 10.0 + 0.1 * rng.symmetric();
         double d1 = 0.1 * rng.symmetric();
         a(q, q) = d0;
         a(q + 1, q) = off;
         a(q, q + 1) = off;
         a(q + 1, q + 1) = d1;
      }
      make_dominant(a, p, rng);
      break;
   }
   case GeneratorKind::PathologicalRelaxed: {
      if (n < 2 * p + 1)
         throw DimensionError("pathological-relaxed needs n >= 2p + 1");
      if (!(spec.u > 0.0 && spec.u <= 0.5))
         throw DimensionError("threshold u must lie in (0, 0.5]");
      double big = 1.0 / spec.u;
      for (Index q = 0; q < p; ++q) {
         a(q, q) = q == 0 ? 1.0 : 2.0;
         if (q + 1 < p) {
            a(q + 1, q) = -1.0;
            a(q, q + 1) = -1.0;
         }
      }
      for (Index j = 0; j < p; ++j) {
         a(p + j, j) = big;
         a(j, p + j) = big;
         a(2 * p, j) = big - spec.epsilon;
         a(j, 2 * p) = big - spec.epsilon;
      }
      for (Index i = p; i < n; ++i) a(i, i) = 1.0;
      break;
   }
   }
   return a;
}

SupernodeMatrix generate(const GeneratorSpec& spec) {
   return SupernodeMatrix::from_symmetric(generate_system(spec), spec.p);
}

std::uint64_t resolve_seed(std::uint64_t fallback) {
   const char* env = std::getenv("PIVOTKIT_SEED");
   if (!env || !*env) return fallback;
   char* end = nullptr;
   unsigned long long v = std::strtoull(env, &end, 10);
   return (end && *end == '\0') ? std::uint64_t(v) : fallback;
}

} // namespace pivotkit
