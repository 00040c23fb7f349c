#include "pivotkit/tpp.hpp"

#include <algorithm>
#include <cmath>

#include "pivotkit/detail/engine.hpp"

namespace pivotkit {

bool test_1x1(double pivot, double maxm, double u) {
   return std::fabs(pivot) >= u * maxm;
}

bool test_2x2(double a_tt, double a_tm, double a_mm, double maxm, double maxt,
      const PivotParams& params) {
   DeterminantGuard g = determinant_guard(a_tt, a_tm, a_mm, params.small);
   if (!g.passed) return false;
   if (std::max(maxm, maxt) < params.small) return true;
   Inverse2x2 inv = invert_2x2(g, a_tt, a_tm, a_mm);
   double bound = 1.0 / params.u;
   double row_t = std::fabs(inv.i11) * maxt + std::fabs(inv.i21) * maxm;
   double row_m = std::fabs(inv.i21) * maxt + std::fabs(inv.i22) * maxm;
   return row_t <= bound && row_m <= bound;
}

Factorization factor_tpp(const SupernodeMatrix& m, const PivotParams& params) {
   params.validate();
   m.require_finite();
   std::vector<WorkingMatrix> procs{WorkingMatrix::from_supernode(m)};
   detail::PivotEngine engine(std::move(procs), detail::Layout::Owner, params);
   detail::EngineResult r = engine.run();
   const WorkingMatrix& w = engine.root();
   Factorization out;
   out.factors = detail::assemble(r, detail::extract_l11(w, r.pivots, r.nelim), w.test_matrix());
   out.growth = std::move(r.growth);
   out.stats = r.stats;
   return out;
}

} // namespace pivotkit
