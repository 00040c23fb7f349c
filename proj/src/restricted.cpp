#include "pivotkit/restricted.hpp"

#include "pivotkit/compressed.hpp"

namespace pivotkit {

RestrictedFactorization factor_restricted(const SupernodeMatrix& m, const PivotParams& params,
      bool track_growth) {
   params.validate();
   m.require_finite();
   DenseMatrix a21 = m.a21_block();
   WorkingMatrix w(m.p(), true);
   w.set_a11(m);
   if (track_growth) w.set_shadow_rows(a21);

   detail::EngineOptions eo;
   eo.track_growth = track_growth;
   eo.record_log = true;
   detail::PivotEngine engine({std::move(w)}, detail::Layout::Owner, params, std::move(eo));
   detail::EngineResult r = engine.run();

   RestrictedFactorization out;
   DenseMatrix l21 = apply_pivot_sequence(r.log, a21);
   out.factors = detail::assemble(r, detail::extract_l11(engine.root(), r.pivots, r.nelim), l21);
   out.report.max_abs_l21 = max_abs(out.factors.L.block(m.p(), m.n(), 0, r.nelim));
   out.report.growth = r.growth.growth();
   out.growth = std::move(r.growth);
   out.stats = r.stats;
   out.log = std::move(r.log);
   return out;
}

} // namespace pivotkit
