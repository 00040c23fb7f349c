#pragma once

#include <span>
#include <vector>

#include "pivotkit/supernode.hpp"

namespace pivotkit {

/** How a row outside A11 reacts to a pivot. */
enum class RowRule {
   Signed,   ///< standard elimination update
   Absolute, ///< worst-case bound update used by strict compressed rows
};

/**
 * Everything a pivot owner publishes so that any row can be updated:
 * the D block, its inverse and the pivot-column entries of the trailing
 * A11 positions (position + size .. p-1).
 */
struct PivotStep {
   PivotKind kind = PivotKind::OneByOne;
   Index position = 0;
   double d11 = 0.0;
   double d21 = 0.0;
   double d22 = 0.0;
   Inverse2x2 inv;
   std::vector<double> col0;
   std::vector<double> col1;

   Index size() const { return kind == PivotKind::TwoByTwo ? 2 : 1; }

   static PivotStep one_by_one(Index q, double d, std::vector<double> col);
   /// Throws NumericalError when the determinant guard fails.
   static PivotStep two_by_two(Index q, double a_tt, double a_tm, double a_mm,
         std::vector<double> col0, std::vector<double> col1, double small);
   static PivotStep zero(Index q);
};

/**
 * Update one row of p entries for `step`. Only columns below `col_end` are
 * touched by the trailing update; the pivot columns receive the L values
 * (or their absolute-value analogue under RowRule::Absolute).
 */
void apply_step_to_row(std::span<double> row, const PivotStep& step, RowRule rule, Index col_end);

/** Largest absolute value found by a scan and the smallest row attaining it. */
struct Extremum {
   double value = 0.0;
   Index row = -1; ///< -1 when the scan range was empty

   /// Larger value wins; ties go to the smaller row; empty scans lose.
   static Extremum combine(const Extremum& a, const Extremum& b);
   bool operator==(const Extremum&) const = default;
};

/**
 * Mutable working copy of a supernode piece: an optional full symmetric A11,
 * scanned "test" rows and unscanned "shadow" rows.
 *
 * Rows are numbered globally: A11 rows 0..p-1, test rows from
 * p + test_offset. Shadow rows always follow the signed rule and never take
 * part in scans.
 */
class WorkingMatrix {
public:
   WorkingMatrix() = default;
   WorkingMatrix(Index p, bool owns_a11);

   /// A11 plus A21 as signed test rows.
   static WorkingMatrix from_supernode(const SupernodeMatrix& m);

   void set_a11(const SupernodeMatrix& m);
   void set_test_rows(const DenseMatrix& rows, RowRule rule, Index offset = 0);
   void set_shadow_rows(const DenseMatrix& rows);

   Index p() const { return p_; }
   bool owns_a11() const { return owns_a11_; }
   Index test_rows() const { return ntest_; }
   Index shadow_rows() const { return nshadow_; }
   Index test_offset() const { return test_offset_; }
   RowRule test_rule() const { return test_rule_; }

   /// A11 entry read through the lower triangle.
   double a11(Index i, Index j) const {
      return i >= j ? a11_[i * p_ + j] : a11_[j * p_ + i];
   }
   double test(Index r, Index j) const { return test_[r * p_ + j]; }
   double shadow(Index r, Index j) const { return shadow_[r * p_ + j]; }
   std::span<const double> test_row(Index r) const { return {test_.data() + r * p_, size_t(p_)}; }

   /**
    * Scan column `col` over owned A11 rows and test rows whose global index
    * is >= start_row and not listed in `exclude`.
    */
   Extremum column_max_below(Index col, Index start_row, std::span<const Index> exclude = {}) const;

   /// Symmetric swap of positions i and j in A11; column swap elsewhere.
   void permute_symmetric(Index i, Index j);

   PivotStep make_step_1x1(Index q) const;
   PivotStep make_step_2x2(Index q, double small) const;

   /// Applies a published step to every row held here.
   void apply(const PivotStep& step);
   /// Eliminates column q with a 1x1 pivot; throws on a zero pivot.
   void apply_1x1_pivot(Index q);
   /// Eliminates columns q, q+1 with a 2x2 pivot; throws when the guard fails.
   void apply_2x2_pivot(Index q, double small = PivotParams{}.small);

   /// Largest |entry| in columns >= from: A11 lower part with rows >= from, then test/shadow rows.
   double active_max(Index from, bool include_a11, bool include_test, bool include_shadow) const;

   DenseMatrix a11_matrix() const;
   DenseMatrix test_matrix() const;
   DenseMatrix shadow_matrix() const;
   /// True when the stored upper triangle mirrors the lower one bit for bit.
   bool a11_symmetric() const;

private:
   Index p_ = 0;
   bool owns_a11_ = false;
   std::vector<double> a11_; // row-major p x p, kept symmetric
   std::vector<double> test_;
   Index ntest_ = 0;
   RowRule test_rule_ = RowRule::Signed;
   Index test_offset_ = 0;
   std::vector<double> shadow_;
   Index nshadow_ = 0;
};

} // namespace pivotkit
