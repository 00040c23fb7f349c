#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "pivotkit/dense.hpp"

namespace pivotkit {

/** Threshold `u` and drop tolerance `small` used by every pivot test. */
struct PivotParams {
   double u = 0.01;
   double small = 1e-20;

   /// Throws DimensionError unless 0 < u <= 0.5 and small > 0.
   void validate() const;
};

/**
 * Dense n x p trapezoidal supernode: A11 (p x p, symmetric, lower triangle
 * authoritative) stacked over A21 ((n-p) x p).
 */
class SupernodeMatrix {
public:
   SupernodeMatrix() = default;
   SupernodeMatrix(Index n, Index p);
   /// Takes an n x p column-major matrix; p is its column count.
   explicit SupernodeMatrix(DenseMatrix values);

   static SupernodeMatrix from_blocks(const DenseMatrix& a11, const DenseMatrix& a21);
   /// Leading p columns of a full symmetric matrix.
   static SupernodeMatrix from_symmetric(const DenseMatrix& a, Index p);

   Index n() const { return values_.rows(); }
   Index p() const { return values_.cols(); }

   double operator()(Index i, Index j) const { return values_(i, j); }
   double& operator()(Index i, Index j) { return values_(i, j); }

   /// A11 entry read through the lower triangle.
   double a11(Index i, Index j) const { return i >= j ? values_(i, j) : values_(j, i); }
   /// A11 with the upper triangle mirrored from the lower one.
   DenseMatrix a11_block() const;
   DenseMatrix a21_block() const;
   const DenseMatrix& values() const { return values_; }

   /// Max |a(i,j)| over A11 (lower) and A21.
   double max_abs_entry() const;
   /// Throws NumericalError on NaN or infinity in the authoritative part.
   void require_finite() const;

private:
   DenseMatrix values_;
};

enum class PivotKind { OneByOne, TwoByTwo, Zero };

std::string to_string(PivotKind kind);

/** One diagonal block of D. Columns are original supernode column indices. */
struct PivotBlock {
   PivotKind kind = PivotKind::OneByOne;
   Index position = 0; ///< first eliminated position occupied by the block
   std::array<Index, 2> columns{-1, -1};
   double d11 = 0.0;
   double d21 = 0.0;
   double d22 = 0.0;

   Index size() const { return kind == PivotKind::TwoByTwo ? 2 : 1; }
   bool operator==(const PivotBlock&) const = default;
};

/**
 * Result of eliminating the pivotable columns of a supernode.
 *
 * L is n x nelim. Rows 0..p-1 follow the permuted order `perm`; rows p..n-1
 * follow the original A21 row order. `delayed` lists the original column
 * indices left uneliminated, in their final positions nelim..p-1.
 */
struct PartialFactorization {
   Index n = 0;
   Index p = 0;
   Index nelim = 0;
   std::vector<Index> perm;
   std::vector<PivotBlock> pivots;
   DenseMatrix L;
   std::vector<Index> delayed;

   /// Block diagonal D of size nelim x nelim.
   DenseMatrix d_matrix() const;
   /// Rows nelim..n-1 of L; delayed positions first, then A21 rows.
   DenseMatrix trailing_rows() const;
   double max_abs_l() const;
   Index zero_pivots() const;
};

/** mu[q]: largest |entry| of the active working matrix after q eliminations. */
struct GrowthTrace {
   std::vector<double> mu;
   /// Block sizes matching the steps between consecutive mu entries.
   std::vector<PivotKind> steps;

   double max_mu() const;
   /// max_q mu[q] / mu[0], or 1 when mu[0] is zero.
   double growth() const;
};

/** Pivot outcomes of one factorization. */
struct FactorStats {
   Index accepted_1x1 = 0;
   Index accepted_2x2 = 0;
   Index zero_pivots = 0;
   Index rejected_1x1 = 0;
   Index rejected_2x2 = 0;

   Index rejections() const { return rejected_1x1 + rejected_2x2; }
};

/** Quantities of the scaled determinant used to accept and invert a 2x2 block. */
struct DeterminantGuard {
   double detscale = 0.0;
   double detpiv0 = 0.0;
   double detpiv1 = 0.0;
   double detpiv = 0.0;
   bool passed = false;
};

/// Guard on D = [[a_tt, a_tm], [a_tm, a_mm]].
DeterminantGuard determinant_guard(double a_tt, double a_tm, double a_mm, double small);

/** Entries of D^{-1} for a symmetric 2x2 block. */
struct Inverse2x2 {
   double i11 = 0.0;
   double i21 = 0.0;
   double i22 = 0.0;
};

/// Inverse through the scaled determinant; requires guard.passed.
Inverse2x2 invert_2x2(const DeterminantGuard& guard, double a_tt, double a_tm, double a_mm);

/// S = L D L^T computed from the lower triangle and mirrored.
DenseMatrix form_schur(const DenseMatrix& L, std::span<const PivotBlock> pivots);

/// Applies the symmetric permutation `perm` (new position -> old index) to a full matrix.
DenseMatrix permute_symmetric(const DenseMatrix& a, std::span<const Index> perm);

/**
 * max |(P A P^T) - L D L^T| over the entries whose column is eliminated,
 * where rows run over all n rows of the supernode.
 */
double reconstruction_residual(const SupernodeMatrix& a, const PartialFactorization& f);

} // namespace pivotkit
