#include <random>

#include "doctest.h"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace pivotkit;

namespace {

double scale_of(const Eigen::MatrixXd& a) { return std::max(1.0, a.cwiseAbs().maxCoeff()); }

/// Checks the working matrix against an n x p oracle over columns >= from.
void check_against(const WorkingMatrix& w, const Eigen::MatrixXd& ref, Index from, double rel) {
   Index p = w.p();
   double tol = rel * scale_of(ref);
   for (Index k = from; k < p; ++k) {
      for (Index i = k; i < p; ++i) CHECK(std::fabs(w.a11(i, k) - ref(i, k)) <= tol);
      for (Index r = 0; r < w.test_rows(); ++r) CHECK(std::fabs(w.test(r, k) - ref(p + r, k)) <= tol);
   }
}

} // namespace

TEST_CASE("PivotParams validation") {
   CHECK_NOTHROW(PivotParams{}.validate());
   CHECK_NOTHROW((PivotParams{0.5, 1e-20}.validate()));
   CHECK_THROWS_AS((PivotParams{0.0, 1e-20}.validate()), DimensionError);
   CHECK_THROWS_AS((PivotParams{0.6, 1e-20}.validate()), DimensionError);
   CHECK_THROWS_AS((PivotParams{0.1, 0.0}.validate()), DimensionError);
   CHECK(PivotParams{}.u == 0.01);
   CHECK(PivotParams{}.small == 1e-20);
}

TEST_CASE("SupernodeMatrix construction") {
   SUBCASE("p larger than n is rejected") { CHECK_THROWS_AS(SupernodeMatrix(2, 3), DimensionError); }
   SUBCASE("upper triangle of A11 is never read") {
      SupernodeMatrix m = fixtures::counterexample();
      SupernodeMatrix g = m;
      g(0, 1) = std::nan("");
      CHECK_NOTHROW(g.require_finite());
      CHECK(g.a11(0, 1) == -1.0);
      CHECK(factor_tpp(g).factors.nelim == factor_tpp(m).factors.nelim);
   }
   SUBCASE("non-finite values are rejected") {
      SupernodeMatrix m = fixtures::counterexample();
      m(4, 1) = INFINITY;
      CHECK_THROWS_AS(m.require_finite(), NumericalError);
      CHECK_THROWS_AS(factor_tpp(m), NumericalError);
   }
   SUBCASE("from_symmetric takes the leading columns") {
      DenseMatrix a = DenseMatrix::from_rows({{4, 1, 2}, {1, 5, 3}, {2, 3, 6}});
      SupernodeMatrix m = SupernodeMatrix::from_symmetric(a, 2);
      CHECK(m.n() == 3);
      CHECK(m.p() == 2);
      CHECK(m(2, 1) == 3.0);
      CHECK(m.a21_block() == DenseMatrix::from_rows({{2, 3}}));
   }
}

TEST_CASE("column_max_below") {
   SUBCASE("example A21, second column") {
      SupernodeMatrix m = SupernodeMatrix::from_blocks(DenseMatrix::identity(3), fixtures::example_a21());
      WorkingMatrix w = WorkingMatrix::from_supernode(m);
      Extremum e = w.column_max_below(1, 3);
      CHECK(e.value == 10.0);
      CHECK(e.row == 3);
   }
   SUBCASE("single row holding -3") {
      SupernodeMatrix m(DenseMatrix::from_rows({{1}, {-3}}));
      WorkingMatrix w = WorkingMatrix::from_supernode(m);
      Extremum e = w.column_max_below(0, 1);
      CHECK(e.value == 3.0);
      CHECK(e.row == 1);
   }
   SUBCASE("empty range") {
      SupernodeMatrix m(DenseMatrix::from_rows({{1}, {-3}}));
      WorkingMatrix w = WorkingMatrix::from_supernode(m);
      Extremum e = w.column_max_below(0, 2);
      CHECK(e.value == 0.0);
      CHECK(e.row == -1);
      std::vector<Index> skip{1};
      CHECK(w.column_max_below(0, 1, skip).row == -1);
   }
   SUBCASE("random column agrees with a sort") {
      std::mt19937_64 rng(11);
      std::uniform_int_distribution<int> pick(-20, 20);
      for (int trial = 0; trial < 20; ++trial) {
         DenseMatrix a(51, 1);
         std::vector<double> col;
         for (Index i = 1; i < 51; ++i) {
            a(i, 0) = pick(rng) * 0.5; // repeated magnitudes exercise the tie rule
            col.push_back(a(i, 0));
         }
         WorkingMatrix w = WorkingMatrix::from_supernode(SupernodeMatrix(a));
         Extremum e = w.column_max_below(0, 1);
         auto [v, r] = oracles::sorted_column_max(col);
         CHECK(e.value == v);
         CHECK(e.row == r + 1);
      }
   }
   SUBCASE("combine prefers larger values, then smaller rows") {
      CHECK(Extremum::combine({2.0, 5}, {2.0, 3}).row == 3);
      CHECK(Extremum::combine({1.0, 1}, {2.0, 3}).row == 3);
      CHECK(Extremum::combine({}, {0.0, 4}).row == 4);
   }
}

TEST_CASE("apply_1x1_pivot") {
   SUBCASE("two by two hand example") {
      WorkingMatrix w = WorkingMatrix::from_supernode(SupernodeMatrix(DenseMatrix::from_rows({{4, 2}, {2, 3}})));
      w.apply_1x1_pivot(0);
      CHECK(w.a11(1, 0) == 0.5);
      CHECK(w.a11(1, 1) == 2.0);
   }
   SUBCASE("identity column leaves the trailing block alone") {
      DenseMatrix a = DenseMatrix::from_rows({{1, 0, 0}, {0, 2, 5}, {0, 5, 3}, {0, 7, 8}});
      WorkingMatrix w = WorkingMatrix::from_supernode(SupernodeMatrix(a));
      w.apply_1x1_pivot(0);
      CHECK(w.a11(1, 1) == 2.0);
      CHECK(w.a11(2, 1) == 5.0);
      CHECK(w.a11(2, 2) == 3.0);
      CHECK(w.test(0, 1) == 7.0);
      CHECK(w.test(0, 0) == 0.0);
   }
   SUBCASE("random 8x4 against block elimination") {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
         SupernodeMatrix m = fixtures::random_supernode(8, 4, seed, false);
         WorkingMatrix w = WorkingMatrix::from_supernode(m);
         w.apply_1x1_pivot(0);
         check_against(w, oracles::eliminate(oracles::full_supernode(m), 0, 1), 0, 1e-14);
         CHECK(w.a11_symmetric());
      }
   }
   SUBCASE("zero pivot is an error") {
      WorkingMatrix w = WorkingMatrix::from_supernode(SupernodeMatrix(DenseMatrix::from_rows({{0, 1}, {1, 3}})));
      CHECK_THROWS_AS(w.apply_1x1_pivot(0), NumericalError);
   }
}

TEST_CASE("apply_2x2_pivot") {
   SUBCASE("off-diagonal block swaps components") {
      DenseMatrix a = DenseMatrix::from_rows({{0, 1}, {1, 0}, {3, 7}});
      WorkingMatrix w = WorkingMatrix::from_supernode(SupernodeMatrix(a));
      w.apply_2x2_pivot(0);
      CHECK(w.test(0, 0) == 7.0);
      CHECK(w.test(0, 1) == 3.0);
   }
   SUBCASE("diagonal block scales") {
      DenseMatrix a = DenseMatrix::from_rows({{2, 0}, {0, 3}, {2, 3}});
      WorkingMatrix w = WorkingMatrix::from_supernode(SupernodeMatrix(a));
      w.apply_2x2_pivot(0);
      CHECK(w.test(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(w.test(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
   }
   SUBCASE("random 10x6 against block elimination") {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
         SupernodeMatrix m = fixtures::random_supernode(10, 6, seed, false);
         if (!determinant_guard(m(0, 0), m(1, 0), m(1, 1), 1e-20).passed) continue;
         WorkingMatrix w = WorkingMatrix::from_supernode(m);
         w.apply_2x2_pivot(0);
         check_against(w, oracles::eliminate(oracles::full_supernode(m), 0, 2), 0, 1e-14);
         CHECK(w.a11_symmetric());
      }
   }
   SUBCASE("singular block is an error") {
      DenseMatrix a = DenseMatrix::from_rows({{1, 1}, {1, 1}, {0, 0}});
      WorkingMatrix w = WorkingMatrix::from_supernode(SupernodeMatrix(a));
      CHECK_THROWS_AS(w.apply_2x2_pivot(0), NumericalError);
   }
}

TEST_CASE("form_schur") {
   std::vector<PivotBlock> one{PivotBlock{PivotKind::OneByOne, 0, {0, -1}, 3.0}};
   SUBCASE("zero L gives zero S") {
      DenseMatrix s = form_schur(DenseMatrix(4, 1), one);
      CHECK(s == DenseMatrix(4, 4));
   }
   SUBCASE("rank one") {
      DenseMatrix v = DenseMatrix::from_rows({{1}, {-2}, {0.5}});
      DenseMatrix s = form_schur(v, one);
      for (Index i = 0; i < 3; ++i)
         for (Index j = 0; j < 3; ++j) CHECK(s(i, j) == 3.0 * v(i, 0) * v(j, 0));
   }
   SUBCASE("matches A21 inv(A11) A21^T") {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
         SupernodeMatrix m = fixtures::random_supernode(20, 6, seed, seed % 2 == 0);
         Factorization f = factor_tpp(m);
         if (f.factors.nelim != m.p()) continue;
         DenseMatrix s = form_schur(f.factors.trailing_rows(), f.factors.pivots);
         Eigen::MatrixXd a11 = oracles::to_eigen(m.a11_block());
         Eigen::MatrixXd a21 = oracles::to_eigen(m.a21_block());
         Eigen::MatrixXd ref = a21 * a11.inverse() * a21.transpose();
         double tol = 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff());
         for (Index i = 0; i < s.rows(); ++i)
            for (Index j = 0; j < s.cols(); ++j) {
               CHECK(std::fabs(s(i, j) - ref(i, j)) <= tol);
               CHECK(s(i, j) == s(j, i));
            }
      }
   }
   SUBCASE("blocks must tile the columns") {
      CHECK_THROWS_AS(form_schur(DenseMatrix(3, 2), one), DimensionError);
   }
}

TEST_CASE("permute_symmetric") {
   SupernodeMatrix m = fixtures::random_supernode(7, 4, 3, false);
   WorkingMatrix w = WorkingMatrix::from_supernode(m);
   SUBCASE("i equals j") {
      WorkingMatrix v = w;
      v.permute_symmetric(2, 2);
      CHECK(v.a11_matrix() == w.a11_matrix());
      CHECK(v.test_matrix() == w.test_matrix());
   }
   SUBCASE("involution") {
      WorkingMatrix v = w;
      v.permute_symmetric(0, 3);
      v.permute_symmetric(0, 3);
      CHECK(v.a11_matrix() == w.a11_matrix());
      CHECK(v.test_matrix() == w.test_matrix());
   }
   SUBCASE("matches P A P^T on the full matrix") {
      DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {2, 3}, {4, 5}});
      WorkingMatrix v = WorkingMatrix::from_supernode(SupernodeMatrix(a));
      v.permute_symmetric(0, 1);
      Eigen::Matrix3d full;
      full << 1, 2, 4, 2, 3, 5, 4, 5, 9;
      Eigen::PermutationMatrix<3> perm;
      perm.indices() << 1, 0, 2;
      Eigen::Matrix3d ref = perm * full * perm.transpose();
      for (Index i = 0; i < 2; ++i)
         for (Index j = 0; j < 2; ++j) CHECK(v.a11(i, j) == ref(i, j));
      CHECK(v.test(0, 0) == ref(2, 0));
      CHECK(v.test(0, 1) == ref(2, 1));
   }
   SUBCASE("out of range") { CHECK_THROWS_AS(w.permute_symmetric(0, 4), DimensionError); }
   SUBCASE("full-matrix permutation helper") {
      DenseMatrix a = DenseMatrix::from_rows({{1, 2, 4}, {2, 3, 5}, {4, 5, 9}});
      std::vector<Index> perm{2, 0, 1};
      DenseMatrix b = permute_symmetric(a, perm);
      for (Index i = 0; i < 3; ++i)
         for (Index j = 0; j < 3; ++j) CHECK(b(i, j) == a(perm[i], perm[j]));
   }
}

TEST_CASE("2x2 determinant guard and inverse") {
   DeterminantGuard g = determinant_guard(2.0, 1.0, 3.0, 1e-20);
   REQUIRE(g.passed);
   Inverse2x2 inv = invert_2x2(g, 2.0, 1.0, 3.0);
   Eigen::Matrix2d d;
   d << 2, 1, 1, 3;
   Eigen::Matrix2d ref = d.inverse();
   CHECK(inv.i11 == doctest::Approx(ref(0, 0)).epsilon(1e-15));
   CHECK(inv.i21 == doctest::Approx(ref(1, 0)).epsilon(1e-15));
   CHECK(inv.i22 == doctest::Approx(ref(1, 1)).epsilon(1e-15));
   CHECK_FALSE(determinant_guard(1.0, 1.0, 1.0, 1e-20).passed);
   CHECK_THROWS_AS(invert_2x2(determinant_guard(1.0, 1.0, 1.0, 1e-20), 1.0, 1.0, 1.0), NumericalError);
}

TEST_CASE("reconstruction residual of complete factorizations") {
   for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      SupernodeMatrix m = fixtures::random_supernode(40, 12, seed, false);
      Factorization f = factor_tpp(m);
      CHECK(reconstruction_residual(m, f.factors) <= fixtures::residual_bound(m, f.growth));
      CHECK(f.factors.nelim + Index(f.factors.delayed.size()) == m.p());
      for (Index j = 0; j < f.factors.nelim; ++j) CHECK(f.factors.L(j, j) == 1.0);
   }
}
