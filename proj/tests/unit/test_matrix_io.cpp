#include <sstream>

#include "doctest.h"

#include "../support/fixtures.hpp"

using namespace pivotkit;

namespace {

std::string error_of(const std::string& text, bool system = false) {
   std::istringstream in(text);
   try {
      if (system) read_symmetric_system(in);
      else read_supernode(in);
   } catch (const FormatError& e) {
      return e.what();
   }
   return "";
}

} // namespace

TEST_CASE("supernode round trip") {
   SUBCASE("example A21 with p = 3") {
      SupernodeMatrix m = SupernodeMatrix::from_blocks(DenseMatrix::identity(3), fixtures::example_a21());
      std::stringstream s;
      write_supernode(s, m);
      CHECK(s.str().find("%%supernode 8 3") != std::string::npos);
      SupernodeMatrix r = read_supernode(s);
      CHECK(r.values() == m.values());
   }
   SUBCASE("random values survive bit for bit") {
      SupernodeMatrix m = fixtures::random_supernode(30, 7, 2, false);
      std::stringstream s;
      write_supernode(s, m);
      CHECK(read_supernode(s).values() == m.values());
   }
}

TEST_CASE("malformed input") {
   CHECK(error_of("").find("malformed header") == 0);
   CHECK(error_of("%%MatrixMarket matrix array real general\n2 1\n1\n2\n").find("malformed header") == 0);
   CHECK(error_of("%%MatrixMarket tensor array real general\n").find("malformed header") == 0);
   CHECK(error_of("%%MatrixMarket matrix array complex general\n%%supernode 2 1\n2 1\n1\n2\n")
               .find("malformed header") == 0);
   CHECK(error_of("%%MatrixMarket matrix array real general\n%%supernode 3 1\n2 1\n1\n2\n")
               .find("dimension mismatch") == 0);
   CHECK(error_of("%%MatrixMarket matrix array real general\n%%supernode 2 1\n2 1\n1\n").find("dimension mismatch") == 0);
   CHECK(error_of("%%MatrixMarket matrix array real general\n%%supernode 2 1\n2 1\n1\n2\n3\n")
               .find("dimension mismatch") == 0);
}

TEST_CASE("coordinate input") {
   SUBCASE("symmetric storage expands") {
      std::istringstream in("%%MatrixMarket matrix coordinate real symmetric\n3 3 4\n1 1 4\n2 1 1\n3 3 2\n3 2 -1\n");
      DenseMatrix a = read_symmetric_system(in);
      CHECK(a == DenseMatrix::from_rows({{4, 1, 0}, {1, 0, -1}, {0, -1, 2}}));
   }
   SUBCASE("mirrored entries must agree") {
      std::string text = "%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 1\n1 2 3\n2 1 4\n";
      CHECK(error_of(text, true).find("non-symmetric") == 0);
   }
   SUBCASE("general storage must be symmetric for a system") {
      std::string text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 3\n2 1 4\n";
      CHECK(error_of(text, true).find("non-symmetric") == 0);
   }
   SUBCASE("entries outside the matrix") {
      std::string text = "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n";
      CHECK(error_of(text, true).find("dimension mismatch") == 0);
   }
   SUBCASE("rectangular system") {
      std::string text = "%%MatrixMarket matrix array real general\n2 1\n1\n2\n";
      CHECK(error_of(text, true).find("dimension mismatch") == 0);
   }
}

TEST_CASE("array symmetric input") {
   std::istringstream in("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n");
   CHECK(read_symmetric_system(in) == DenseMatrix::from_rows({{1, 2}, {2, 3}}));
}

TEST_CASE("vectors") {
   std::vector<double> v{1.0 / 3.0, -2.5, 1e-300};
   std::stringstream s;
   write_vector(s, v);
   CHECK(read_vector(s) == v);
   std::istringstream bare("1 2\n3.5\n");
   CHECK(read_vector(bare) == std::vector<double>{1, 2, 3.5});
   std::istringstream bad("1 x 2");
   CHECK_THROWS_AS(read_vector(bad), FormatError);
}

TEST_CASE("file helpers") {
   CHECK_THROWS_AS(load_supernode("/nonexistent/file.mtx"), Error);
   std::string path = "matrix_io_roundtrip.mtx";
   SupernodeMatrix m = fixtures::counterexample();
   save_supernode(path, m);
   CHECK(load_supernode(path).values() == m.values());
   std::remove(path.c_str());
}
