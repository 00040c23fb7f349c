#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pivotkit/supernode.hpp"

namespace pivotkit {

/** Malformed or inconsistent Matrix Market input. */
class FormatError : public Error {
public:
   using Error::Error;
};

/**
 * Dense Matrix Market "array real general" file with a "%%supernode n p"
 * comment line. Values are written with 17 significant digits.
 */
void write_supernode(std::ostream& out, const SupernodeMatrix& m);
SupernodeMatrix read_supernode(std::istream& in);

/**
 * Reads a real Matrix Market matrix: array general/symmetric or coordinate
 * general/symmetric. Symmetric storage is expanded. In coordinate input an
 * entry given twice at (i,j) and (j,i) must carry the same value.
 */
DenseMatrix read_matrix_market(std::istream& in);

/// read_matrix_market, then requires a square matrix equal to its transpose.
DenseMatrix read_symmetric_system(std::istream& in);

void write_matrix_market(std::ostream& out, const DenseMatrix& a);

/// Matrix Market array with one column.
void write_vector(std::ostream& out, std::span<const double> v);
/// Matrix Market array with one column, or a bare whitespace-separated list.
std::vector<double> read_vector(std::istream& in);

void save_supernode(const std::string& path, const SupernodeMatrix& m);
SupernodeMatrix load_supernode(const std::string& path);
DenseMatrix load_symmetric_system(const std::string& path);
std::vector<double> load_vector(const std::string& path);
void save_vector(const std::string& path, std::span<const double> v);

} // namespace pivotkit
