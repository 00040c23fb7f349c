#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pivotkit/supernode.hpp"

namespace pivotkit {

enum class GeneratorKind { RandomIndefinite, DiagDominant, All2x2Accept, PathologicalRelaxed };

std::string to_string(GeneratorKind k);
/// random-indefinite, diag-dominant, all-2x2-accept, pathological-relaxed.
GeneratorKind parse_generator(std::string_view name);

struct GeneratorSpec {
   GeneratorKind kind = GeneratorKind::RandomIndefinite;
   Index n = 0;
   Index p = 0;
   std::uint64_t seed = 0;
   double u = 0.01;        ///< pathological-relaxed only
   double epsilon = 1e-6;  ///< pathological-relaxed only
};

/**
 * Full symmetric n x n system whose leading p columns form the supernode.
 *
 * - random-indefinite: entries uniform(-1,1), each diagonal shifted by +1 or -1.
 * - diag-dominant: off-diagonals uniform(-1,1), |a(i,i)| above the row sum, random sign.
 * - all-2x2-accept: A11 holds blocks [[0,10],[10,0]] plus 0.1 * uniform(-1,1) noise,
 *   A21 uniform(-1,1); the trailing block is diagonally dominant. Needs even p.
 * - pathological-relaxed: A11 tridiagonal (diagonal 1, 2, ..., 2; off-diagonal -1),
 *   A21 rows e_j / u for every column j, one row (1/u - epsilon) * ones, zero rows after;
 *   identity trailing block. Needs n >= 2p + 1.
 */
DenseMatrix generate_system(const GeneratorSpec& spec);

/// Leading p columns of generate_system(spec).
SupernodeMatrix generate(const GeneratorSpec& spec);

/// PIVOTKIT_SEED when set and numeric, otherwise `fallback`.
std::uint64_t resolve_seed(std::uint64_t fallback);

} // namespace pivotkit
