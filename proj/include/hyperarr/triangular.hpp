#pragma once

// Complete triangular arrangements in P^2: normal form, the rank matrices
// whose full column rank rules out non-Euler derivations in a given degree,
// and the initial-degree and freeness decisions built on them.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/derivations.hpp"
#include "hyperarr/exactq.hpp"

namespace hyperarr {

struct NormalizedTriangular {
  TriangularSpec spec;
  // New vertex v is old vertex permutation[v].
  std::array<std::size_t, 3> permutation{0, 1, 2};
};

// Relabels vertices so that s1 <= s2 <= s3 and rescales each form into
// x - a y, b x - z, y - c z. Ties keep the identity order where possible.
NormalizedTriangular normalize(const HypertetraSpec& spec);
NormalizedTriangular normalize(const TriangularSpec& spec);

// b_j^{-s} - (a_i c_r)^s, indices 0-based.
Rational f_power(const TriangularSpec& spec, std::size_t i, std::size_t j, std::size_t r, long s);

enum class MatrixCase { Low, High };

struct TriangularMatrixShape {
  unsigned d = 0;
  MatrixCase matrix_case = MatrixCase::Low;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// Requires s1 <= s2 <= s3 and s3 + 1 <= d <= s1 + s2.
TriangularMatrixShape matrix_shape(std::size_t s1, std::size_t s2, std::size_t s3, unsigned d);
std::size_t exprk(const TriangularSpec& spec, unsigned d);

struct ColumnLabel {
  char block;  // 'g', 'h', 'p', 'q' or 't'
  long f_exponent;
  long c_exponent;
};

struct TriangularMatrix {
  RationalMatrix matrix;
  std::vector<ColumnLabel> columns;
  TriangularMatrixShape shape;
};

// Rows in (i, j, r) lexicographic order, entry c_r^l * f^s for column (s, l).
TriangularMatrix build_M(const TriangularSpec& spec, unsigned d);

enum class EulerOnly { Yes, No, NotApplicable };
const char* to_string(EulerOnly e);

// Yes when the matrix has full column rank. NotApplicable when it has fewer
// rows than columns; callers then consult the syzygy solver.
EulerOnly only_euler_at(const TriangularSpec& spec, unsigned d);

struct TriangularIndeg {
  unsigned indeg = 0;
  // First d in [s3+1, s1+s2] that fails, when one exists.
  std::optional<unsigned> d_A;
  // Degrees where the matrix test was inconclusive and the solver decided.
  std::vector<unsigned> deferred;
};

TriangularIndeg indeg_triangular(const TriangularSpec& spec);

struct TriangularClassification {
  FreenessVerdict verdict;
  std::optional<unsigned> k;
  // Per d in range: (d, rank, exprk).
  std::vector<std::array<std::size_t, 3>> ranks;
};

// Rank profile of a free arrangement with exponents (1, s3+1+k, s1+s2+1-k).
std::size_t expected_profile_rank(const TriangularSpec& spec, unsigned d, unsigned k);

// Requires s3 + 1 <= s1 + s2.
TriangularClassification classify_free(const TriangularSpec& spec);

}  // namespace hyperarr
