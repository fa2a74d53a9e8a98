#pragma once

// Exact rational scalars and linear algebra.
//
// Scalars are GMP rationals (always canonical: gcd(num, den) = 1, den > 0).
// Two matrix shapes are provided: a dense RationalMatrix for small systems
// (determinants, golden examples) and a SparseMatrix over the integers for
// the large structured systems built by the derivation solvers. Both go
// through the same fraction-free row-echelon engine.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperarr {

using BigInt = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  const std::vector<Rational>& entries() const { return entries_; }

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RationalVector multiply(const RationalMatrix& m, const RationalVector& v);

struct SparseEntry {
  std::size_t col;
  BigInt value;
};
// Sorted by column, no stored zeros.
using SparseRow = std::vector<SparseEntry>;

// Integer matrix stored by rows. Rational rows are scaled by the lcm of
// their denominators on insertion; row scaling changes neither the rank nor
// the kernel.
class SparseMatrix {
 public:
  explicit SparseMatrix(std::size_t cols) : cols_(cols) {}

  void add_row(SparseRow row);
  void add_row(const std::vector<std::pair<std::size_t, Rational>>& entries);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<SparseRow>& row_data() const { return rows_; }

  static SparseMatrix from_dense(const RationalMatrix& m);
  RationalMatrix to_dense() const;

 private:
  std::size_t cols_;
  std::vector<SparseRow> rows_;
};

// Incremental row echelon form over the integers. Every stored row is
// primitive with a positive leading entry.
class Echelon {
 public:
  explicit Echelon(std::size_t cols);

  // Reduces `row` against the stored pivots; keeps it when independent.
  bool insert(SparseRow row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  // Basis of the right kernel of the inserted rows, each vector scaled so its
  // first nonzero entry is 1, ordered by free column.
  std::vector<RationalVector> kernel() const;

 private:
  std::size_t cols_;
  std::vector<SparseRow> rows_;
  std::vector<int> pivot_of_col_;
};

struct EliminationOptions {
  // Rank mod a random 62-bit prime first; a full-rank answer mod p certifies
  // the exact rank (rank mod p <= rank over Q <= min(rows, cols)). Otherwise
  // the exact elimination runs.
  bool modular_prefilter = false;
  std::uint64_t prime_seed = 0x9e3779b97f4a7c15ULL;
};

std::size_t rank(const RationalMatrix& m);
std::size_t rank(const SparseMatrix& m, const EliminationOptions& options = {});
std::vector<RationalVector> nullspace(const RationalMatrix& m);
std::vector<RationalVector> nullspace(const SparseMatrix& m);

// Fraction-free Bareiss elimination; pivots on the smallest bit length.
Rational determinant(const RationalMatrix& m);

std::uint64_t random_prime_62(std::uint64_t seed);
std::size_t rank_mod_prime(const SparseMatrix& m, std::uint64_t prime);

// Scales a rational vector to the primitive integer vector with positive
// first nonzero entry.
std::vector<BigInt> primitive_integer_vector(std::span<const Rational> v);

}  // namespace hyperarr
