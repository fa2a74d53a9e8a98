#include "doctest.h"

#include <random>

#include "hyperarr/error.hpp"
#include "hyperarr/exactq.hpp"

using namespace hyperarr;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 4);
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = Rational(num(rng), den(rng));
      m(r, c).canonicalize();
    }
  return m;
}

// Leibniz expansion; independent of the elimination code.
Rational leibniz(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK(parse_rational("-1/3") == Rational(-1, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("2/-3"), ParseError);
}

TEST_CASE("rank examples") {
  CHECK(rank(RationalMatrix::identity(3)) == 3);
  CHECK(rank(RationalMatrix(4, 6)) == 0);
  CHECK(rank(RationalMatrix{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}) == 2);
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace(RationalMatrix::identity(2)).empty());
  auto k = nullspace(RationalMatrix{{1, -1}});
  REQUIRE(k.size() == 1);
  CHECK(k[0] == RationalVector{1, 1});
  CHECK(nullspace(RationalMatrix{{1, 2, 3}, {2, 4, 6}}).size() == 2);
}

TEST_CASE("determinant examples") {
  CHECK(determinant(RationalMatrix::identity(4)) == 1);
  CHECK(determinant(RationalMatrix{{1, 2, 3}, {4, 5, 6}, {1, 2, 3}}) == 0);
  CHECK(determinant(RationalMatrix{{0, 1}, {-1, 0}}) == 1);
  CHECK_THROWS_AS(determinant(RationalMatrix(2, 3)), DimensionError);
}

TEST_CASE("rank-nullity and kernel vectors on random matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    RationalMatrix m = random_matrix(rng, rows, cols, trial % 3 == 0 ? 1 : 5);
    // Force dependencies in some trials.
    if (rows > 2 && trial % 2 == 0)
      for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) * 3 - m(1, c) / 2;
    const auto kernel = nullspace(m);
    CHECK(rank(m) + kernel.size() == cols);
    for (const auto& v : kernel) {
      for (const auto& x : multiply(m, v)) CHECK(x == 0);
      auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
      REQUIRE(first != v.end());
      CHECK(*first == 1);
    }
  }
}

TEST_CASE("determinant agrees with Leibniz expansion") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 5;
    RationalMatrix m = random_matrix(rng, n, n, trial % 4 == 0 ? 1 : 9);
    CHECK(determinant(m) == leibniz(m));
    CHECK((determinant(m) != 0) == (rank(m) == n));
  }
}

TEST_CASE("modular prefilter never exceeds the exact rank") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    RationalMatrix m = random_matrix(rng, 2 + trial % 6, 2 + (trial / 6) % 6, 2);
    SparseMatrix s = SparseMatrix::from_dense(m);
    const std::size_t exact = rank(s);
    CHECK(rank_mod_prime(s, random_prime_62(trial)) <= exact);
    CHECK(rank(s, EliminationOptions{true, static_cast<std::uint64_t>(trial)}) == exact);
  }
  // A rank drop mod p: entries divisible by p.
  const std::uint64_t p = random_prime_62(1);
  SparseMatrix s(2);
  s.add_row(SparseRow{{0, BigInt(static_cast<unsigned long>(p))}, {1, BigInt(0)}});
  CHECK(rank_mod_prime(s, p) == 0);
  CHECK(rank(s, EliminationOptions{true, 1}) == 1);
}
