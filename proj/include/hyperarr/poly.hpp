#pragma once

// Sparse multivariate polynomials with rational coefficients.
//
// Monomials are packed into one 64-bit word, eight bits per variable with
// variable 0 in the most significant byte, so at most eight variables and
// per-variable degree at most 255. With that packing, comparing packed words
// of equal total degree is lexicographic comparison of exponent vectors.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperarr/exactq.hpp"

namespace hyperarr {

inline constexpr std::size_t kMaxVars = 8;

using ExponentVector = std::vector<unsigned>;

class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial from_exponents(const ExponentVector& e);
  static Monomial variable(std::size_t k) { return Monomial(std::uint64_t{1} << shift(k)); }

  unsigned exponent(std::size_t k) const { return static_cast<unsigned>((bits_ >> shift(k)) & 0xff); }
  unsigned degree() const { return static_cast<unsigned>((bits_ * 0x0101010101010101ULL) >> 56); }
  ExponentVector exponents(std::size_t nvars) const;
  std::uint64_t packed() const { return bits_; }

  // Callers guarantee per-variable degrees stay below 256.
  Monomial operator*(Monomial o) const { return Monomial(bits_ + o.bits_); }
  bool divisible_by(Monomial o) const;
  Monomial without(std::size_t k) const { return Monomial(bits_ & ~(std::uint64_t{0xff} << shift(k))); }
  Monomial lower(std::size_t k) const { return Monomial(bits_ - (std::uint64_t{1} << shift(k))); }

  bool operator==(const Monomial&) const = default;

 private:
  explicit constexpr Monomial(std::uint64_t bits) : bits_(bits) {}
  static constexpr unsigned shift(std::size_t k) { return static_cast<unsigned>(8 * (kMaxVars - 1 - k)); }
  std::uint64_t bits_ = 0;
};

// Graded lexicographic order, largest first.
struct GrlexDescending {
  bool operator()(Monomial a, Monomial b) const {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.packed() > b.packed();
  }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  explicit Polynomial(std::size_t nvars = 0);
  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t k);
  // Linear form sum_k coeffs[k] x_k.
  static Polynomial linear(const RationalVector& coeffs);
  static Polynomial term(std::size_t nvars, Monomial m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(Monomial m) const;
  // Largest total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Monomial leading_monomial() const;
  const Rational& leading_coefficient() const;

  void add_term(Monomial m, const Rational& c);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const { return *this * Rational(-1); }

  Rational evaluate(const RationalVector& point) const;
  std::string to_string() const;

  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

 private:
  void check_compatible(const Polynomial& o) const;

  std::size_t nvars_;
  TermMap terms_;
};

Polynomial multiply(const Polynomial& p, const Polynomial& q);
Polynomial product(const std::vector<Polynomial>& factors, std::size_t nvars);
Polynomial partial(const Polynomial& p, std::size_t k);
// Image of p under x_k <- replacement.
Polynomial substitute_var(const Polynomial& p, std::size_t k, const Polynomial& replacement);

// All monomials of total degree d, in descending graded lexicographic order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);
std::vector<ExponentVector> monomial_basis(std::size_t nvars, unsigned d);

BigInt binomial(long n, long k);

}  // namespace hyperarr
