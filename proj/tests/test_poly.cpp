#include "doctest.h"

#include <optional>
#include <random>

#include "hyperarr/error.hpp"
#include "hyperarr/poly.hpp"

using namespace hyperarr;

namespace {

Polynomial x(std::size_t n, std::size_t k) { return Polynomial::variable(n, k); }

// Long division by the leading term; nullopt when a remainder survives.
std::optional<Polynomial> divide_exactly(Polynomial p, const Polynomial& divisor) {
  Polynomial q(p.nvars());
  const Monomial lead = divisor.leading_monomial();
  const Rational lc = divisor.leading_coefficient();
  while (!p.is_zero()) {
    const Monomial m = p.leading_monomial();
    if (!m.divisible_by(lead)) return std::nullopt;
    ExponentVector e = m.exponents(p.nvars()), l = lead.exponents(p.nvars());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= l[k];
    Polynomial t = Polynomial::term(p.nvars(), Monomial::from_exponents(e), p.leading_coefficient() / lc);
    q += t;
    p -= t * divisor;
  }
  return q;
}

Polynomial random_linear(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-3, 3);
  RationalVector c(n);
  for (auto& v : c) v = d(rng);
  if (c[0] == 0) c[0] = 1;
  return Polynomial::linear(c);
}

}  // namespace

TEST_CASE("multiply examples") {
  CHECK((x(2, 0) * x(2, 1)).to_string() == "x0*x1");
  CHECK(((x(2, 0) + x(2, 1)) * (x(2, 0) - x(2, 1))).to_string() == "x0^2 - x1^2");
  Polynomial f = x(3, 0) * x(3, 1) * x(3, 2) * (x(3, 0) + x(3, 1) + x(3, 2));
  CHECK(f.terms().size() == 3);
  CHECK(f.degree() == 4);
  CHECK(f.to_string() == "x0^2*x1*x2 + x0*x1^2*x2 + x0*x1*x2^2");
  CHECK_THROWS_AS(x(2, 0) * x(3, 0), DimensionError);
}

TEST_CASE("partial examples") {
  CHECK(partial(x(2, 0) * x(2, 0) * x(2, 1), 0) == x(2, 0) * x(2, 1) * Rational(2));
  CHECK(partial(x(3, 0) * x(3, 1), 2).is_zero());
  Polynomial f = x(3, 0) * x(3, 1) * x(3, 2) * (x(3, 0) + x(3, 1) + x(3, 2));
  Polynomial expected = x(3, 0) * x(3, 1) * x(3, 2) * Rational(2) + x(3, 1) * x(3, 1) * x(3, 2) +
                        x(3, 1) * x(3, 2) * x(3, 2);
  CHECK(partial(f, 0) == expected);
  CHECK_THROWS_AS(partial(f, 3), DimensionError);
}

TEST_CASE("substitute examples") {
  CHECK(substitute_var(x(2, 0) - x(2, 1), 1, x(2, 0)).is_zero());
  CHECK(substitute_var(x(2, 0) * x(2, 0), 0, x(2, 1) * Rational(2)) == x(2, 1) * x(2, 1) * Rational(4));
  const Rational ai(3, 2), aj(-5);
  Polynomial l = x(3, 0) * ai + x(3, 2) * aj;
  CHECK(substitute_var(l, 0, x(3, 2) * Rational(-aj / ai)).is_zero());
}

TEST_CASE("monomial basis") {
  auto b = monomial_basis(3, 1);
  CHECK(b == std::vector<ExponentVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(monomial_basis(3, 2).size() == 6);
  CHECK(monomial_basis(3, 2).front() == ExponentVector{2, 0, 0});
  CHECK(monomial_basis(3, 2)[1] == ExponentVector{1, 1, 0});
  CHECK(monomial_basis(4, 0) == std::vector<ExponentVector>{{0, 0, 0, 0}});
  for (std::size_t n = 1; n <= 6; ++n)
    for (unsigned d = 0; d <= 6; ++d) CHECK(BigInt(monomial_basis(n, d).size()) == binomial(n - 1 + d, n - 1));
}

TEST_CASE("Euler identity on random products of linear forms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 4;
    std::vector<Polynomial> forms;
    for (int i = 0; i < 1 + trial % 6; ++i) forms.push_back(random_linear(rng, n));
    Polynomial f = product(forms, n);
    Polynomial euler(n);
    for (std::size_t k = 0; k < n; ++k) euler += x(n, k) * partial(f, k);
    CHECK(euler == f * Rational(static_cast<long>(forms.size())));
    CHECK(f.is_homogeneous());
  }
}

TEST_CASE("substitution vanishes exactly when the form divides") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<Polynomial> forms;
    for (int i = 0; i < 1 + trial % 4; ++i) forms.push_back(random_linear(rng, n));
    Polynomial p = product(forms, n);
    // The form x_k - L where L avoids x_k.
    const std::size_t k = trial % n;
    RationalVector lc(n);
    std::uniform_int_distribution<int> d(-2, 2);
    for (std::size_t j = 0; j < n; ++j) lc[j] = j == k ? Rational(0) : Rational(d(rng));
    Polynomial L = Polynomial::linear(lc);
    if (trial % 3 == 0) p = p * (x(n, k) - L);
    const bool vanishes = substitute_var(p, k, L).is_zero();
    CHECK(vanishes == divide_exactly(p, x(n, k) - L).has_value());
  }
}

TEST_CASE("multiplication is commutative and associative") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial a = random_linear(rng, 3) * random_linear(rng, 3);
    Polynomial b = random_linear(rng, 3) + Polynomial::constant(3, trial);
    Polynomial c = random_linear(rng, 3);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}
