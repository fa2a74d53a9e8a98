#include "hyperarr/poly.hpp"

#include <sstream>

#include "hyperarr/error.hpp"

namespace hyperarr {

Monomial Monomial::from_exponents(const ExponentVector& e) {
  if (e.size() > kMaxVars) throw DimensionError("at most 8 variables are supported");
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] > 0xff) throw DimensionError("exponent exceeds 255");
    bits |= std::uint64_t{e[k]} << shift(k);
  }
  return Monomial(bits);
}

ExponentVector Monomial::exponents(std::size_t nvars) const {
  ExponentVector e(nvars);
  for (std::size_t k = 0; k < nvars; ++k) e[k] = exponent(k);
  return e;
}

bool Monomial::divisible_by(Monomial o) const {
  for (std::size_t k = 0; k < kMaxVars; ++k)
    if (exponent(k) < o.exponent(k)) return false;
  return true;
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars > kMaxVars) throw DimensionError("at most 8 variables are supported");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t k) {
  if (k >= nvars) throw DimensionError("variable index out of range");
  return term(nvars, Monomial::variable(k), 1);
}

Polynomial Polynomial::linear(const RationalVector& coeffs) {
  Polynomial p(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(Monomial::variable(k), coeffs[k]);
  return p;
}

Polynomial Polynomial::term(std::size_t nvars, Monomial m, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(m, c);
  return p;
}

Rational Polynomial::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = terms_.begin()->first.degree();
  return terms_.rbegin()->first.degree() == d;
}

Monomial Polynomial::leading_monomial() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  return terms_.begin()->second;
}

void Polynomial::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw DimensionError("polynomials over different variable counts");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, coef] : terms_) coef *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial out(a.nvars_);
  const Polynomial& big = a.terms_.size() >= b.terms_.size() ? a : b;
  const Polynomial& small = &big == &a ? b : a;
  Rational prod;
  for (const auto& [ms, cs] : small.terms_) {
    for (const auto& [mb, cb] : big.terms_) {
      prod = cs * cb;
      out.add_term(ms * mb, prod);
    }
  }
  return out;
}

Rational Polynomial::evaluate(const RationalVector& point) const {
  if (point.size() != nvars_) throw DimensionError("evaluation point has wrong length");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t k = 0; k < nvars_; ++k)
      for (unsigned e = m.exponent(k); e > 0; --e) t *= point[k];
    total += t;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1 && m.degree() > 0;
    if (!unit) out << hyperarr::to_string(mag);
    bool need_star = !unit;
    for (std::size_t k = 0; k < nvars_; ++k) {
      const unsigned e = m.exponent(k);
      if (e == 0) continue;
      if (need_star) out << '*';
      out << 'x' << k;
      if (e > 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial product(const std::vector<Polynomial>& factors, std::size_t nvars) {
  Polynomial acc = Polynomial::constant(nvars, 1);
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

Polynomial partial(const Polynomial& p, std::size_t k) {
  if (k >= p.nvars()) throw DimensionError("variable index out of range");
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(k);
    if (e == 0) continue;
    out.add_term(m.lower(k), c * e);
  }
  return out;
}

Polynomial substitute_var(const Polynomial& p, std::size_t k, const Polynomial& replacement) {
  if (k >= p.nvars()) throw DimensionError("variable index out of range");
  if (replacement.nvars() != p.nvars()) throw DimensionError("replacement has wrong variable count");
  std::vector<Polynomial> powers{Polynomial::constant(p.nvars(), 1)};
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(k);
    while (powers.size() <= e) powers.push_back(powers.back() * replacement);
    out += Polynomial::term(p.nvars(), m.without(k), c) * powers[e];
  }
  return out;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  if (nvars > kMaxVars) throw DimensionError("at most 8 variables are supported");
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  ExponentVector e(nvars, 0);
  // Lexicographically descending: give as much as possible to early variables.
  auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
    if (k + 1 == nvars) {
      e[k] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (unsigned x = left + 1; x-- > 0;) {
      e[k] = x;
      self(self, k + 1, left - x);
    }
  };
  rec(rec, 0, d);
  return out;
}

std::vector<ExponentVector> monomial_basis(std::size_t nvars, unsigned d) {
  std::vector<ExponentVector> out;
  for (Monomial m : monomials_of_degree(nvars, d)) out.push_back(m.exponents(nvars));
  return out;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace hyperarr
