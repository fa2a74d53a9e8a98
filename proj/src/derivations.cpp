#include "hyperarr/derivations.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "hyperarr/error.hpp"
#include "hyperarr/lattice.hpp"

namespace hyperarr {

namespace {

using MonomialIndex = std::unordered_map<std::uint64_t, std::size_t>;

MonomialIndex index_of(const std::vector<Monomial>& monos) {
  MonomialIndex idx;
  for (std::size_t i = 0; i < monos.size(); ++i) idx.emplace(monos[i].packed(), i);
  return idx;
}

// Rows keyed by monomial, collected column by column.
struct RowCollector {
  std::map<std::uint64_t, std::vector<std::pair<std::size_t, Rational>>> rows;
  void add(Monomial m, std::size_t col, const Rational& v) {
    if (v != 0) rows[m.packed()].emplace_back(col, v);
  }
  void flush(SparseMatrix& out) {
    for (auto& [m, entries] : rows) out.add_row(entries);
    rows.clear();
  }
};

Polynomial primitive_polynomial(const LinearForm& f) {
  const auto v = f.primitive();
  Polynomial p(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) p.add_term(Monomial::variable(k), Rational(v[k]));
  return p;
}

// Defining polynomial with every form scaled to a primitive integer vector.
Polynomial integral_defining_poly(const Arrangement& a) {
  Polynomial f = Polynomial::constant(a.nvars(), 1);
  for (const auto& l : a.forms()) f = f * primitive_polynomial(l);
  return f;
}

SparseMatrix transpose(const SparseMatrix& m, std::size_t rows) {
  std::vector<SparseRow> cols(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row_data()[r]) cols[e.col].push_back({r, e.value});
  SparseMatrix t(rows);
  for (auto& c : cols) t.add_row(std::move(c));
  return t;
}

// Columns (k, u) of the Jacobian system; one sparse row per column.
SparseMatrix syz_system_transposed(const Arrangement& a, unsigned d, std::size_t& row_count) {
  const std::size_t nv = a.nvars();
  const Polynomial f = integral_defining_poly(a);
  const auto monos = monomials_of_degree(nv, d);
  const unsigned target = d + static_cast<unsigned>(a.size()) - 1;
  const auto rows = monomials_of_degree(nv, a.size() == 0 ? 0 : target);
  const MonomialIndex row_idx = index_of(rows);
  row_count = rows.size();
  SparseMatrix t(rows.size());
  if (a.size() == 0) {
    for (std::size_t c = 0; c < nv * monos.size(); ++c) t.add_row(SparseRow{});
    return t;
  }
  for (std::size_t k = 0; k < nv; ++k) {
    const Polynomial dk = partial(f, k);
    for (const Monomial u : monos) {
      SparseRow row;
      for (const auto& [m, c] : dk.terms()) row.push_back({row_idx.at((m * u).packed()), c.get_num()});
      t.add_row(std::move(row));
    }
  }
  return t;
}

}  // namespace

std::size_t derivation_column(std::size_t k, std::size_t monomial_index, std::size_t monomial_count) {
  return k * monomial_count + monomial_index;
}

Derivation derivation_from_vector(const RationalVector& v, std::size_t nvars, unsigned d) {
  const auto monos = monomials_of_degree(nvars, d);
  if (v.size() != nvars * monos.size()) throw DimensionError("vector does not match the derivation layout");
  Derivation theta(nvars, Polynomial(nvars));
  for (std::size_t k = 0; k < nvars; ++k)
    for (std::size_t i = 0; i < monos.size(); ++i) theta[k].add_term(monos[i], v[derivation_column(k, i, monos.size())]);
  return theta;
}

RationalVector derivation_to_vector(const Derivation& theta, unsigned d) {
  const std::size_t nv = theta.size();
  const auto monos = monomials_of_degree(nv, d);
  const MonomialIndex idx = index_of(monos);
  RationalVector v(nv * monos.size());
  for (std::size_t k = 0; k < nv; ++k)
    for (const auto& [m, c] : theta[k].terms()) {
      auto it = idx.find(m.packed());
      if (it == idx.end()) throw DimensionError("derivation component is not homogeneous of the given degree");
      v[derivation_column(k, it->second, monos.size())] = c;
    }
  return v;
}

SparseMatrix der_system(const Arrangement& a, unsigned d) {
  const std::size_t nv = a.nvars();
  const auto monos = monomials_of_degree(nv, d);
  SparseMatrix out(nv * monos.size());
  for (const auto& form : a.forms()) {
    const auto h = form.primitive();
    const std::size_t p = static_cast<std::size_t>(std::find_if(h.begin(), h.end(), [](const BigInt& x) { return x != 0; }) - h.begin());
    // x_p <- -(sum_{q != p} h_q x_q) / h_p
    RationalVector repl(nv);
    for (std::size_t q = 0; q < nv; ++q)
      if (q != p) repl[q] = Rational(-h[q], h[p]);
    for (auto& r : repl) r.canonicalize();
    const Polynomial replacement = Polynomial::linear(repl);
    std::vector<Polynomial> image;  // image of each degree-d monomial
    image.reserve(monos.size());
    for (const Monomial u : monos) image.push_back(substitute_var(Polynomial::term(nv, u, 1), p, replacement));
    RowCollector rc;
    for (std::size_t k = 0; k < nv; ++k) {
      if (h[k] == 0) continue;
      for (std::size_t i = 0; i < monos.size(); ++i)
        for (const auto& [m, c] : image[i].terms()) rc.add(m, derivation_column(k, i, monos.size()), c * h[k]);
    }
    rc.flush(out);
  }
  return out;
}

SparseMatrix syz_system(const Arrangement& a, unsigned d) {
  std::size_t rows = 0;
  const SparseMatrix t = syz_system_transposed(a, d, rows);
  return transpose(t, t.rows());
}

std::size_t der_dim(const Arrangement& a, unsigned d, const EliminationOptions& options) {
  const SparseMatrix m = der_system(a, d);
  return m.cols() - rank(m, options);
}

DerBasis der_basis(const Arrangement& a, unsigned d) {
  DerBasis out;
  out.degree = d;
  for (const auto& v : nullspace(der_system(a, d))) out.elements.push_back(derivation_from_vector(v, a.nvars(), d));
  return out;
}

std::size_t syz_dim(const Arrangement& a, unsigned d, const EliminationOptions& options) {
  std::size_t rows = 0;
  const SparseMatrix t = syz_system_transposed(a, d, rows);
  return t.rows() - rank(t, options);
}

std::vector<Derivation> syz_basis(const Arrangement& a, unsigned d) {
  std::vector<Derivation> out;
  for (const auto& v : nullspace(syz_system(a, d))) out.push_back(derivation_from_vector(v, a.nvars(), d));
  return out;
}

std::optional<unsigned> indeg_syz(const Arrangement& a, unsigned cap) {
  for (unsigned d = 0; d <= cap; ++d)
    if (syz_dim(a, d) > 0) return d;
  return std::nullopt;
}

Polynomial apply_derivation(const Derivation& theta, const Polynomial& p) {
  if (theta.size() != p.nvars()) throw DimensionError("derivation and polynomial disagree on variables");
  Polynomial out(p.nvars());
  for (std::size_t k = 0; k < theta.size(); ++k)
    if (!theta[k].is_zero()) out += theta[k] * partial(p, k);
  return out;
}

bool is_logarithmic(const Arrangement& a, const Derivation& theta) {
  if (theta.size() != a.nvars()) throw DimensionError("derivation has the wrong number of components");
  for (const auto& form : a.forms()) {
    const Polynomial image = apply_derivation(theta, form.to_polynomial());
    const std::size_t p = static_cast<std::size_t>(__builtin_ctz(form.support()));
    RationalVector repl(a.nvars());
    for (std::size_t q = 0; q < a.nvars(); ++q)
      if (q != p) repl[q] = -form.coeffs[q] / form.coeffs[p];
    if (!substitute_var(image, p, Polynomial::linear(repl)).is_zero()) return false;
  }
  return true;
}

SparseMatrix structured_system(const HypertetraSpec& spec, unsigned d) {
  spec.validate();
  const std::size_t nv = spec.n + 1;
  if (d == 0) return SparseMatrix(0);
  const auto monos = monomials_of_degree(nv, d - 1);
  SparseMatrix out(nv * monos.size());
  for (const auto& [pair, forms] : spec.inner) {
    const auto [i, j] = pair;
    for (const auto& f : forms) {
      // a_i x_i f_i + a_j x_j f_j with x_i <- rho x_j.
      const Rational rho = -f.aj / f.ai;
      std::vector<Rational> powers{Rational(1)};
      RowCollector rc;
      for (const std::size_t k : {i, j}) {
        const Rational& ak = k == i ? f.ai : f.aj;
        for (std::size_t u = 0; u < monos.size(); ++u) {
          const Monomial m = monos[u] * Monomial::variable(k);
          const unsigned e = m.exponent(i);
          while (powers.size() <= e) powers.push_back(powers.back() * rho);
          ExponentVector ev = m.exponents(nv);
          ev[j] += ev[i];
          ev[i] = 0;
          rc.add(Monomial::from_exponents(ev), derivation_column(k, u, monos.size()), ak * powers[e]);
        }
      }
      rc.flush(out);
    }
  }
  return out;
}

std::size_t structured_der_dim(const HypertetraSpec& spec, unsigned d) {
  const SparseMatrix m = structured_system(spec, d);
  return m.cols() - rank(m);
}

unsigned dimcan_degree(const HypertetraSpec& spec, std::size_t i0) {
  unsigned total = 1;
  for (std::size_t j = 0; j <= spec.n; ++j)
    if (j != i0) total += static_cast<unsigned>(spec.s(i0, j));
  return total;
}

std::size_t dimcan_vertex(const HypertetraSpec& spec) {
  std::size_t best = 0;
  for (std::size_t i = 1; i <= spec.n; ++i)
    if (dimcan_degree(spec, i) < dimcan_degree(spec, best)) best = i;
  return best;
}

Derivation dimcan_syzygy(const HypertetraSpec& spec, std::size_t i0) {
  spec.validate();
  if (i0 > spec.n) throw DimensionError("vertex index out of range");
  const std::size_t nv = spec.n + 1;
  const Arrangement a = realize(spec);
  // h: x_{i0} times the inner forms through the faces at i0.
  Polynomial h = Polynomial::variable(nv, i0);
  for (const auto& [pair, forms] : spec.inner) {
    if (pair.first != i0 && pair.second != i0) continue;
    for (const auto& f : forms) {
      RationalVector c(nv);
      c[pair.first] = f.ai;
      c[pair.second] = f.aj;
      h = h * Polynomial::linear(c);
    }
  }
  const Polynomial P = partial(h, i0);
  const Rational deg(static_cast<long>(a.size()));
  Derivation out;
  for (std::size_t k = 0; k < nv; ++k) {
    Polynomial comp = Polynomial::variable(nv, k) * P;
    if (k == i0) comp -= h * deg;
    out.push_back(std::move(comp));
  }
  const Polynomial f = defining_poly(a);
  if (!apply_derivation(out, f).is_zero()) throw InvariantError("explicit syzygy fails sum comp_k df/dx_k = 0");
  return out;
}

Polynomial derivation_determinant(const std::vector<Derivation>& thetas) {
  const std::size_t n = thetas.size();
  if (n == 0) return Polynomial::constant(0, 1);
  const std::size_t nv = thetas[0].size();
  for (const auto& t : thetas)
    if (t.size() != n) throw DimensionError("determinant needs a square coefficient matrix");
  if (n > 20) throw DimensionError("determinant size too large");
  // Laplace expansion row by row over subsets of used columns.
  std::vector<std::optional<Polynomial>> level(std::size_t{1} << n);
  level[0] = Polynomial::constant(nv, 1);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::optional<Polynomial>> next(level.size());
    for (std::size_t s = 0; s < level.size(); ++s) {
      if (!level[s] || level[s]->is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if ((s >> c) & 1) continue;
        if (thetas[r][c].is_zero()) continue;
        const int above = __builtin_popcountll(s >> (c + 1));
        Polynomial term = *level[s] * thetas[r][c];
        if (above % 2) term *= Rational(-1);
        auto& slot = next[s | (std::size_t{1} << c)];
        if (slot) *slot += term;
        else slot = std::move(term);
      }
    }
    level = std::move(next);
  }
  return level.back() ? *level.back() : Polynomial(nv);
}

bool saito_verify(const Arrangement& a, const std::vector<Derivation>& thetas) {
  if (thetas.size() != a.nvars()) return false;
  for (const auto& t : thetas)
    if (!is_logarithmic(a, t)) return false;
  const Polynomial det = derivation_determinant(thetas);
  if (det.is_zero()) return false;
  const Polynomial f = defining_poly(a);
  const Rational c = det.leading_coefficient() / f.leading_coefficient();
  return det == f * c;
}

std::vector<unsigned> minimal_generator_degrees(const Arrangement& a, unsigned cap) {
  std::vector<unsigned> out;
  const std::size_t nv = a.nvars();
  std::vector<Derivation> previous;
  for (unsigned d = 0; d <= cap; ++d) {
    const std::vector<Derivation> basis = d < cap ? syz_basis(a, d) : std::vector<Derivation>{};
    const std::size_t dim = d < cap ? basis.size() : syz_dim(a, d);
    std::size_t generated = 0;
    if (!previous.empty()) {
      const auto monos = monomials_of_degree(nv, d);
      SparseMatrix shifted(nv * monos.size());
      for (const auto& b : previous)
        for (std::size_t k = 0; k < nv; ++k) {
          Derivation t = b;
          for (auto& comp : t) comp = comp * Polynomial::variable(nv, k);
          const RationalVector v = derivation_to_vector(t, d);
          std::vector<std::pair<std::size_t, Rational>> entries;
          for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) entries.emplace_back(i, v[i]);
          shifted.add_row(entries);
        }
      generated = rank(shifted);
    }
    for (std::size_t i = generated; i < dim; ++i) out.push_back(d);
    previous = basis;
  }
  return out;
}

std::string to_string(FreenessVerdict::Kind kind) {
  switch (kind) {
    case FreenessVerdict::Kind::Free: return "free";
    case FreenessVerdict::Kind::NotFree: return "not-free";
    case FreenessVerdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

BigInt free_hilbert(std::size_t n, const std::vector<unsigned>& exponents, unsigned d) {
  BigInt total = 0;
  for (unsigned e : exponents)
    if (e <= d) total += binomial(static_cast<long>(n + d - e), static_cast<long>(n));
  return total;
}

FreenessVerdict freeness_decide(const Arrangement& a, unsigned cap, std::uint64_t seed) {
  FreenessVerdict v;
  v.cap = cap;
  const auto chi = char_poly(a);
  const auto roots = integer_roots(chi);
  if (!roots) {
    v.kind = FreenessVerdict::Kind::NotFree;
    v.certificate = "characteristic polynomial " + char_poly_to_string(chi) + " has no nonnegative integer factorization";
    return v;
  }
  std::vector<unsigned> exps = *roots;
  std::sort(exps.begin(), exps.end());
  if (a.n() <= 1) {
    v.kind = FreenessVerdict::Kind::Free;
    v.exponents = exps;
    v.certificate = "arrangements in dimension at most 1 are free";
    return v;
  }
  const unsigned top = exps.back();
  if (top > cap) {
    v.kind = FreenessVerdict::Kind::Unknown;
    v.certificate = "candidate exponent " + std::to_string(top) + " exceeds the degree cap";
    return v;
  }
  std::map<unsigned, DerBasis> bases;
  for (unsigned d = 0; d <= top; ++d) {
    const bool needed = std::find(exps.begin(), exps.end(), d) != exps.end();
    std::size_t dim = 0;
    if (needed) {
      bases[d] = der_basis(a, d);
      dim = bases[d].elements.size();
    } else {
      dim = der_dim(a, d);
    }
    const BigInt expected = free_hilbert(a.n(), exps, d);
    if (BigInt(dim) != expected) {
      v.kind = FreenessVerdict::Kind::NotFree;
      v.certificate = "dim Der_" + std::to_string(d) + " = " + std::to_string(dim) + " but a free module with exponents from the characteristic polynomial would give " + expected.get_str();
      return v;
    }
  }
  std::map<unsigned, std::size_t> multiplicity;
  for (unsigned e : exps) ++multiplicity[e];
  for (int trial = 0; trial < kSaitoTrials; ++trial) {
    std::mt19937_64 rng(seed * 0x100000001b3ULL + static_cast<std::uint64_t>(trial));
    std::uniform_int_distribution<int> coef(-5, 5);
    std::vector<Derivation> picks;
    for (const auto& [e, mult] : multiplicity) {
      const auto& elems = bases[e].elements;
      for (std::size_t i = 0; i < mult; ++i) {
        Derivation t(a.nvars(), Polynomial(a.nvars()));
        for (const auto& b : elems) {
          const int c = coef(rng);
          if (c == 0) continue;
          for (std::size_t k = 0; k < t.size(); ++k) t[k] += b[k] * Rational(c);
        }
        picks.push_back(std::move(t));
      }
    }
    if (saito_verify(a, picks)) {
      v.kind = FreenessVerdict::Kind::Free;
      v.exponents = exps;
      v.certificate = "Saito determinant is a nonzero multiple of the defining polynomial";
      return v;
    }
  }
  v.kind = FreenessVerdict::Kind::Unknown;
  v.certificate = "Saito check failed in " + std::to_string(kSaitoTrials) + " random trials";
  return v;
}

unsigned default_cap(const Arrangement& a) {
  if (a.is_complete_hypertetrahedral()) {
    const HypertetraSpec spec = extract_spec(a);
    return dimcan_degree(spec, dimcan_vertex(spec));
  }
  return static_cast<unsigned>(a.size());
}

Derivation lemma_section_lift(const Arrangement& a, const Arrangement& enlarged, const Derivation& theta) {
  if (a.n() != enlarged.n()) throw DimensionError("arrangements live in different spaces");
  std::vector<bool> old(enlarged.size(), false);
  for (const auto& f : a.forms()) {
    bool found = false;
    for (std::size_t i = 0; i < enlarged.size(); ++i)
      if (enlarged[i].proportional_to(f)) old[i] = found = true;
    if (!found) throw PreconditionError("enlarged arrangement does not contain " + f.to_string());
  }
  if (!is_logarithmic(a, theta)) throw PreconditionError("derivation is not logarithmic for the smaller arrangement");
  Polynomial g = Polynomial::constant(a.nvars(), 1);
  for (std::size_t i = 0; i < enlarged.size(); ++i)
    if (!old[i]) g = g * enlarged[i].to_polynomial();
  Derivation out = theta;
  for (auto& comp : out) comp = comp * g;
  if (!is_logarithmic(enlarged, out)) throw InvariantError("lifted derivation is not logarithmic");
  return out;
}

}  // namespace hyperarr
