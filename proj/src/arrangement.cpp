#include "hyperarr/arrangement.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hyperarr/error.hpp"
#include "hyperarr/lattice.hpp"

namespace hyperarr {

bool LinearForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

LinearForm LinearForm::canonical() const {
  LinearForm out = *this;
  auto it = std::find_if(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c != 0; });
  if (it == coeffs.end()) return out;
  const Rational lead = *it;
  for (auto& c : out.coeffs) c /= lead;
  return out;
}

SupportMask LinearForm::support() const {
  SupportMask m = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0) m |= SupportMask{1} << k;
  return m;
}

bool LinearForm::proportional_to(const LinearForm& o) const {
  return nvars() == o.nvars() && canonical() == o.canonical();
}

std::string LinearForm::to_string() const { return to_polynomial().to_string(); }

LinearForm coordinate_form(std::size_t nvars, std::size_t k) {
  LinearForm f{RationalVector(nvars)};
  f.coeffs[k] = 1;
  return f;
}

Arrangement::Arrangement(std::size_t n, std::vector<LinearForm> forms) : n_(n), forms_(std::move(forms)) {
  if (n + 1 > kMaxVars) throw DimensionError("ambient dimension above 7 is not supported");
  std::set<std::vector<Rational>, std::less<>> seen;
  for (const auto& f : forms_) {
    if (f.nvars() != n + 1) throw DimensionError("linear form has " + std::to_string(f.nvars()) +
                                                 " coefficients, expected " + std::to_string(n + 1));
    if (f.is_zero()) throw PreconditionError("zero linear form");
    if (!seen.insert(f.canonical().coeffs).second)
      throw PreconditionError("repeated hyperplane " + f.to_string());
  }
}

std::optional<std::size_t> Arrangement::coordinate_index(std::size_t k) const {
  for (std::size_t i = 0; i < forms_.size(); ++i)
    if (forms_[i].support() == (SupportMask{1} << k)) return i;
  return std::nullopt;
}

bool Arrangement::has_all_coordinates() const {
  for (std::size_t k = 0; k <= n_; ++k)
    if (!coordinate_index(k)) return false;
  return true;
}

bool Arrangement::is_complete_hypertetrahedral() const {
  if (!has_all_coordinates()) return false;
  return std::all_of(forms_.begin(), forms_.end(), [](const LinearForm& f) {
    const int pc = __builtin_popcount(f.support());
    return pc == 1 || pc == 2;
  });
}

Arrangement Arrangement::subarrangement(const std::vector<std::size_t>& indices) const {
  std::vector<LinearForm> out;
  for (std::size_t i : indices) {
    if (i >= forms_.size()) throw DimensionError("hyperplane index out of range");
    out.push_back(forms_[i]);
  }
  return Arrangement(n_, std::move(out));
}

std::size_t HypertetraSpec::s(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = inner.find({i, j});
  return it == inner.end() ? 0 : it->second.size();
}

std::size_t HypertetraSpec::hyperplane_count() const {
  std::size_t total = n + 1;
  for (const auto& [pair, forms] : inner) total += forms.size();
  return total;
}

void HypertetraSpec::validate() const {
  if (n + 1 > kMaxVars) throw InvalidSpecError("ambient dimension above 7 is not supported");
  for (const auto& [pair, forms] : inner) {
    const auto [i, j] = pair;
    if (!(i < j && j <= n)) throw InvalidSpecError("inner pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    std::set<Rational> ratios;
    for (const auto& f : forms) {
      if (f.ai == 0 || f.aj == 0)
        throw InvalidSpecError("inner form on (" + std::to_string(i) + "," + std::to_string(j) + ") has a zero coefficient");
      if (!ratios.insert(f.ai / f.aj).second)
        throw InvalidSpecError("repeated inner hyperplane on (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
}

void TriangularSpec::validate() const {
  for (const RationalVector* v : {&a, &b, &c}) {
    std::set<Rational> seen;
    for (const auto& x : *v) {
      if (x == 0) throw InvalidSpecError("triangular coefficients must be nonzero");
      if (!seen.insert(x).second) throw InvalidSpecError("repeated triangular coefficient " + to_string(x));
    }
  }
}

Arrangement realize(const HypertetraSpec& spec) {
  spec.validate();
  std::vector<LinearForm> forms;
  for (std::size_t k = 0; k <= spec.n; ++k) forms.push_back(coordinate_form(spec.n + 1, k));
  for (const auto& [pair, list] : spec.inner) {
    for (const auto& f : list) {
      LinearForm l{RationalVector(spec.n + 1)};
      l.coeffs[pair.first] = f.ai;
      l.coeffs[pair.second] = f.aj;
      forms.push_back(std::move(l));
    }
  }
  return Arrangement(spec.n, std::move(forms));
}

HypertetraSpec to_hypertetra(const TriangularSpec& spec) {
  spec.validate();
  HypertetraSpec h;
  h.n = 2;
  for (const auto& a : spec.a) h.inner[{0, 1}].push_back({1, -a});
  for (const auto& b : spec.b) h.inner[{0, 2}].push_back({b, -1});
  for (const auto& c : spec.c) h.inner[{1, 2}].push_back({1, -c});
  return h;
}

HypertetraSpec extract_spec(const Arrangement& a) {
  if (!a.is_complete_hypertetrahedral())
    throw NotCompleteError("arrangement is not complete hypertetrahedral");
  HypertetraSpec spec;
  spec.n = a.n();
  for (const auto& f : a.forms()) {
    const SupportMask s = f.support();
    if (__builtin_popcount(s) != 2) continue;
    const auto i = static_cast<std::size_t>(__builtin_ctz(s));
    const auto j = static_cast<std::size_t>(31 - __builtin_clz(s));
    spec.inner[{i, j}].push_back({f.coeffs[i], f.coeffs[j]});
  }
  return spec;
}

Polynomial defining_poly(const Arrangement& a) {
  Polynomial f = Polynomial::constant(a.nvars(), 1);
  for (const auto& l : a.forms()) f = f * l.to_polynomial();
  return f;
}

std::vector<Polynomial> jacobian(const Arrangement& a) {
  const Polynomial f = defining_poly(a);
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < a.nvars(); ++k) out.push_back(partial(f, k));
  return out;
}

Arrangement boolean_arrangement(std::size_t n) {
  std::vector<LinearForm> forms;
  for (std::size_t k = 0; k <= n; ++k) forms.push_back(coordinate_form(n + 1, k));
  return Arrangement(n, std::move(forms));
}

Arrangement braid_arrangement(std::size_t n) {
  Graph g;
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) g.add_edge(i, j);
  return build_graphic(g);
}

Arrangement build_graphic(const Graph& g) {
  if (g.vertices.empty()) return Arrangement(0, {});
  const std::size_t n = *g.vertices.rbegin();
  std::vector<LinearForm> forms;
  for (const auto& [i, j] : g.edges) {
    LinearForm f{RationalVector(n + 1)};
    f.coeffs[i] = 1;
    f.coeffs[j] = -1;
    forms.push_back(std::move(f));
  }
  return Arrangement(n, std::move(forms));
}

HypertetraSpec build_extended_fermat(std::size_t n, unsigned a) {
  if (a != 1 && a != 2)
    throw UnsupportedParameterError("extended Fermat arrangements need a-th roots of unity; only a = 1, 2 are rational");
  HypertetraSpec spec;
  spec.n = n;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      auto& list = spec.inner[{i, j}];
      list.push_back({1, -1});
      if (a == 2) list.push_back({1, 1});
    }
  return spec;
}

std::map<std::size_t, std::size_t> sharp_family_census(std::size_t n, unsigned a, unsigned r) {
  const BigInt pairs = binomial(static_cast<long>(n) + 1, 2);
  const long ln = static_cast<long>(n);
  const BigInt A(a), R(r);
  std::map<std::size_t, std::size_t> out;
  auto add = [&](std::size_t mult, const BigInt& count) {
    if (count > 0) out[mult] += count.get_ui();
  };
  add(a + 2, pairs - 1);
  add(static_cast<std::size_t>(r) * a + 2, 1);
  add(3, binomial(ln + 1, 3) * A * A);
  const BigInt doubles = A * A * pairs * binomial(ln - 1, 2) / 2 + (pairs + R - 1) * (ln - 1) * A +
                         (pairs - 1) * (R - 1) * A * A;
  add(2, doubles);
  return out;
}

Rational random_ratio(std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  long p = 0;
  while (p == 0) p = num(rng);
  Rational q(p, den(rng));
  q.canonicalize();
  return q;
}

HypertetraSpec build_sharp_family(std::size_t n, unsigned a, unsigned r, std::uint64_t seed) {
  if (n < 2) throw PreconditionError("the sharp family needs n >= 2");
  if (r < 1) throw PreconditionError("the sharp family needs r >= 1");
  const HypertetraSpec base = build_extended_fermat(n, a);
  const auto expected = sharp_family_census(n, a, r);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    HypertetraSpec spec = base;
    std::set<Rational> used{Rational(-1), Rational(1)};
    auto& list = spec.inner[{n - 1, n}];
    while (list.size() < base.s(n - 1, n) + static_cast<std::size_t>(r - 1) * a) {
      const Rational t = random_ratio(rng, 1000);
      if (!used.insert(t).second) continue;
      list.push_back({1, -t});
    }
    if (codim2_profile(realize(spec)) == expected) return spec;
  }
  throw PreconditionError("no sharp-family sample matched the codim-2 census");
}

HypertetraSpec build_random_general(std::size_t n, const std::map<VertexPair, std::size_t>& s,
                                    std::uint64_t seed, const RandomSpecOptions& options) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    HypertetraSpec spec;
    spec.n = n;
    for (const auto& [pair, count] : s) {
      if (pair.first >= pair.second || pair.second > n) throw InvalidSpecError("pair out of range");
      if (count == 0) continue;
      std::set<Rational> ratios;
      auto& list = spec.inner[pair];
      int guard = 0;
      while (list.size() < count) {
        if (++guard > kMaxRejections) throw PreconditionError("coefficient range too small for the requested counts");
        InnerForm f{random_ratio(rng, options.range), random_ratio(rng, options.range)};
        if (ratios.insert(f.ai / f.aj).second) list.push_back(f);
      }
    }
    if (!options.require_general || is_general(spec)) return spec;
  }
  throw PreconditionError("no general sample found within the rejection cap");
}

TriangularSpec build_random_triangular(std::size_t s1, std::size_t s2, std::size_t s3, std::uint64_t seed,
                                       const RandomSpecOptions& options) {
  std::mt19937_64 rng(seed);
  auto draw = [&](std::size_t count) {
    RationalVector out;
    std::set<Rational> seen;
    int guard = 0;
    while (out.size() < count) {
      if (++guard > kMaxRejections) throw PreconditionError("coefficient range too small for the requested counts");
      Rational q = random_ratio(rng, options.range);
      if (seen.insert(q).second) out.push_back(q);
    }
    return out;
  };
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    TriangularSpec spec{draw(s1), draw(s2), draw(s3)};
    if (!options.require_general || is_general(spec)) return spec;
  }
  throw PreconditionError("no general sample found within the rejection cap");
}

bool is_general(const HypertetraSpec& spec) {
  const Arrangement a = realize(spec);
  Lattice lattice(a, a.n());
  HyperplaneSet coords = 0;
  for (std::size_t k = 0; k <= a.n(); ++k) coords |= HyperplaneSet{1} << *a.coordinate_index(k);
  for (std::size_t c = 1; c <= lattice.max_codim(); ++c)
    for (const Flat& x : lattice.level(c))
      if ((x.hyperplanes & coords) == 0 && x.multiplicity() != x.codim) return false;
  return true;
}

bool is_general(const TriangularSpec& spec) { return is_general(to_hypertetra(spec)); }

}  // namespace hyperarr
