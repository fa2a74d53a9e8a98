// Acceptance suite: one pass/fail line per criterion.
// Usage: acceptance [criterion numbers...]   (all when none given)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "hyperarr/bounds.hpp"
#include "hyperarr/derivations.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/triangular.hpp"
#include "oracles.hpp"

using namespace hyperarr;
using fixtures::q;

namespace {

// Collects sub-check outcomes; the criterion passes when all of them do.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  bool passed() const { return failures_.empty(); }
  std::string summary() const {
    if (passed()) return std::to_string(total_) + " checks";
    std::string out = std::to_string(failures_.size()) + "/" + std::to_string(total_) + " failed:";
    for (std::size_t i = 0; i < failures_.size() && i < 4; ++i) out += " [" + failures_[i] + "]";
    if (failures_.size() > 4) out += " ...";
    return out;
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

std::string str(const std::vector<unsigned>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

std::vector<BigInt> poly_from_roots(const std::vector<long>& roots) {
  std::vector<BigInt> c{1};
  for (long r : roots) {
    std::vector<BigInt> next(c.size() + 1, 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = next;
  }
  return c;
}

Flat coordinate_flat(const Arrangement& a, const std::vector<std::size_t>& vars) {
  std::vector<LinearForm> eqs;
  for (std::size_t v : vars) eqs.push_back(coordinate_form(a.nvars(), v));
  return flat_from_equations(a, eqs);
}

bool all_pairs_positive(const HypertetraSpec& s) {
  for (std::size_t i = 0; i <= s.n; ++i)
    for (std::size_t j = i + 1; j <= s.n; ++j)
      if (s.s(i, j) == 0) return false;
  return true;
}

// Least degree with a syzygy, read off the structured solver: derivations of
// degree d split as S_{d-1} times the Euler derivation plus the syzygies.
std::optional<unsigned> structured_indeg(const HypertetraSpec& spec, unsigned cap) {
  for (unsigned d = 0; d <= cap; ++d) {
    const BigInt euler_part = d == 0 ? BigInt(0) : binomial(spec.n + d - 1, spec.n);
    if (BigInt(structured_der_dim(spec, d)) > euler_part) return d;
  }
  return std::nullopt;
}

using Shape = std::array<std::size_t, 3>;

// Random triangular corpus: generic specs and specs drawn from a small pool
// of ratios, which produces inner triple points.
std::vector<TriangularSpec> triangular_corpus() {
  const std::vector<Shape> shapes{{1, 1, 1}, {1, 2, 2}, {2, 2, 2}, {1, 2, 3}, {2, 2, 3}, {1, 3, 3}, {2, 3, 3}};
  std::vector<TriangularSpec> out;
  for (std::uint64_t seed = 1; seed <= 28; ++seed) {
    const Shape& s = shapes[seed % shapes.size()];
    RandomSpecOptions options;
    if (seed % 2 == 0) options = RandomSpecOptions{2, false};
    out.push_back(build_random_triangular(s[0], s[1], s[2], seed, options));
  }
  return out;
}

std::vector<TriangularSpec> general_corpus(bool s3_dominates) {
  const std::vector<Shape> shapes = s3_dominates
                                        ? std::vector<Shape>{{1, 1, 2}, {1, 1, 3}, {1, 1, 4}, {1, 2, 3}, {1, 2, 4}, {2, 2, 4}}
                                        : std::vector<Shape>{{1, 1, 1}, {1, 2, 2}, {2, 2, 2}, {2, 2, 3}, {1, 3, 3}};
  std::vector<TriangularSpec> out;
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const Shape& s = shapes[seed % shapes.size()];
    out.push_back(build_random_triangular(s[0], s[1], s[2], 1000 + seed));
  }
  return out;
}

bool criterion_boolean(Checks& c) {
  for (std::size_t n : {2, 3}) {
    const Arrangement b = boolean_arrangement(n);
    c.expect(syz_dim(b, 1) == n, "syz_dim(1) for n=" + std::to_string(n));
    const auto gens = minimal_generator_degrees(b, 2);
    c.expect(gens == std::vector<unsigned>(n, 1), "generators " + str(gens));
  }
  return c.passed();
}

bool criterion_four_lines(Checks& c) {
  const Arrangement a = fixtures::four_lines();
  c.expect(syz_dim(a, 1) == 0, "syz_dim(1)");
  c.expect(syz_dim(a, 2) == 3, "syz_dim(2)");
  c.expect(indeg_syz(a, 4) == 2u, "indeg");
  c.expect(minimal_generator_degrees(a, 3) == std::vector<unsigned>{2, 2, 2}, "generators");
  return c.passed();
}

bool criterion_braid(Checks& c) {
  const Arrangement a = braid_arrangement(3);
  c.expect(syz_dim(a, 0) == 1, "syz_dim(0)");
  const auto basis = syz_basis(a, 0);
  bool all_ones = basis.size() == 1;
  if (all_ones)
    for (const auto& comp : basis[0])
      all_ones = all_ones && comp == basis[0][0] && !comp.is_zero() && comp.degree() == 0;
  c.expect(all_ones, "degree-0 syzygy is (1,1,1,1)");
  c.expect(all_ones && oracles::syzygy_image(a, basis[0]).is_zero(), "sum of partials vanishes");
  return c.passed();
}

bool criterion_p3(Checks& c) {
  const Arrangement a = realize(fixtures::p3_locally_free_spec());
  c.expect(is_locally_free(a, 8, 2).kind == GlobalKind::LocallyFree, "locally free");
  c.expect(freeness_decide(a, 8).kind == FreenessVerdict::Kind::NotFree, "not free");
  const auto gens = minimal_generator_degrees(a, 6);
  c.expect(gens == std::vector<unsigned>{4, 4, 4, 5, 5, 5}, "generators " + str(gens));
  return c.passed();
}

bool criterion_p5(Checks& c) {
  const Arrangement a = realize(fixtures::p5_spec());
  const Flat x1 = flat_through_point(a, fixtures::p5_x1());
  const LocalVerdict v1 = is_locally_free_at(a, x1, 8);
  c.expect(v1.kind == LocalKind::NotFreeAtX && v1.cycle == std::vector<unsigned>{0, 1, 4, 5}, "X1 chordless (0,1,4,5)");
  c.expect(is_locally_free_at(a, coordinate_flat(a, {2, 3, 4, 5}), 8).kind == LocalKind::LocallyFreeAtX, "X2 free");

  const Flat x3 = flat_through_point(a, fixtures::p5_x3());
  const auto w3 = w_of(a, x3);
  c.expect(w3 && w3->hyperplanes == coordinate_flat(a, {2, 5}).hyperplanes, "W(X3) = {x2=x5=0}");
  const LocalVerdict v3 = is_locally_free_at(a, x3, 8);
  std::string seen = v3.cycle ? str(*v3.cycle) : std::string("none, graph chordal");
  c.expect(v3.kind == LocalKind::NotFreeAtX && v3.cycle == std::vector<unsigned>{0, 1, 3, 4},
           "X3 chordless (0,1,3,4): got cycle " + seen);
  c.expect(is_locally_free(a, 8, 2).kind == GlobalKind::NotLocallyFree, "not locally free");
  return c.passed();
}

bool criterion_bounds(Checks& c) {
  const HypertetraSpec s = fixtures::bounds_spec();
  const std::vector<std::pair<VertexPair, long>> expected{{{0, 1}, 1}, {{0, 2}, 1}, {{0, 3}, 2},
                                                          {{1, 3}, 2}, {{1, 2}, 3}, {{2, 3}, 3}};
  for (const auto& [pair, m] : expected)
    c.expect(M_of(s, pair.first, pair.second).M == m,
             "M(" + std::to_string(pair.first) + "," + std::to_string(pair.second) + ")");
  const BoundsReport r = indeg_interval(s);
  c.expect(r.D == 3, "D");
  c.expect(r.lower() == 4 && r.upper == 5, "interval");
  c.expect(enumerate_T(3, 1, 2).size() == 5, "|T(1,2)|");
  c.expect(enumerate_T(3, 2, 3).size() == 5, "|T(2,3)|");
  return c.passed();
}

bool criterion_extended_fermat(Checks& c) {
  const HypertetraSpec spec = build_extended_fermat(2, 2);
  const Arrangement a = realize(spec);
  const FreenessVerdict v = freeness_decide(a, 6);
  c.expect(v.kind == FreenessVerdict::Kind::Free && v.exponents == std::vector<unsigned>{1, 3, 5},
           "free " + str(v.exponents));
  const long d = D_of(spec);
  c.expect(d == 2, "D");
  c.expect(indeg_syz(a, 6) == static_cast<unsigned>(d + 1), "indeg = D + 1");
  c.expect(char_poly(a) == poly_from_roots({1, 3, 5}), "char poly");
  c.expect(codim2_profile(a) == std::map<std::size_t, std::size_t>{{4, 3}, {3, 4}, {2, 6}}, "codim-2 census");
  return c.passed();
}

bool criterion_sharp(Checks& c) {
  for (auto [n, a, r] : {std::tuple{2u, 2u, 1u}, {2u, 2u, 2u}, {3u, 2u, 1u}}) {
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(r) + ")";
    const Arrangement arr = realize(build_sharp_family(n, a, r, 1));
    std::vector<unsigned> expected{1};
    for (unsigned k = 2; k <= n; ++k) expected.push_back(k * a + 1);
    expected.push_back(r * a + 1);
    std::sort(expected.begin(), expected.end());
    const FreenessVerdict v = freeness_decide(arr, *std::max_element(expected.begin(), expected.end()) + 1);
    c.expect(v.kind == FreenessVerdict::Kind::Free && v.exponents == expected, tag + " exponents " + str(v.exponents));
    c.expect(codim2_profile(arr) == sharp_family_census(n, a, r), tag + " census");
    c.expect(std::accumulate(expected.begin(), expected.end(), 0u) == arr.size(), tag + " exponent sum");
  }
  return c.passed();
}

bool criterion_triangular_equivalence(Checks& c) {
  std::size_t deferred = 0;
  for (const TriangularSpec& t : triangular_corpus()) {
    const HypertetraSpec h = to_hypertetra(t);
    const Arrangement a = realize(h);
    for (unsigned d = 0; d <= 6; ++d) {
      const std::size_t oracle = der_dim(a, d);
      c.expect(structured_der_dim(h, d) == oracle, "structured d=" + std::to_string(d));
      if (d < t.s3() + 1 || d > t.s1() + t.s2()) continue;
      const EulerOnly e = only_euler_at(t, d);
      if (e == EulerOnly::NotApplicable) {
        ++deferred;
        continue;
      }
      c.expect((e == EulerOnly::Yes) == (syz_dim(a, d) == 0), "rank test d=" + std::to_string(d));
    }
  }
  c.expect(deferred == 0, std::to_string(deferred) + " degrees had fewer rows than columns");
  return c.passed();
}

bool criterion_triangular_indeg(Checks& c) {
  for (bool dominates : {true, false})
    for (const TriangularSpec& t : general_corpus(dominates)) {
      c.expect(is_general(t), "general");
      const unsigned expected = static_cast<unsigned>(t.s1() + t.s2() + 1);
      c.expect(indeg_syz(realize(to_hypertetra(t)), expected + 1) == expected,
               "indeg for s=(" + std::to_string(t.s1()) + "," + std::to_string(t.s2()) + "," + std::to_string(t.s3()) + ")");
    }
  return c.passed();
}

bool criterion_sandwich(Checks& c) {
  std::vector<std::pair<std::string, HypertetraSpec>> corpus{
      {"P3 locally free", fixtures::p3_locally_free_spec()},
      {"P5 example", fixtures::p5_spec()},
      {"bounds example", fixtures::bounds_spec()},
      {"extended Fermat", build_extended_fermat(2, 2)},
      {"sharp (2,2,1)", build_sharp_family(2, 2, 1, 1)},
      {"sharp (2,2,2)", build_sharp_family(2, 2, 2, 1)},
      {"sharp (3,2,1)", build_sharp_family(3, 2, 1, 1)}};
  for (const auto& t : triangular_corpus()) corpus.emplace_back("random triangular", to_hypertetra(t));
  for (bool dominates : {true, false})
    for (const auto& t : general_corpus(dominates)) corpus.emplace_back("random general", to_hypertetra(t));
  std::size_t sandwiched = 0;
  for (const auto& [name, spec] : corpus) {
    const Arrangement a = realize(spec);
    for (std::size_t i0 = 0; i0 <= spec.n; ++i0)
      c.expect(oracles::syzygy_image(a, dimcan_syzygy(spec, i0)).is_zero(), name + " explicit syzygy");
    if (!all_pairs_positive(spec)) continue;
    const BoundsReport r = indeg_interval(spec);
    const auto indeg = structured_indeg(spec, static_cast<unsigned>(r.upper));
    if (a.size() <= 16) c.expect(indeg == indeg_syz(a, static_cast<unsigned>(r.upper)), name + " solvers agree");
    c.expect(indeg && r.lower() <= static_cast<long>(*indeg) && static_cast<long>(*indeg) <= r.upper, name + " sandwich");
    ++sandwiched;
  }
  c.expect(sandwiched >= 20, "corpus too small");
  return c.passed();
}

bool criterion_section(Checks& c) {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 2;
    Arrangement base;
    if (n == 2) {
      base = realize(to_hypertetra(build_random_triangular(1, 1 + trial % 2, 2, 500 + trial, {5, false})));
    } else {
      base = realize(build_random_general(3, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}}, 500 + trial));
    }
    // One or two random forms with full support.
    std::vector<LinearForm> forms = base.forms();
    const std::size_t extra = 1 + trial % 2;
    while (forms.size() < base.size() + extra) {
      LinearForm f;
      for (std::size_t k = 0; k < base.nvars(); ++k) f.coeffs.push_back(random_ratio(rng, 9));
      if (std::none_of(forms.begin(), forms.end(), [&](const LinearForm& g) { return g.proportional_to(f); }))
        forms.push_back(f);
    }
    const Arrangement enlarged(n, forms);
    const unsigned d = 1 + static_cast<unsigned>(trial % 3);
    const DerBasis basis = der_basis(base, d);
    Derivation theta(base.nvars(), Polynomial(base.nvars()));
    for (const auto& b : basis.elements) {
      const Rational coef = random_ratio(rng, 5);
      for (std::size_t k = 0; k < theta.size(); ++k) theta[k] += b[k] * coef;
    }
    const Derivation lifted = lemma_section_lift(base, enlarged, theta);
    bool degree_ok = true;
    for (const auto& comp : lifted) degree_ok = degree_ok && (comp.is_zero() || comp.degree() == d + extra);
    c.expect(degree_ok, "degree grows by the number of new forms");
    c.expect(oracles::logarithmic_by_last_variable(enlarged, lifted), "lift is logarithmic, trial " + std::to_string(trial));
  }
  return c.passed();
}

bool criterion_chordality(Checks& c) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 8);
    const unsigned density = 20 + static_cast<unsigned>(rng() % 60);
    Graph g;
    for (unsigned v = 0; v < n; ++v) g.add_vertex(v);
    for (unsigned u = 0; u < n; ++u)
      for (unsigned v = u + 1; v < n; ++v)
        if (rng() % 100 < density) g.add_edge(u, v);
    const std::size_t shortest = oracles::brute_shortest_chordless(g);
    c.expect(is_chordal(g) == (shortest == 0), "random graph " + std::to_string(trial));
    const auto cycle = chordless_cycle(g);
    c.expect(!cycle || (cycle->size() == shortest && oracles::is_induced_cycle(g, *cycle)), "witness");
  }
  Graph pentagon = cycle_graph({0, 1, 2, 3, 4});
  c.expect(!is_chordal(pentagon), "pentagon");
  Graph chorded = pentagon;
  chorded.add_edge(1, 3);
  chorded.add_edge(1, 4);
  c.expect(is_chordal(chorded), "chorded pentagon");
  Graph star;
  for (unsigned v = 1; v <= 4; ++v) star.add_edge(0, v);
  c.expect(is_chordal(star), "complete star");
  return c.passed();
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(Checks&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "boolean arrangements", criterion_boolean},
      {2, "four general lines", criterion_four_lines},
      {3, "braid arrangement A3", criterion_braid},
      {4, "locally free, not free in P^3", criterion_p3},
      {5, "non-chordal flats in P^5", criterion_p5},
      {6, "bounds example in P^3", criterion_bounds},
      {7, "extended Fermat n=2, a=2", criterion_extended_fermat},
      {8, "sharp families", criterion_sharp},
      {9, "rank test equals solver", criterion_triangular_equivalence},
      {10, "general triangular indeg", criterion_triangular_indeg},
      {11, "bounds sandwich and explicit syzygy", criterion_sandwich},
      {12, "lifting derivations", criterion_section},
      {13, "chordality", criterion_chordality},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::stoi(argv[i]));
  int failed = 0;
  for (const auto& cr : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), cr.id) == wanted.end()) continue;
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      ok = cr.run(checks);
      detail = checks.summary();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char line[96];
    std::snprintf(line, sizeof line, "criterion %2d %-4s %-36s %8.2fs  ", cr.id, ok ? "PASS" : "FAIL", cr.name, seconds);
    std::cout << line << detail << std::endl;
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
