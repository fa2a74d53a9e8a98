#include "hyperarr/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

void make_primitive(std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::vector<std::vector<BigInt>> integer_forms(const Arrangement& a) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& f : a.forms()) out.push_back(f.primitive());
  return out;
}

HyperplaneSet closure(const std::vector<std::vector<BigInt>>& forms, const std::vector<std::vector<BigInt>>& span) {
  HyperplaneSet mask = 0;
  for (std::size_t h = 0; h < forms.size(); ++h) {
    bool contains = true;
    for (const auto& v : span)
      if (dot(forms[h], v) != 0) {
        contains = false;
        break;
      }
    if (contains) mask |= HyperplaneSet{1} << h;
  }
  return mask;
}

Flat whole_space(std::size_t nvars) {
  Flat v;
  for (std::size_t k = 0; k < nvars; ++k) {
    std::vector<BigInt> e(nvars, 0);
    e[k] = 1;
    v.span.push_back(std::move(e));
  }
  return v;
}

// X intersected with hyperplane h (not containing X).
Flat intersect(const std::vector<std::vector<BigInt>>& forms, const Flat& x, std::size_t h) {
  std::vector<BigInt> beta;
  for (const auto& v : x.span) beta.push_back(dot(forms[h], v));
  std::size_t p = beta.size();
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] == 0) continue;
    if (p == beta.size() || abs(beta[i]) < abs(beta[p])) p = i;
  }
  if (p == beta.size()) throw InvariantError("hyperplane already contains the flat");
  Flat y;
  y.codim = x.codim + 1;
  for (std::size_t i = 0; i < x.span.size(); ++i) {
    if (i == p) continue;
    std::vector<BigInt> w = x.span[i];
    if (beta[i] != 0) {
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = beta[p] * w[k] - beta[i] * x.span[p][k];
      make_primitive(w);
    }
    y.span.push_back(std::move(w));
  }
  y.hyperplanes = closure(forms, y.span);
  return y;
}

void check_size(const Arrangement& a) {
  if (a.size() > kMaxLatticeHyperplanes) throw SizeGuardError("lattice enumeration supports at most 64 hyperplanes");
}

}  // namespace

std::vector<std::size_t> Flat::indices() const {
  std::vector<std::size_t> out;
  for (HyperplaneSet m = hyperplanes; m; m &= m - 1) out.push_back(static_cast<std::size_t>(__builtin_ctzll(m)));
  return out;
}

std::vector<LinearForm> Flat::equations(const Arrangement& a) const {
  std::vector<LinearForm> out;
  Echelon e(a.nvars());
  for (std::size_t i : indices()) {
    const auto v = a[i].primitive();
    SparseRow row;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) row.push_back({k, v[k]});
    if (e.insert(row)) out.push_back(a[i]);
  }
  return out;
}

Lattice::Lattice(const Arrangement& a, std::size_t max_codim) : arrangement_(a) {
  check_size(a);
  integer_forms_ = integer_forms(a);
  rank_ = hyperarr::rank(RationalMatrix::from_rows([&] {
    std::vector<RationalVector> rows;
    for (const auto& f : a.forms()) rows.push_back(f.coeffs);
    return rows;
  }()));
  if (a.size() == 0) rank_ = 0;
  levels_.push_back({whole_space(a.nvars())});
  index_.push_back({{0, 0}});
  while (this->max_codim() < max_codim && extend()) {
  }
}

bool Lattice::extend() {
  if (max_codim() >= rank_) return false;
  std::vector<Flat> next;
  std::unordered_map<HyperplaneSet, std::size_t> idx;
  for (const Flat& x : levels_.back()) {
    HyperplaneSet covered = x.hyperplanes;
    for (std::size_t h = 0; h < integer_forms_.size(); ++h) {
      if ((covered >> h) & 1) continue;
      Flat y = intersect(integer_forms_, x, h);
      covered |= y.hyperplanes;
      if (idx.count(y.hyperplanes)) continue;
      idx.emplace(y.hyperplanes, next.size());
      next.push_back(std::move(y));
    }
  }
  // Deterministic order: by hyperplane set, low indices first.
  std::vector<std::size_t> order(next.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) { return next[i].indices(); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::vector<Flat> sorted;
  idx.clear();
  for (std::size_t i : order) {
    idx.emplace(next[i].hyperplanes, sorted.size());
    sorted.push_back(std::move(next[i]));
  }
  levels_.push_back(std::move(sorted));
  index_.push_back(std::move(idx));
  return true;
}

std::vector<const Flat*> Lattice::flats() const {
  std::vector<const Flat*> out;
  for (std::size_t c = 1; c <= std::min(max_codim(), arrangement_.n()); ++c)
    for (const Flat& x : levels_[c]) out.push_back(&x);
  return out;
}

const Flat* Lattice::find(HyperplaneSet hyperplanes) const {
  for (std::size_t c = 0; c < levels_.size(); ++c) {
    auto it = index_[c].find(hyperplanes);
    if (it != index_[c].end()) return &levels_[c][it->second];
  }
  return nullptr;
}

Lattice intersection_lattice(const Arrangement& a) { return Lattice(a); }

Flat flat_from_hyperplanes(const Arrangement& a, HyperplaneSet generators) {
  check_size(a);
  const auto forms = integer_forms(a);
  Flat x = whole_space(a.nvars());
  for (std::size_t h = 0; h < forms.size(); ++h)
    if (((generators >> h) & 1) && !((x.hyperplanes >> h) & 1)) x = intersect(forms, x, h);
  return x;
}

Flat flat_from_equations(const Arrangement& a, const std::vector<LinearForm>& equations) {
  std::vector<RationalVector> rows;
  for (const auto& e : equations) {
    if (e.nvars() != a.nvars()) throw DimensionError("equation has the wrong number of variables");
    rows.push_back(e.coeffs);
  }
  const RationalMatrix m = RationalMatrix::from_rows(rows);
  const std::size_t codim = rows.empty() ? 0 : rank(m);
  std::vector<std::vector<BigInt>> span;
  if (rows.empty()) {
    span = whole_space(a.nvars()).span;
  } else {
    for (const auto& v : nullspace(m)) span.push_back(primitive_integer_vector(v));
  }
  const HyperplaneSet mask = closure(integer_forms(a), span);
  Flat x = flat_from_hyperplanes(a, mask);
  if (x.codim != codim) throw PreconditionError("the subspace is not an intersection of hyperplanes of the arrangement");
  return x;
}

Flat flat_through_point(const Arrangement& a, const RationalVector& point) {
  if (point.size() != a.nvars()) throw DimensionError("point has the wrong number of coordinates");
  HyperplaneSet mask = 0;
  for (std::size_t h = 0; h < a.size(); ++h) {
    Rational s = 0;
    for (std::size_t k = 0; k < point.size(); ++k) s += a[h].coeffs[k] * point[k];
    if (s == 0) mask |= HyperplaneSet{1} << h;
  }
  return flat_from_hyperplanes(a, mask);
}

Arrangement localize(const Arrangement& a, const Flat& x) {
  for (std::size_t i : x.indices())
    if (i >= a.size()) throw PreconditionError("flat does not belong to this arrangement");
  return a.subarrangement(x.indices());
}

std::optional<Flat> w_of(const Arrangement& a, const Flat& x) {
  if (!a.has_all_coordinates()) throw NotCompleteError("arrangement lacks a coordinate hyperplane");
  HyperplaneSet coords = 0;
  for (std::size_t k = 0; k <= a.n(); ++k) {
    const std::size_t i = *a.coordinate_index(k);
    if (x.contains_hyperplane(i)) coords |= HyperplaneSet{1} << i;
  }
  if (coords == 0) return std::nullopt;
  return flat_from_hyperplanes(a, coords);
}

Graph gamma_graph(const Arrangement& a, const Flat& x) {
  const auto w = w_of(a, x);
  const HyperplaneSet in_w = w ? w->hyperplanes : 0;
  Graph g;
  for (std::size_t i : x.indices()) {
    if ((in_w >> i) & 1) continue;
    const SupportMask s = a[i].support();
    if (__builtin_popcount(s) != 2) throw PreconditionError("hyperplane " + a[i].to_string() + " is not an inner form");
    const auto u = static_cast<unsigned>(__builtin_ctz(s));
    const auto v = static_cast<unsigned>(31 - __builtin_clz(s));
    if (g.has_edge(u, v))
      throw InvariantError("two hyperplanes of A_X - A_W share the support pair (" + std::to_string(u) + "," +
                           std::to_string(v) + ")");
    g.add_edge(u, v);
  }
  return g;
}

Graph normalize_to_graphic(const Arrangement& sub, const RationalVector& p) {
  if (p.size() != sub.nvars()) throw DimensionError("point has the wrong number of coordinates");
  Graph g;
  for (const auto& f : sub.forms()) {
    const SupportMask s = f.support();
    if (__builtin_popcount(s) != 2) throw PreconditionError("form " + f.to_string() + " is not supported on a pair");
    const auto u = static_cast<unsigned>(__builtin_ctz(s));
    const auto v = static_cast<unsigned>(31 - __builtin_clz(s));
    if (p[u] == 0 || p[v] == 0) throw PreconditionError("point has a zero coordinate on the support of " + f.to_string());
    // After x_i -> p_i x_i the form reads f_u p_u x_u + f_v p_v x_v.
    if (f.coeffs[u] * p[u] + f.coeffs[v] * p[v] != 0)
      throw PreconditionError("form " + f.to_string() + " does not vanish at the point");
    if (g.has_edge(u, v)) throw PreconditionError("two forms on the same coordinate pair");
    g.add_edge(u, v);
  }
  return g;
}

Arrangement project(const Arrangement& a, SupportMask keep) {
  std::vector<std::size_t> vars;
  for (std::size_t k = 0; k < a.nvars(); ++k)
    if ((keep >> k) & 1) vars.push_back(k);
  if (vars.empty()) throw PreconditionError("projection onto no variables");
  std::vector<LinearForm> forms;
  for (const auto& f : a.forms()) {
    if (f.support() & ~keep) throw PreconditionError("form " + f.to_string() + " involves a deleted variable");
    LinearForm g{RationalVector(vars.size())};
    for (std::size_t i = 0; i < vars.size(); ++i) g.coeffs[i] = f.coeffs[vars[i]];
    forms.push_back(std::move(g));
  }
  return Arrangement(vars.size() - 1, std::move(forms));
}

std::optional<FreenessVerdict> VerdictCache::get(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void VerdictCache::put(const std::string& key, const FreenessVerdict& v) {
  std::lock_guard lock(mutex_);
  entries_.emplace(key, v);
}

std::size_t VerdictCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

namespace {

std::string cache_key(const Arrangement& a, unsigned cap) {
  std::vector<std::string> forms;
  for (const auto& f : a.forms()) {
    std::string s;
    for (const auto& c : f.canonical().coeffs) s += to_string(c) + ",";
    forms.push_back(std::move(s));
  }
  std::sort(forms.begin(), forms.end());
  std::string key = std::to_string(a.n()) + "|" + std::to_string(cap) + "|";
  for (const auto& s : forms) key += s + ";";
  return key;
}

}  // namespace

LocalVerdict is_locally_free_at(const Arrangement& a, const Flat& x, unsigned cap, VerdictCache* cache) {
  if (!a.is_complete_hypertetrahedral()) throw NotCompleteError("arrangement is not complete hypertetrahedral");
  LocalVerdict out;
  if (x.codim <= 1) {
    out.kind = LocalKind::LocallyFreeAtX;
    out.reason = "codimension 1";
    return out;
  }
  const Graph g = gamma_graph(a, x);
  if (auto cycle = chordless_cycle(g)) {
    out.kind = LocalKind::NotFreeAtX;
    out.cycle = cycle;
    out.reason = "Gamma_X has a chordless cycle";
    return out;
  }
  const auto w = w_of(a, x);
  if (!w) {
    out.kind = LocalKind::LocallyFreeAtX;
    out.reason = "inner flat with chordal Gamma_X";
    return out;
  }
  SupportMask vars = 0;
  for (std::size_t k = 0; k <= a.n(); ++k)
    if (w->contains_hyperplane(*a.coordinate_index(k))) vars |= SupportMask{1} << k;
  const Arrangement projected = project(localize(a, *w), vars);
  const std::string key = cache_key(projected, cap);
  std::optional<FreenessVerdict> verdict = cache ? cache->get(key) : std::nullopt;
  if (!verdict) {
    verdict = freeness_decide(projected, cap);
    if (cache) cache->put(key, *verdict);
  }
  out.projection = verdict;
  switch (verdict->kind) {
    case FreenessVerdict::Kind::Free:
      out.kind = LocalKind::LocallyFreeAtX;
      out.reason = "Gamma_X chordal and the projected coordinate part is free";
      break;
    case FreenessVerdict::Kind::NotFree:
      out.kind = LocalKind::NotFreeAtX;
      out.reason = "projected coordinate part is not free: " + verdict->certificate;
      break;
    case FreenessVerdict::Kind::Unknown:
      out.kind = LocalKind::Unknown;
      out.reason = "projected coordinate part undecided: " + verdict->certificate;
      break;
  }
  return out;
}

LocalFreenessReport is_locally_free(const Arrangement& a, unsigned cap, unsigned threads) {
  if (!a.is_complete_hypertetrahedral()) throw NotCompleteError("arrangement is not complete hypertetrahedral");
  LocalFreenessReport report;
  VerdictCache cache;
  Lattice lattice(a, 1);
  for (std::size_t codim = 2; codim <= a.n(); ++codim) {
    if (!lattice.extend()) break;
    const auto& level = lattice.level(codim);
    std::vector<LocalVerdict> verdicts(level.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < level.size(); i = next++)
        verdicts[i] = is_locally_free_at(a, level[i], cap, &cache);
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(level.size())));
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    report.flats_checked += level.size();
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (verdicts[i].kind == LocalKind::Unknown) ++report.unknown_flats;
      if (verdicts[i].kind == LocalKind::NotFreeAtX && !report.failing_flat) {
        report.failing_flat = level[i];
        report.failing_verdict = verdicts[i];
      }
    }
    if (report.failing_flat) {
      report.kind = GlobalKind::NotLocallyFree;
      return report;
    }
  }
  report.kind = report.unknown_flats ? GlobalKind::Unknown : GlobalKind::LocallyFree;
  return report;
}

bool complete_star_shortcut(const Arrangement& a, const Flat& x) {
  if (w_of(a, x)) throw PreconditionError("complete-star shortcut needs an inner flat");
  return is_complete_star(gamma_graph(a, x));
}

std::map<std::size_t, std::size_t> codim2_profile(const Arrangement& a) {
  Lattice lattice(a, 2);
  std::map<std::size_t, std::size_t> out;
  if (lattice.max_codim() < 2) return out;
  for (const Flat& x : lattice.level(2)) ++out[x.multiplicity()];
  return out;
}

std::vector<BigInt> char_poly(const Arrangement& a) { return char_poly(Lattice(a)); }

std::vector<BigInt> char_poly(const Lattice& lattice) {
  if (lattice.max_codim() < lattice.rank()) throw PreconditionError("characteristic polynomial needs the full lattice");
  const std::size_t dim = lattice.arrangement().nvars();
  std::vector<BigInt> coeffs(dim + 1, 0);
  std::vector<std::vector<BigInt>> mu(lattice.max_codim() + 1);
  mu[0] = {1};
  coeffs[dim] = 1;
  for (std::size_t c = 1; c <= lattice.max_codim(); ++c) {
    const auto& level = lattice.level(c);
    mu[c].assign(level.size(), 0);
    for (std::size_t i = 0; i < level.size(); ++i) {
      BigInt s = 0;
      for (std::size_t b = 0; b < c; ++b) {
        const auto& lower = lattice.level(b);
        for (std::size_t j = 0; j < lower.size(); ++j)
          if ((lower[j].hyperplanes & ~level[i].hyperplanes) == 0) s += mu[b][j];
      }
      mu[c][i] = -s;
      coeffs[dim - c] += mu[c][i];
    }
  }
  return coeffs;
}

std::string char_poly_to_string(const std::vector<BigInt>& coeffs) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t p = coeffs.size(); p-- > 0;) {
    const BigInt& c = coeffs[p];
    if (c == 0) continue;
    BigInt mag = abs(c);
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    if (mag != 1 || p == 0) out << mag.get_str();
    if (p > 0) out << (mag != 1 ? "*t" : "t");
    if (p > 1) out << '^' << p;
    first = false;
  }
  return first ? "0" : out.str();
}

std::optional<std::vector<unsigned>> integer_roots(const std::vector<BigInt>& coeffs) {
  std::vector<BigInt> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) return std::nullopt;
  std::vector<unsigned> roots;
  BigInt bound = 0;
  for (const auto& x : c) bound += abs(x);
  unsigned r = 0;
  while (c.size() > 1) {
    if (BigInt(r) > bound) return std::nullopt;
    // Horner at r, keeping the quotient.
    std::vector<BigInt> q(c.size() - 1);
    BigInt acc = 0;
    for (std::size_t p = c.size(); p-- > 0;) {
      acc = acc * r + c[p];
      if (p > 0) q[p - 1] = acc;
    }
    if (acc == 0) {
      roots.push_back(r);
      c = std::move(q);
    } else {
      ++r;
    }
  }
  return roots;
}

}  // namespace hyperarr
