#include "hyperarr/bounds.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

constexpr long kInfinity = std::numeric_limits<long>::max();

void check_pair(std::size_t n, std::size_t i0, std::size_t q0) {
  if (!(i0 < q0 && q0 <= n)) throw PreconditionError("pair must satisfy 0 <= i0 < q0 <= n");
}

long s_of(const HypertetraSpec& spec, std::size_t i, std::size_t j) { return static_cast<long>(spec.s(i, j)); }

}  // namespace

bool is_valid_chain(std::size_t n, const TripleChain& chain) {
  if (n < 2 || chain.size() != n - 1) return false;
  const auto& [i0, j0, q0] = chain[0];
  if (!(i0 < q0 && q0 <= n && j0 <= n) || j0 == i0 || j0 == q0) return false;
  unsigned seen = (1u << i0) | (1u << j0) | (1u << q0);
  for (std::size_t m = 1; m < chain.size(); ++m) {
    const auto& [i, j, q] = chain[m];
    if (j > n || ((seen >> j) & 1)) return false;
    if (!(i < q) || !((seen >> i) & 1) || !((seen >> q) & 1)) return false;
    seen |= 1u << j;
  }
  return true;
}

std::vector<TripleChain> enumerate_T(std::size_t n, std::size_t i0, std::size_t q0) {
  check_pair(n, i0, q0);
  if (n > kMaxBoundsN) throw SizeGuardError("chain enumeration is limited to n <= 7");
  std::vector<TripleChain> out;
  TripleChain chain;
  auto extend = [&](auto&& self, unsigned seen) -> void {
    if (chain.size() == n - 1) {
      out.push_back(chain);
      return;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (!((seen >> i) & 1)) continue;
      for (std::size_t j = 0; j <= n; ++j) {
        if ((seen >> j) & 1) continue;
        for (std::size_t q = i + 1; q <= n; ++q) {
          if (!((seen >> q) & 1)) continue;
          chain.push_back({i, j, q});
          self(self, seen | (1u << j));
          chain.pop_back();
        }
      }
    }
  };
  for (std::size_t j0 = 0; j0 <= n; ++j0) {
    if (j0 == i0 || j0 == q0) continue;
    chain = {{i0, j0, q0}};
    extend(extend, (1u << i0) | (1u << j0) | (1u << q0));
  }
  std::sort(out.begin(), out.end());
  std::vector<TripleChain> unique;
  std::set<std::vector<Triple>> seen_sets;
  for (const auto& c : out) {
    std::vector<Triple> key(c.begin(), c.end());
    std::sort(key.begin(), key.end());
    if (seen_sets.insert(key).second) unique.push_back(c);
  }
  return unique;
}

long m_of(const HypertetraSpec& spec, const TripleChain& chain) {
  if (!is_valid_chain(spec.n, chain)) throw PreconditionError("chain is not valid for this dimension");
  long m = s_of(spec, chain[0][0], chain[0][2]);
  for (const auto& [i, j, q] : chain) m = std::min(m, s_of(spec, i, j) + s_of(spec, j, q));
  return m;
}

PairBound M_of(const HypertetraSpec& spec, std::size_t i0, std::size_t q0, bool allow_large) {
  const std::size_t n = spec.n;
  check_pair(n, i0, q0);
  if (n > kMaxBoundsN && !allow_large) throw SizeGuardError("bounds computation is limited to n <= 7 without override");
  if (n < 2) throw PreconditionError("chains need n >= 2");
  const unsigned full = (1u << (n + 1)) - 1;
  // best[seen]: largest achievable minimum over the remaining triples.
  std::vector<long> best(std::size_t{1} << (n + 1), -1);
  std::vector<Triple> choice(best.size());
  auto solve = [&](auto&& self, unsigned seen) -> long {
    if (seen == full) return kInfinity;
    if (best[seen] >= 0) return best[seen];
    long value = -1;
    for (std::size_t i = 0; i <= n; ++i) {
      if (!((seen >> i) & 1)) continue;
      for (std::size_t j = 0; j <= n; ++j) {
        if ((seen >> j) & 1) continue;
        for (std::size_t q = i + 1; q <= n; ++q) {
          if (!((seen >> q) & 1)) continue;
          const long v = std::min(s_of(spec, i, j) + s_of(spec, j, q), self(self, seen | (1u << j)));
          if (v > value) {
            value = v;
            choice[seen] = {i, j, q};
          }
        }
      }
    }
    return best[seen] = value;
  };
  PairBound out;
  out.M = -1;
  for (std::size_t j0 = 0; j0 <= n; ++j0) {
    if (j0 == i0 || j0 == q0) continue;
    const unsigned seen = (1u << i0) | (1u << j0) | (1u << q0);
    const long v = std::min({s_of(spec, i0, q0), s_of(spec, i0, j0) + s_of(spec, j0, q0), solve(solve, seen)});
    if (v > out.M) {
      out.M = v;
      out.witness = {{i0, j0, q0}};
      for (unsigned s = seen; s != full; s |= 1u << choice[s][1]) out.witness.push_back(choice[s]);
    }
  }
  return out;
}

long M_by_enumeration(const HypertetraSpec& spec, std::size_t i0, std::size_t q0) {
  long best = -1;
  for (const auto& c : enumerate_T(spec.n, i0, q0)) best = std::max(best, m_of(spec, c));
  return best;
}

long D_of(const HypertetraSpec& spec, bool allow_large) {
  long d = -1;
  for (std::size_t i = 0; i <= spec.n; ++i)
    for (std::size_t q = i + 1; q <= spec.n; ++q) d = std::max(d, M_of(spec, i, q, allow_large).M);
  return d;
}

BoundsReport indeg_interval(const HypertetraSpec& spec, bool allow_large) {
  spec.validate();
  for (std::size_t i = 0; i <= spec.n; ++i)
    for (std::size_t j = i + 1; j <= spec.n; ++j)
      if (spec.s(i, j) == 0)
        throw PreconditionError("the bounds assume s_{i,j} >= 1 for every pair; s_{" + std::to_string(i) + "," +
                                std::to_string(j) + "} = 0");
  BoundsReport r;
  for (std::size_t i = 0; i <= spec.n; ++i)
    for (std::size_t q = i + 1; q <= spec.n; ++q) {
      r.pairs[{i, q}] = M_of(spec, i, q, allow_large);
      r.D = std::max(r.D, r.pairs[{i, q}].M);
    }
  r.upper = kInfinity;
  for (std::size_t i = 0; i <= spec.n; ++i) {
    long total = 1;
    for (std::size_t j = 0; j <= spec.n; ++j)
      if (j != i) total += s_of(spec, i, j);
    if (total < r.upper) {
      r.upper = total;
      r.upper_vertex = i;
    }
  }
  return r;
}

}  // namespace hyperarr
