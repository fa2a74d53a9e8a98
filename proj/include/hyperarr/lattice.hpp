#pragma once

// Intersection lattice of a central arrangement and the local-freeness test
// for complete hypertetrahedral arrangements: A_X is free exactly when the
// graph Gamma_X is chordal and the projected coordinate part pi(A_{W_X}) is
// free.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/derivations.hpp"
#include "hyperarr/graph.hpp"

namespace hyperarr {

// Bit i set when hyperplane i contains the flat.
using HyperplaneSet = std::uint64_t;

inline constexpr std::size_t kMaxLatticeHyperplanes = 64;

struct Flat {
  HyperplaneSet hyperplanes = 0;  // closed
  std::size_t codim = 0;
  // Integer basis of the flat viewed as a linear subspace of Q^{n+1}.
  std::vector<std::vector<BigInt>> span;

  std::size_t multiplicity() const { return static_cast<std::size_t>(__builtin_popcountll(hyperplanes)); }
  std::vector<std::size_t> indices() const;
  // An independent subset of the contained forms cutting out the flat.
  std::vector<LinearForm> equations(const Arrangement& a) const;
  bool contains_hyperplane(std::size_t i) const { return (hyperplanes >> i) & 1; }
};

// Levels by codimension. Level 0 is the whole space; the top level is the
// centre of the arrangement. Levels are generated on demand.
class Lattice {
 public:
  explicit Lattice(const Arrangement& a, std::size_t max_codim = SIZE_MAX);

  const Arrangement& arrangement() const { return arrangement_; }
  // Rank of the arrangement (codimension of its centre).
  std::size_t rank() const { return rank_; }
  std::size_t max_codim() const { return levels_.size() - 1; }
  const std::vector<Flat>& level(std::size_t codim) const { return levels_.at(codim); }
  // Generates the next level; false once the centre has been reached.
  bool extend();
  // Projective flats: codimension 1 .. min(n, built levels).
  std::vector<const Flat*> flats() const;
  const Flat* find(HyperplaneSet hyperplanes) const;

 private:
  Arrangement arrangement_;
  std::vector<std::vector<BigInt>> integer_forms_;
  std::size_t rank_ = 0;
  std::vector<std::vector<Flat>> levels_;
  std::vector<std::unordered_map<HyperplaneSet, std::size_t>> index_;
};

Lattice intersection_lattice(const Arrangement& a);

// Flat cut out by the given equations; throws PreconditionError when the
// subspace is not an intersection of hyperplanes of the arrangement.
Flat flat_from_equations(const Arrangement& a, const std::vector<LinearForm>& equations);
// Flat spanned by a point (all hyperplanes through it, closed).
Flat flat_through_point(const Arrangement& a, const RationalVector& point);
Flat flat_from_hyperplanes(const Arrangement& a, HyperplaneSet generators);

Arrangement localize(const Arrangement& a, const Flat& x);
// Intersection of the coordinate hyperplanes containing X; nullopt when X is inner.
std::optional<Flat> w_of(const Arrangement& a, const Flat& x);
Graph gamma_graph(const Arrangement& a, const Flat& x);
// Rescales x_i -> p_i x_i so every hyperplane becomes x_i - x_j; returns the edges.
Graph normalize_to_graphic(const Arrangement& sub, const RationalVector& p);
// Coordinate deletion of the variables outside `keep` (ascending order).
Arrangement project(const Arrangement& a, SupportMask keep);

enum class LocalKind { LocallyFreeAtX, NotFreeAtX, Unknown };

struct LocalVerdict {
  LocalKind kind = LocalKind::Unknown;
  // For NotFreeAtX: either a chordless cycle of Gamma_X or the verdict on pi(A_W).
  std::optional<std::vector<unsigned>> cycle;
  std::optional<FreenessVerdict> projection;
  std::string reason;
};

// Freeness verdicts of projected localizations keyed by their hyperplane
// sets; safe for concurrent use.
class VerdictCache {
 public:
  std::optional<FreenessVerdict> get(const std::string& key) const;
  void put(const std::string& key, const FreenessVerdict& v);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, FreenessVerdict> entries_;
};

LocalVerdict is_locally_free_at(const Arrangement& a, const Flat& x, unsigned cap, VerdictCache* cache = nullptr);

enum class GlobalKind { LocallyFree, NotLocallyFree, Unknown };

struct LocalFreenessReport {
  GlobalKind kind = GlobalKind::Unknown;
  std::optional<Flat> failing_flat;
  std::optional<LocalVerdict> failing_verdict;
  std::size_t flats_checked = 0;
  std::size_t unknown_flats = 0;
};

// Checks flats of codimension 2..n in increasing codimension and stops at
// the first level with a failure.
LocalFreenessReport is_locally_free(const Arrangement& a, unsigned cap, unsigned threads = 1);

bool complete_star_shortcut(const Arrangement& a, const Flat& x);

std::map<std::size_t, std::size_t> codim2_profile(const Arrangement& a);

// Coefficients by ascending power of t, in n+1 ambient dimensions.
std::vector<BigInt> char_poly(const Arrangement& a);
std::vector<BigInt> char_poly(const Lattice& lattice);
std::string char_poly_to_string(const std::vector<BigInt>& coeffs);
// Nonnegative integer roots with multiplicity when chi splits that way.
std::optional<std::vector<unsigned>> integer_roots(const std::vector<BigInt>& coeffs);

}  // namespace hyperarr
