#pragma once

// Combinatorial bounds on the initial degree of the Jacobian syzygy module of
// a complete hypertetrahedral arrangement.
//
// A chain for the pair (i0, q0) is a sequence of n-1 triples (i_m, j_m, q_m):
// the first is (i0, j0, q0) with j0 outside {i0, q0}; each later triple adds a
// fresh middle vertex j_m and takes i_m < q_m among the vertices seen so far.
// Its value is the minimum of s_{i0,q0} and the sums s_{i_m,j_m} + s_{j_m,q_m}.
// The lower bound is D + 1 where D is the largest over pairs of the best chain
// value; the upper bound comes from the explicit syzygy at the vertex with
// the smallest total multiplicity.

#include <array>
#include <map>
#include <vector>

#include "hyperarr/arrangement.hpp"

namespace hyperarr {

using Triple = std::array<std::size_t, 3>;
using TripleChain = std::vector<Triple>;

inline constexpr std::size_t kMaxBoundsN = 7;

// Chains in lexicographic order of their flattened triples. Chains using the
// same triples in a different order are listed once (the first one).
std::vector<TripleChain> enumerate_T(std::size_t n, std::size_t i0, std::size_t q0);
bool is_valid_chain(std::size_t n, const TripleChain& chain);

long m_of(const HypertetraSpec& spec, const TripleChain& chain);

struct PairBound {
  long M = 0;
  TripleChain witness;
};

// Max over chains of m_of, computed by memoizing over the set of seen vertices.
PairBound M_of(const HypertetraSpec& spec, std::size_t i0, std::size_t q0, bool allow_large = false);
// Same value by exhaustive enumeration.
long M_by_enumeration(const HypertetraSpec& spec, std::size_t i0, std::size_t q0);
long D_of(const HypertetraSpec& spec, bool allow_large = false);

struct BoundsReport {
  std::map<VertexPair, PairBound> pairs;
  long D = 0;
  long upper = 0;
  std::size_t upper_vertex = 0;
  long lower() const { return D + 1; }
  // Recorded as a finding, never raised: the two bounds are independent results.
  bool inverted() const { return lower() > upper; }
};

// Requires every s_{i,j} >= 1.
BoundsReport indeg_interval(const HypertetraSpec& spec, bool allow_large = false);

}  // namespace hyperarr
