#pragma once

// Arrangements used across the unit and acceptance tests.

#include <string>
#include <vector>

#include "hyperarr/arrangement.hpp"

namespace fixtures {

using hyperarr::Arrangement;
using hyperarr::HypertetraSpec;
using hyperarr::InnerForm;
using hyperarr::Rational;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Forms listed as (i, j, a_i, a_j) on top of the coordinate hyperplanes.
struct InnerEntry {
  std::size_t i, j;
  Rational ai, aj;
};

inline HypertetraSpec spec_from(std::size_t n, const std::vector<InnerEntry>& entries) {
  HypertetraSpec s;
  s.n = n;
  for (const auto& e : entries) s.inner[{e.i, e.j}].push_back(InnerForm{e.ai, e.aj});
  return s;
}

// x0 x1 x2 (x0 + x1 + x2)
inline Arrangement four_lines() {
  return Arrangement(2, {hyperarr::coordinate_form(3, 0), hyperarr::coordinate_form(3, 1),
                         hyperarr::coordinate_form(3, 2), hyperarr::LinearForm{{1, 1, 1}}});
}

// x0x1x2x3(x0-x1)(x0-2x1)(x0-x2)(x0-x3)(x1-x2)(x1-x3)(x2^2-x3^2): locally free, not free.
inline HypertetraSpec p3_locally_free_spec() {
  return spec_from(3, {{0, 1, q(1), q(-1)},
                       {0, 1, q(1), q(-2)},
                       {0, 2, q(1), q(-1)},
                       {0, 3, q(1), q(-1)},
                       {1, 2, q(1), q(-1)},
                       {1, 3, q(1), q(-1)},
                       {2, 3, q(1), q(-1)},
                       {2, 3, q(1), q(1)}});
}

// The 30-hyperplane arrangement in P^5 with a non-chordal inner point.
inline HypertetraSpec p5_spec() {
  return spec_from(5, {{0, 1, q(1), q(-1, 2)}, {0, 1, q(1), q(-1, 3)}, {0, 2, q(1), q(1)},
                       {0, 3, q(1), q(-1)},    {0, 4, q(1), q(1, 3)},   {0, 5, q(1), q(-1, 2)},
                       {1, 2, q(1), q(1)},     {1, 3, q(1), q(3)},      {1, 4, q(1), q(1)},
                       {1, 5, q(1), q(1)},     {2, 3, q(1), q(-1)},     {2, 3, q(1), q(1)},
                       {2, 4, q(1), q(-1)},    {2, 4, q(1), q(1)},      {2, 5, q(1), q(-1)},
                       {2, 5, q(1), q(1)},     {3, 4, q(1), q(-1)},     {3, 4, q(1), q(1)},
                       {3, 4, q(1), q(-1, 3)}, {3, 4, q(1), q(2)},      {3, 5, q(1), q(-1)},
                       {3, 5, q(1), q(1)},     {4, 5, q(1), q(-1)},     {4, 5, q(1), q(1)}});
}

inline hyperarr::RationalVector p5_x1() { return {q(1), q(2), q(-1), q(1), q(-2), q(2)}; }
inline hyperarr::RationalVector p5_x3() { return {q(1), q(3), q(0), q(-1), q(-3), q(0)}; }

// s = (s01, s02, s03, s12, s13, s23) = (1, 1, 2, 3, 2, 3). The printed example
// uses cube roots of unity; distinct rational ratios give the same s-values.
inline HypertetraSpec bounds_spec() {
  return spec_from(3, {{0, 1, q(1), q(-1)},
                       {0, 2, q(1), q(-2)},
                       {0, 3, q(1), q(-1)},
                       {0, 3, q(1), q(1)},
                       {1, 2, q(1), q(-1)},
                       {1, 2, q(1), q(-2)},
                       {1, 2, q(1), q(-3)},
                       {1, 3, q(1), q(-1)},
                       {1, 3, q(1), q(1)},
                       {2, 3, q(1), q(-1)},
                       {2, 3, q(1), q(-2)},
                       {2, 3, q(1), q(-3)}});
}

}  // namespace fixtures
