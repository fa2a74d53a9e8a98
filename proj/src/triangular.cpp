#include "hyperarr/triangular.hpp"

#include <algorithm>
#include <numeric>

#include "hyperarr/error.hpp"
#include "hyperarr/poly.hpp"

namespace hyperarr {

namespace {

std::size_t choose2(long m) { return m < 2 ? 0 : static_cast<std::size_t>(m * (m - 1) / 2); }

void check_sorted(const TriangularSpec& spec) {
  spec.validate();
  if (!(spec.s1() <= spec.s2() && spec.s2() <= spec.s3()))
    throw PreconditionError("triangular spec must satisfy s1 <= s2 <= s3; normalize first");
  if (spec.s1() == 0) throw PreconditionError("triangular spec needs s1 >= 1");
}

void check_degree(const TriangularSpec& spec, unsigned d) {
  if (d < spec.s3() + 1 || d > spec.s1() + spec.s2())
    throw PreconditionError("degree " + std::to_string(d) + " outside [s3+1, s1+s2] = [" +
                            std::to_string(spec.s3() + 1) + ", " + std::to_string(spec.s1() + spec.s2()) + "]");
}

Rational power(const Rational& base, long e) {
  Rational out = 1;
  Rational b = e < 0 ? Rational(1) / base : base;
  for (long k = 0; k < (e < 0 ? -e : e); ++k) out *= b;
  return out;
}

}  // namespace

NormalizedTriangular normalize(const HypertetraSpec& spec) {
  if (spec.n != 2) throw DimensionError("triangular arrangements live in P^2");
  spec.validate();
  std::array<std::size_t, 3> perm{0, 1, 2};
  std::array<std::size_t, 3> best = perm;
  bool found = false;
  do {
    // New pair (u, v) is old pair (perm[u], perm[v]).
    auto s_new = [&](std::size_t u, std::size_t v) {
      return spec.s(std::min(perm[u], perm[v]), std::max(perm[u], perm[v]));
    };
    std::array<std::size_t, 3> s{s_new(0, 1), s_new(0, 2), s_new(1, 2)};
    if (s[0] <= s[1] && s[1] <= s[2] && !found) {
      best = perm;
      found = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  NormalizedTriangular out;
  out.permutation = best;
  std::array<std::size_t, 3> inverse{};
  for (std::size_t v = 0; v < 3; ++v) inverse[best[v]] = v;
  for (const auto& [pair, forms] : spec.inner) {
    for (const auto& form : forms) {
      // Coefficient of new vertex u and new vertex v (u < v).
      std::size_t u = inverse[pair.first], v = inverse[pair.second];
      Rational cu = form.ai, cv = form.aj;
      if (u > v) {
        std::swap(u, v);
        std::swap(cu, cv);
      }
      if (u == 0 && v == 1) out.spec.a.push_back(-cv / cu);
      else if (u == 0 && v == 2) out.spec.b.push_back(-cu / cv);
      else out.spec.c.push_back(-cv / cu);
    }
  }
  return out;
}

NormalizedTriangular normalize(const TriangularSpec& spec) { return normalize(to_hypertetra(spec)); }

Rational f_power(const TriangularSpec& spec, std::size_t i, std::size_t j, std::size_t r, long s) {
  if (i >= spec.s1() || j >= spec.s2() || r >= spec.s3()) throw PreconditionError("f_power index out of range");
  if (spec.b[j] == 0) throw PreconditionError("f_power needs b_j != 0");
  return power(spec.b[j], -s) - power(spec.a[i] * spec.c[r], s);
}

TriangularMatrixShape matrix_shape(std::size_t s1, std::size_t s2, std::size_t s3, unsigned d) {
  if (!(s1 <= s2 && s2 <= s3) || s1 == 0) throw PreconditionError("shape needs 1 <= s1 <= s2 <= s3");
  if (d < s3 + 1 || d > s1 + s2) throw PreconditionError("degree outside [s3+1, s1+s2]");
  const long S1 = static_cast<long>(s1), S2 = static_cast<long>(s2), S3 = static_cast<long>(s3), D = d;
  TriangularMatrixShape shape;
  shape.d = d;
  shape.rows = s1 * s2 * s3;
  if (2 * D <= S1 + S2 + S3 - 1) {
    shape.matrix_case = MatrixCase::Low;
    shape.cols = static_cast<std::size_t>((D - S1) * (2 * D - S2 - S3 - 1));
  } else {
    shape.matrix_case = MatrixCase::High;
    const long e = 2 * D - S1 - S2 - S3;
    shape.cols = static_cast<std::size_t>((D - S3 - 1) * (D - S1) + (S1 + S3 - D) * e + (D - S2) * (S2 + S3 - D)) +
                 choose2(e + 1);
  }
  return shape;
}

std::size_t exprk(const TriangularSpec& spec, unsigned d) {
  check_sorted(spec);
  return matrix_shape(spec.s1(), spec.s2(), spec.s3(), d).cols;
}

TriangularMatrix build_M(const TriangularSpec& spec, unsigned d) {
  check_sorted(spec);
  check_degree(spec, d);
  const long s1 = static_cast<long>(spec.s1()), s2 = static_cast<long>(spec.s2()), s3 = static_cast<long>(spec.s3());
  const long D = d;
  TriangularMatrix out;
  out.shape = matrix_shape(spec.s1(), spec.s2(), spec.s3(), d);
  auto& cols = out.columns;
  auto block = [&](char name, long l_lo, long l_hi, auto s_lo, auto s_hi) {
    for (long l = l_lo; l <= l_hi; ++l)
      for (long s = s_lo(l); s <= s_hi(l); ++s) cols.push_back({name, s, l});
  };
  // The h block runs over the power of f first, as printed.
  auto h_block = [&] {
    for (long s = 1; s <= D - s3 - 1; ++s)
      for (long l = s1 - s; l <= D - s - 1; ++l) cols.push_back({'h', s, l});
  };
  if (out.shape.matrix_case == MatrixCase::Low) {
    block('g', 0, D - s2 - 1, [&](long l) { return s1 - l; }, [&](long l) { return D - l - 1; });
    h_block();
  } else {
    h_block();
    const long top = 2 * D - s2 - s3;
    block('p', s1 + s3 - D, D - s2 - 1, [&](long) { return D - s3; }, [&](long l) { return top - l - 1; });
    block('q', 0, s1 + s3 - D - 1, [&](long l) { return s1 - l; }, [&](long l) { return top - l - 1; });
    block('t', 0, D - s2 - 1, [&](long l) { return top - l; }, [&](long l) { return D - l - 1; });
  }
  if (cols.size() != out.shape.cols) {
    std::array<std::size_t, 5> counts{};
    for (const auto& c : cols) counts[std::string_view("ghpqt").find(c.block)]++;
    throw InvariantError("triangular matrix column count " + std::to_string(cols.size()) + " != expected " +
                         std::to_string(out.shape.cols) + " (g " + std::to_string(counts[0]) + ", h " +
                         std::to_string(counts[1]) + ", p " + std::to_string(counts[2]) + ", q " +
                         std::to_string(counts[3]) + ", t " + std::to_string(counts[4]) + ")");
  }
  out.matrix = RationalMatrix(out.shape.rows, cols.size());
  std::size_t row = 0;
  for (std::size_t i = 0; i < spec.s1(); ++i)
    for (std::size_t j = 0; j < spec.s2(); ++j)
      for (std::size_t r = 0; r < spec.s3(); ++r, ++row)
        for (std::size_t k = 0; k < cols.size(); ++k)
          out.matrix(row, k) = power(spec.c[r], cols[k].c_exponent) * f_power(spec, i, j, r, cols[k].f_exponent);
  return out;
}

const char* to_string(EulerOnly e) {
  switch (e) {
    case EulerOnly::Yes: return "yes";
    case EulerOnly::No: return "no";
    case EulerOnly::NotApplicable: return "not-applicable";
  }
  return "?";
}

EulerOnly only_euler_at(const TriangularSpec& spec, unsigned d) {
  const TriangularMatrix m = build_M(spec, d);
  if (m.matrix.rows() < m.matrix.cols()) return EulerOnly::NotApplicable;
  return rank(m.matrix) == m.matrix.cols() ? EulerOnly::Yes : EulerOnly::No;
}

TriangularIndeg indeg_triangular(const TriangularSpec& spec) {
  check_sorted(spec);
  const unsigned s1 = spec.s1(), s2 = spec.s2(), s3 = spec.s3();
  TriangularIndeg out;
  out.indeg = s1 + s2 + 1;
  if (s3 >= s1 + s2) return out;
  std::optional<Arrangement> realized;
  for (unsigned d = s3 + 1; d <= s1 + s2; ++d) {
    EulerOnly e = only_euler_at(spec, d);
    if (e == EulerOnly::NotApplicable) {
      out.deferred.push_back(d);
      if (!realized) realized = realize(to_hypertetra(spec));
      e = syz_dim(*realized, d) == 0 ? EulerOnly::Yes : EulerOnly::No;
    }
    if (e == EulerOnly::No) {
      out.d_A = d;
      out.indeg = d;
      return out;
    }
  }
  return out;
}

std::size_t expected_profile_rank(const TriangularSpec& spec, unsigned d, unsigned k) {
  const long first = static_cast<long>(spec.s3() + 1 + k);
  const long second = static_cast<long>(spec.s1() + spec.s2() + 1 - k);
  long value = static_cast<long>(exprk(spec, d));
  const long D = d;
  if (D >= first) value -= static_cast<long>(choose2(2 + D - first));
  if (D >= second) value -= static_cast<long>(choose2(2 + D - second));
  return value < 0 ? 0 : static_cast<std::size_t>(value);
}

TriangularClassification classify_free(const TriangularSpec& spec) {
  check_sorted(spec);
  const unsigned s1 = spec.s1(), s2 = spec.s2(), s3 = spec.s3();
  if (s3 + 1 > s1 + s2) throw PreconditionError("classification needs s3 + 1 <= s1 + s2");
  TriangularClassification out;
  for (unsigned d = s3 + 1; d <= s1 + s2; ++d) {
    const TriangularMatrix m = build_M(spec, d);
    out.ranks.push_back({d, rank(m.matrix), m.matrix.cols()});
  }
  std::vector<unsigned> matches;
  for (unsigned k = 0; 2 * k <= s1 + s2 - s3; ++k) {
    const bool ok = std::all_of(out.ranks.begin(), out.ranks.end(), [&](const auto& r) {
      return r[1] == expected_profile_rank(spec, static_cast<unsigned>(r[0]), k);
    });
    if (ok) matches.push_back(k);
  }
  out.verdict.cap = s1 + s2 + 1;
  if (matches.size() == 1) {
    out.k = matches[0];
    out.verdict.kind = FreenessVerdict::Kind::Free;
    out.verdict.exponents = {1, s3 + 1 + matches[0], s1 + s2 + 1 - matches[0]};
  } else if (matches.empty()) {
    out.verdict.kind = FreenessVerdict::Kind::NotFree;
    out.verdict.certificate = "rank profile matches no admissible exponent shift";
  } else {
    out.verdict.kind = FreenessVerdict::Kind::Unknown;
    out.verdict.certificate = "rank profile matches several exponent shifts";
  }
  return out;
}

}  // namespace hyperarr
