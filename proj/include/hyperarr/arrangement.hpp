#pragma once

// Hyperplane arrangements in projective n-space over the rationals, and the
// structured data of complete hypertetrahedral arrangements: the n+1
// coordinate hyperplanes plus "inner" forms a_i x_i + a_j x_j through the
// codimension-2 faces {x_i = x_j = 0} of the coordinate simplex.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hyperarr/exactq.hpp"
#include "hyperarr/graph.hpp"
#include "hyperarr/poly.hpp"

namespace hyperarr {

using SupportMask = std::uint32_t;

struct LinearForm {
  RationalVector coeffs;

  std::size_t nvars() const { return coeffs.size(); }
  bool is_zero() const;
  // First nonzero coefficient scaled to 1.
  LinearForm canonical() const;
  SupportMask support() const;
  bool proportional_to(const LinearForm& o) const;
  Polynomial to_polynomial() const { return Polynomial::linear(coeffs); }
  std::vector<BigInt> primitive() const { return primitive_integer_vector(coeffs); }
  std::string to_string() const;
  bool operator==(const LinearForm&) const = default;
};

LinearForm coordinate_form(std::size_t nvars, std::size_t k);

class Arrangement {
 public:
  Arrangement() = default;
  // Rejects wrong lengths, zero forms and proportional pairs.
  Arrangement(std::size_t n, std::vector<LinearForm> forms);

  std::size_t n() const { return n_; }
  std::size_t nvars() const { return n_ + 1; }
  std::size_t size() const { return forms_.size(); }
  const std::vector<LinearForm>& forms() const { return forms_; }
  const LinearForm& operator[](std::size_t i) const { return forms_[i]; }

  std::optional<std::size_t> coordinate_index(std::size_t k) const;
  bool has_all_coordinates() const;
  // All coordinate hyperplanes present and every other form has support of size 2.
  bool is_complete_hypertetrahedral() const;
  // Keeps the listed hyperplanes in the given order.
  Arrangement subarrangement(const std::vector<std::size_t>& indices) const;

  bool operator==(const Arrangement&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<LinearForm> forms_;
};

// a_i x_i + a_j x_j, both coefficients nonzero.
struct InnerForm {
  Rational ai;
  Rational aj;
  bool operator==(const InnerForm&) const = default;
};

using VertexPair = std::pair<std::size_t, std::size_t>;

struct HypertetraSpec {
  std::size_t n = 0;
  // (i, j) with i < j  ->  forms r = 1..s_{i,j} in order.
  std::map<VertexPair, std::vector<InnerForm>> inner;

  std::size_t s(std::size_t i, std::size_t j) const;
  std::size_t hyperplane_count() const;
  // Throws InvalidSpecError on bad indices, zero coefficients or repeated ratios.
  void validate() const;
  bool operator==(const HypertetraSpec&) const = default;
};

// Normal form in P^2 with variables (x, y, z) = (x0, x1, x2):
// x - a_i y, b_j x - z, y - c_t z.
struct TriangularSpec {
  RationalVector a;
  RationalVector b;
  RationalVector c;

  std::size_t s1() const { return a.size(); }
  std::size_t s2() const { return b.size(); }
  std::size_t s3() const { return c.size(); }
  // Nonzero, pairwise distinct entries within each list.
  void validate() const;
};

Arrangement realize(const HypertetraSpec& spec);
HypertetraSpec to_hypertetra(const TriangularSpec& spec);
// Reads the structure back from an arrangement; throws NotCompleteError.
HypertetraSpec extract_spec(const Arrangement& a);

Polynomial defining_poly(const Arrangement& a);
std::vector<Polynomial> jacobian(const Arrangement& a);

Arrangement boolean_arrangement(std::size_t n);
Arrangement braid_arrangement(std::size_t n);
Arrangement build_graphic(const Graph& g);

HypertetraSpec build_extended_fermat(std::size_t n, unsigned a);
// Extended Fermat plus (r - 1) a extra hyperplanes through {x_{n-1} = x_n = 0}.
HypertetraSpec build_sharp_family(std::size_t n, unsigned a, unsigned r, std::uint64_t seed);

struct RandomSpecOptions {
  // Numerators and denominators are drawn from [-range, range] and [1, range].
  long range = 1000;
  bool require_general = true;
};

HypertetraSpec build_random_general(std::size_t n, const std::map<VertexPair, std::size_t>& s,
                                    std::uint64_t seed, const RandomSpecOptions& options = {});
TriangularSpec build_random_triangular(std::size_t s1, std::size_t s2, std::size_t s3, std::uint64_t seed,
                                       const RandomSpecOptions& options = {});

// Codim-2 multiplicity census of the sharp family: multiplicity -> flat count.
std::map<std::size_t, std::size_t> sharp_family_census(std::size_t n, unsigned a, unsigned r);

// Every inner flat lies on exactly codim-many hyperplanes.
bool is_general(const HypertetraSpec& spec);
bool is_general(const TriangularSpec& spec);

Rational random_ratio(std::mt19937_64& rng, long range);

inline constexpr int kMaxRejections = 10000;

}  // namespace hyperarr
