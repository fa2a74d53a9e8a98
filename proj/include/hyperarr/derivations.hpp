#pragma once

// Graded pieces of Der(-log A) and of the Jacobian syzygy module, the
// explicit upper-bound syzygy, Saito's criterion and the freeness decision.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/exactq.hpp"
#include "hyperarr/poly.hpp"

namespace hyperarr {

// Coefficients theta_k of theta = sum_k theta_k d/dx_k.
using Derivation = std::vector<Polynomial>;

struct DerBasis {
  unsigned degree = 0;
  std::vector<Derivation> elements;
};

// Columns (k, monomial of degree d) in that nesting, monomials in descending grlex.
std::size_t derivation_column(std::size_t k, std::size_t monomial_index, std::size_t monomial_count);
Derivation derivation_from_vector(const RationalVector& v, std::size_t nvars, unsigned d);
RationalVector derivation_to_vector(const Derivation& theta, unsigned d);

// theta(H) vanishes on H for every hyperplane H, one residue block per hyperplane.
SparseMatrix der_system(const Arrangement& a, unsigned d);
// sum_k g_k df/dx_k = 0: rows monomials of degree d + |A| - 1.
SparseMatrix syz_system(const Arrangement& a, unsigned d);

std::size_t der_dim(const Arrangement& a, unsigned d, const EliminationOptions& options = {});
DerBasis der_basis(const Arrangement& a, unsigned d);
std::size_t syz_dim(const Arrangement& a, unsigned d, const EliminationOptions& options = {});
std::vector<Derivation> syz_basis(const Arrangement& a, unsigned d);
// Least degree <= cap with a nonzero syzygy.
std::optional<unsigned> indeg_syz(const Arrangement& a, unsigned cap);

bool is_logarithmic(const Arrangement& a, const Derivation& theta);
Polynomial apply_derivation(const Derivation& theta, const Polynomial& p);

// Unknowns theta_k = x_k f_k with f_k of degree d - 1, one divisibility
// constraint per inner hyperplane.
SparseMatrix structured_system(const HypertetraSpec& spec, unsigned d);
std::size_t structured_der_dim(const HypertetraSpec& spec, unsigned d);

unsigned dimcan_degree(const HypertetraSpec& spec, std::size_t i0);
// Vertex minimising sum_j s_{i,j} (smallest index on ties).
std::size_t dimcan_vertex(const HypertetraSpec& spec);
Derivation dimcan_syzygy(const HypertetraSpec& spec, std::size_t i0);

Polynomial derivation_determinant(const std::vector<Derivation>& thetas);
bool saito_verify(const Arrangement& a, const std::vector<Derivation>& thetas);

std::vector<unsigned> minimal_generator_degrees(const Arrangement& a, unsigned cap);

struct FreenessVerdict {
  enum class Kind { Free, NotFree, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<unsigned> exponents;  // Free only, ascending
  std::string certificate;          // NotFree reason or Unknown cause
  unsigned cap = 0;
};

std::string to_string(FreenessVerdict::Kind kind);

inline constexpr int kSaitoTrials = 8;

FreenessVerdict freeness_decide(const Arrangement& a, unsigned cap, std::uint64_t seed = 1);

// Dimcan bound for complete hypertetrahedral inputs, |A| otherwise.
unsigned default_cap(const Arrangement& a);

// g * theta where g is the product of the added forms; verified logarithmic
// for the enlarged arrangement.
Derivation lemma_section_lift(const Arrangement& a, const Arrangement& enlarged, const Derivation& theta);

// Free Hilbert function sum_i C(n + d - e_i, n).
BigInt free_hilbert(std::size_t n, const std::vector<unsigned>& exponents, unsigned d);

}  // namespace hyperarr
