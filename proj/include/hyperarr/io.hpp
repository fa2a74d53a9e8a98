#pragma once

// JSON, DOT and plain-text serialization of arrangements and reports.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/bounds.hpp"
#include "hyperarr/derivations.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/triangular.hpp"

namespace hyperarr {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& q);
// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const Json& j);

struct ArrangementInput {
  Arrangement arrangement;
  // Present for files in the structured mode, and for explicit files whose
  // arrangement is complete hypertetrahedral.
  std::optional<HypertetraSpec> spec;
};

// Throws ParseError on malformed input or unknown fields.
ArrangementInput arrangement_from_json(const Json& j);
ArrangementInput read_arrangement(const std::filesystem::path& path);

Json arrangement_to_json(const Arrangement& a);
Json spec_to_json(const HypertetraSpec& spec);

Json polynomial_to_json(const Polynomial& p);
Json derivation_to_json(const Derivation& theta);
Json verdict_to_json(const FreenessVerdict& v);
Json flat_to_json(const Flat& x);
Json lattice_to_json(const Lattice& lattice);
Json local_report_to_json(const LocalFreenessReport& r);
Json bounds_to_json(const BoundsReport& r);
Json classification_to_json(const NormalizedTriangular& normal, const TriangularClassification& c);

// "rows cols" then one line per row of "p/q" entries.
void write_matrix(std::ostream& out, const RationalMatrix& m);
void write_matrix(std::ostream& out, const SparseMatrix& m);

// "2,5,7" style name for a flat.
std::string flat_name(const Flat& x);
// One DOT file per flat of codimension >= 2 with a nonempty Gamma graph.
std::size_t write_gamma_dot_files(const Arrangement& a, const Lattice& lattice, const std::filesystem::path& dir);

}  // namespace hyperarr
