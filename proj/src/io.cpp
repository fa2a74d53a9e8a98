#include "hyperarr/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(where + ": unknown field \"" + key + "\"");
  }
}

const Json& required(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field \"" + std::string(key) + "\"");
  return j.at(key);
}

std::size_t to_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

VertexPair parse_pair_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw ParseError("pair key \"" + key + "\" must look like \"i,j\"");
  try {
    std::size_t used_i = 0, used_j = 0;
    const std::string left = key.substr(0, comma), right = key.substr(comma + 1);
    const auto i = std::stoul(left, &used_i), j = std::stoul(right, &used_j);
    if (used_i != left.size() || used_j != right.size()) throw ParseError("");
    return {i, j};
  } catch (const std::exception&) {
    throw ParseError("pair key \"" + key + "\" must look like \"i,j\"");
  }
}

Json exponent_json(const Monomial& m, std::size_t nvars) {
  Json e = Json::array();
  for (unsigned v : m.exponents(nvars)) e.push_back(v);
  return e;
}

std::string kind_name(LocalKind k) {
  switch (k) {
    case LocalKind::LocallyFreeAtX: return "locally-free-at-X";
    case LocalKind::NotFreeAtX: return "not-free-at-X";
    case LocalKind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string kind_name(GlobalKind k) {
  switch (k) {
    case GlobalKind::LocallyFree: return "locally-free";
    case GlobalKind::NotLocallyFree: return "not-locally-free";
    case GlobalKind::Unknown: return "unknown";
  }
  return "unknown";
}

Json chain_to_json(const TripleChain& chain) {
  Json out = Json::array();
  for (const auto& t : chain) out.push_back({t[0], t[1], t[2]});
  return out;
}

}  // namespace

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  throw ParseError("rational must be a string \"p/q\" or an integer");
}

ArrangementInput arrangement_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("arrangement: expected an object");
  const std::size_t n = to_count(required(j, "n", "arrangement"), "n");
  if (j.contains("hyperplanes")) {
    reject_unknown(j, {"n", "hyperplanes"}, "arrangement");
    const Json& hs = j.at("hyperplanes");
    if (!hs.is_array()) throw ParseError("hyperplanes: expected an array");
    std::vector<LinearForm> forms;
    for (const auto& h : hs) {
      if (!h.is_array()) throw ParseError("hyperplane: expected an array of coefficients");
      LinearForm f;
      for (const auto& c : h) f.coeffs.push_back(rational_from_json(c));
      forms.push_back(std::move(f));
    }
    Arrangement a(n, forms);
    std::optional<HypertetraSpec> spec;
    if (a.is_complete_hypertetrahedral()) spec = extract_spec(a);
    return {std::move(a), std::move(spec)};
  }
  reject_unknown(j, {"n", "s", "inner"}, "arrangement");
  const Json& inner = required(j, "inner", "arrangement");
  if (!inner.is_array()) throw ParseError("inner: expected an array");
  std::map<VertexPair, std::size_t> declared;
  if (j.contains("s")) {
    if (!j.at("s").is_object()) throw ParseError("s: expected an object keyed by \"i,j\"");
    for (const auto& [key, value] : j.at("s").items()) declared[parse_pair_key(key)] = to_count(value, "s[" + key + "]");
  }
  std::map<VertexPair, std::map<std::size_t, InnerForm>> by_pair;
  for (const auto& e : inner) {
    reject_unknown(e, {"i", "j", "r", "ai", "aj"}, "inner entry");
    const std::size_t i = to_count(required(e, "i", "inner entry"), "i");
    const std::size_t jj = to_count(required(e, "j", "inner entry"), "j");
    const std::size_t r = to_count(required(e, "r", "inner entry"), "r");
    if (r == 0) throw ParseError("inner entry: r counts from 1");
    if (!by_pair[{i, jj}].emplace(r, InnerForm{rational_from_json(required(e, "ai", "inner entry")),
                                               rational_from_json(required(e, "aj", "inner entry"))})
             .second)
      throw ParseError("inner entry: repeated (i, j, r) = (" + std::to_string(i) + ", " + std::to_string(jj) + ", " +
                       std::to_string(r) + ")");
  }
  HypertetraSpec spec;
  spec.n = n;
  for (auto& [pair, forms] : by_pair) {
    std::size_t expected = 1;
    for (auto& [r, form] : forms) {
      if (r != expected) throw ParseError("inner entries for a pair must use r = 1..s without gaps");
      spec.inner[pair].push_back(form);
      ++expected;
    }
  }
  for (const auto& [pair, count] : declared) {
    const auto it = spec.inner.find(pair);
    const std::size_t have = it == spec.inner.end() ? 0 : it->second.size();
    if (have != count)
      throw ParseError("s[" + std::to_string(pair.first) + "," + std::to_string(pair.second) + "] = " +
                       std::to_string(count) + " but " + std::to_string(have) + " inner forms were given");
  }
  if (j.contains("s"))
    for (const auto& [pair, forms] : spec.inner)
      if (!declared.count(pair))
        throw ParseError("inner forms given for a pair missing from s");
  spec.validate();
  Arrangement a = realize(spec);
  return {std::move(a), std::move(spec)};
}

ArrangementInput read_arrangement(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return arrangement_from_json(j);
}

Json arrangement_to_json(const Arrangement& a) {
  Json hs = Json::array();
  for (const auto& f : a.forms()) {
    Json row = Json::array();
    for (const auto& c : f.coeffs) row.push_back(rational_to_json(c));
    hs.push_back(row);
  }
  return {{"n", a.n()}, {"hyperplanes", hs}};
}

Json spec_to_json(const HypertetraSpec& spec) {
  Json s = Json::object(), inner = Json::array();
  for (const auto& [pair, forms] : spec.inner) {
    s[std::to_string(pair.first) + "," + std::to_string(pair.second)] = forms.size();
    for (std::size_t r = 0; r < forms.size(); ++r)
      inner.push_back({{"i", pair.first},
                       {"j", pair.second},
                       {"r", r + 1},
                       {"ai", rational_to_json(forms[r].ai)},
                       {"aj", rational_to_json(forms[r].aj)}});
  }
  return {{"n", spec.n}, {"s", s}, {"inner", inner}};
}

Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) out.push_back({{"exp", exponent_json(m, p.nvars())}, {"coef", rational_to_json(c)}});
  return out;
}

Json derivation_to_json(const Derivation& theta) {
  Json out = Json::array();
  for (const auto& p : theta) out.push_back(polynomial_to_json(p));
  return out;
}

Json verdict_to_json(const FreenessVerdict& v) {
  Json out = {{"kind", to_string(v.kind)}, {"cap", v.cap}};
  if (v.kind == FreenessVerdict::Kind::Free) out["exponents"] = v.exponents;
  if (!v.certificate.empty()) out["certificate"] = v.certificate;
  return out;
}

Json flat_to_json(const Flat& x) {
  return {{"codim", x.codim}, {"hyperplanes", x.indices()}, {"multiplicity", x.multiplicity()}};
}

Json lattice_to_json(const Lattice& lattice) {
  Json flats = Json::array();
  for (const Flat* x : lattice.flats()) flats.push_back(flat_to_json(*x));
  return {{"rank", lattice.rank()}, {"flats", flats}};
}

Json local_report_to_json(const LocalFreenessReport& r) {
  Json out = {{"kind", kind_name(r.kind)}, {"flats_checked", r.flats_checked}, {"unknown_flats", r.unknown_flats}};
  if (r.failing_flat) out["witness"] = flat_to_json(*r.failing_flat);
  if (r.failing_verdict) {
    Json v = {{"kind", kind_name(r.failing_verdict->kind)}, {"reason", r.failing_verdict->reason}};
    if (r.failing_verdict->cycle) v["chordless_cycle"] = *r.failing_verdict->cycle;
    if (r.failing_verdict->projection) v["projection"] = verdict_to_json(*r.failing_verdict->projection);
    out["witness_verdict"] = v;
  }
  return out;
}

Json bounds_to_json(const BoundsReport& r) {
  Json pairs = Json::array();
  for (const auto& [pair, pb] : r.pairs)
    pairs.push_back({{"i0", pair.first}, {"q0", pair.second}, {"M", pb.M}, {"witness", chain_to_json(pb.witness)}});
  return {{"pairs", pairs},
          {"D", r.D},
          {"upper", r.upper},
          {"upper_vertex", r.upper_vertex},
          {"interval", {r.lower(), r.upper}},
          {"inverted", r.inverted()}};
}

Json classification_to_json(const NormalizedTriangular& normal, const TriangularClassification& c) {
  Json ranks = Json::array();
  for (const auto& r : c.ranks) ranks.push_back({{"d", r[0]}, {"rank", r[1]}, {"exprk", r[2]}});
  Json out = {{"permutation", normal.permutation},
              {"s", {normal.spec.s1(), normal.spec.s2(), normal.spec.s3()}},
              {"ranks", ranks},
              {"verdict", verdict_to_json(c.verdict)}};
  out["k"] = c.k ? Json(*c.k) : Json(nullptr);
  return out;
}

void write_matrix(std::ostream& out, const RationalMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << to_string(m(r, c));
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const SparseMatrix& m) { write_matrix(out, m.to_dense()); }

std::string flat_name(const Flat& x) {
  std::string name;
  for (std::size_t i : x.indices()) name += (name.empty() ? "" : ",") + std::to_string(i);
  return name;
}

std::size_t write_gamma_dot_files(const Arrangement& a, const Lattice& lattice, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::size_t written = 0;
  for (const Flat* x : lattice.flats()) {
    if (x->codim < 2) continue;
    const Graph g = gamma_graph(a, *x);
    if (g.vertices.empty()) continue;
    const std::string name = flat_name(*x);
    std::ofstream out(dir / (name + ".dot"));
    if (!out) throw Error("cannot write " + (dir / (name + ".dot")).string());
    out << to_dot(g, "flat_" + std::to_string(written));
    ++written;
  }
  return written;
}

}  // namespace hyperarr
