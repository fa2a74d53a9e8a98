// Command-line front end for the hyperarr library.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperarr/bounds.hpp"
#include "hyperarr/derivations.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/io.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/triangular.hpp"

using namespace hyperarr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitSizeGuard = 3;

constexpr std::size_t kGuardHyperplanes = 25;
constexpr std::size_t kGuardDimension = 6;

struct Common {
  std::string file;
  bool json = false;
  bool allow_large = false;
  bool strict = false;
  bool timings = false;
  unsigned threads = 1;
  int cap = -1;
};

void size_guard(const Arrangement& a, bool allow_large) {
  if (allow_large) return;
  if (a.size() > kGuardHyperplanes || a.n() > kGuardDimension)
    throw SizeGuardError("input has " + std::to_string(a.size()) + " hyperplanes in P^" + std::to_string(a.n()) +
                         "; the limit is 25 hyperplanes and n <= 6 (pass --allow-large to override)");
}

unsigned cap_for(const Arrangement& a, int requested) {
  return requested >= 0 ? static_cast<unsigned>(requested) : default_cap(a);
}

bool all_pairs_positive(const HypertetraSpec& spec) {
  for (std::size_t i = 0; i <= spec.n; ++i)
    for (std::size_t j = i + 1; j <= spec.n; ++j)
      if (spec.s(i, j) == 0) return false;
  return true;
}

std::string join(const std::vector<unsigned>& v) {
  std::string out;
  for (unsigned x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json summary_json(const ArrangementInput& in) {
  Json out = {{"n", in.arrangement.n()}, {"hyperplanes", in.arrangement.size()}};
  if (in.spec) {
    Json s = Json::object();
    for (std::size_t i = 0; i <= in.spec->n; ++i)
      for (std::size_t j = i + 1; j <= in.spec->n; ++j) s[std::to_string(i) + "," + std::to_string(j)] = in.spec->s(i, j);
    out["s"] = s;
  }
  return out;
}

int cmd_analyze(const Common& c, bool oracle, const std::string& dot_dir) {
  const ArrangementInput in = read_arrangement(c.file);
  const Arrangement& a = in.arrangement;
  size_guard(a, c.allow_large);
  const unsigned cap = cap_for(a, c.cap);
  Json report = {{"arrangement", summary_json(in)}, {"degree_cap", cap}};
  Json timings = Json::object();
  bool unknown = false;

  Stopwatch t_lattice;
  const Lattice lattice = intersection_lattice(a);
  report["char_poly"] = char_poly_to_string(char_poly(lattice));
  if (!dot_dir.empty()) report["dot_files"] = write_gamma_dot_files(a, lattice, dot_dir);
  timings["lattice"] = t_lattice.seconds();

  if (a.is_complete_hypertetrahedral()) {
    Stopwatch t;
    const LocalFreenessReport local = is_locally_free(a, cap, c.threads);
    report["local_freeness"] = local_report_to_json(local);
    report["locally_free"] = local.kind == GlobalKind::LocallyFree;
    unknown = unknown || local.kind == GlobalKind::Unknown;
    timings["local_freeness"] = t.seconds();
  }
  if (in.spec && all_pairs_positive(*in.spec)) {
    Stopwatch t;
    report["bounds"] = bounds_to_json(indeg_interval(*in.spec, c.allow_large));
    timings["bounds"] = t.seconds();
  }
  if (oracle) {
    Stopwatch t;
    const auto indeg = indeg_syz(a, cap);
    report["indeg"] = indeg ? Json(*indeg) : Json(nullptr);
    report["syz_generator_degrees"] = minimal_generator_degrees(a, cap);
    timings["oracle"] = t.seconds();
  }
  Stopwatch t_free;
  const FreenessVerdict verdict = freeness_decide(a, cap);
  report["freeness"] = verdict_to_json(verdict);
  report["free"] = verdict.kind == FreenessVerdict::Kind::Free;
  unknown = unknown || verdict.kind == FreenessVerdict::Kind::Unknown;
  timings["freeness"] = t_free.seconds();
  if (c.timings) report["timings"] = timings;

  if (c.json) {
    emit(report);
  } else {
    std::cout << "n = " << a.n() << ", |A| = " << a.size() << '\n';
    std::cout << "characteristic polynomial: " << report["char_poly"].get<std::string>() << '\n';
    if (report.contains("local_freeness"))
      std::cout << "local freeness: " << report["local_freeness"]["kind"].get<std::string>() << '\n';
    if (report.contains("bounds"))
      std::cout << "indeg bounds: [" << report["bounds"]["interval"][0] << ", " << report["bounds"]["interval"][1]
                << "], D = " << report["bounds"]["D"] << '\n';
    if (oracle) {
      std::cout << "indeg: " << report["indeg"].dump() << '\n';
      std::cout << "syzygy generator degrees: " << join(report["syz_generator_degrees"]) << '\n';
    }
    std::cout << "freeness: " << to_string(verdict.kind);
    if (verdict.kind == FreenessVerdict::Kind::Free) std::cout << " exponents " << join(verdict.exponents);
    else if (!verdict.certificate.empty()) std::cout << " (" << verdict.certificate << ")";
    std::cout << '\n';
  }
  return unknown && c.strict ? kExitUnknown : kExitOk;
}

int cmd_bounds(const Common& c) {
  const ArrangementInput in = read_arrangement(c.file);
  if (!in.spec) throw NotCompleteError("bounds need a complete hypertetrahedral arrangement");
  const BoundsReport r = indeg_interval(*in.spec, c.allow_large);
  if (c.json) {
    emit(bounds_to_json(r));
  } else {
    for (const auto& [pair, pb] : r.pairs) std::cout << "M(" << pair.first << "," << pair.second << ") = " << pb.M << '\n';
    std::cout << "D = " << r.D << "\ninterval [" << r.lower() << ", " << r.upper << "]\n";
    if (r.inverted()) std::cout << "note: lower bound exceeds upper bound\n";
  }
  return kExitOk;
}

int cmd_indeg(const Common& c, int emit_matrix) {
  const ArrangementInput in = read_arrangement(c.file);
  const Arrangement& a = in.arrangement;
  size_guard(a, c.allow_large);
  if (emit_matrix >= 0) {
    write_matrix(std::cout, syz_system(a, static_cast<unsigned>(emit_matrix)));
    return kExitOk;
  }
  const unsigned cap = cap_for(a, c.cap);
  Json dims = Json::array();
  std::optional<unsigned> indeg;
  for (unsigned d = 0; d <= cap && !indeg; ++d) {
    const std::size_t dim = syz_dim(a, d);
    dims.push_back({{"d", d}, {"syz_dim", dim}});
    if (dim > 0) indeg = d;
  }
  Json report = {{"degree_cap", cap}, {"indeg", indeg ? Json(*indeg) : Json(nullptr)}, {"syz_dims", dims}};
  if (c.json) {
    emit(report);
  } else {
    for (const auto& d : dims) std::cout << "syz_dim(" << d["d"] << ") = " << d["syz_dim"] << '\n';
    std::cout << "indeg: " << (indeg ? std::to_string(*indeg) : "none up to cap " + std::to_string(cap)) << '\n';
  }
  return !indeg && c.strict ? kExitUnknown : kExitOk;
}

int cmd_triangular(const Common& c, int dump_m) {
  const ArrangementInput in = read_arrangement(c.file);
  if (!in.spec || in.spec->n != 2) throw NotCompleteError("expected a complete triangular arrangement (n = 2)");
  const NormalizedTriangular normal = normalize(*in.spec);
  const TriangularSpec& spec = normal.spec;
  if (dump_m >= 0) {
    write_matrix(std::cout, build_M(spec, static_cast<unsigned>(dump_m)).matrix);
    return kExitOk;
  }
  const TriangularIndeg indeg = indeg_triangular(spec);
  Json report = {{"permutation", normal.permutation},
                 {"s", {spec.s1(), spec.s2(), spec.s3()}},
                 {"indeg", indeg.indeg},
                 {"d_A", indeg.d_A ? Json(*indeg.d_A) : Json(nullptr)},
                 {"deferred_to_solver", indeg.deferred}};
  Json per_degree = Json::array();
  for (unsigned d = spec.s3() + 1; d <= spec.s1() + spec.s2(); ++d)
    per_degree.push_back({{"d", d}, {"exprk", exprk(spec, d)}, {"only_euler", to_string(only_euler_at(spec, d))}});
  report["degrees"] = per_degree;
  bool unknown = false;
  if (spec.s3() + 1 <= spec.s1() + spec.s2()) {
    const TriangularClassification cl = classify_free(spec);
    report["classification"] = classification_to_json(normal, cl);
    unknown = cl.verdict.kind == FreenessVerdict::Kind::Unknown;
  }
  if (c.json) {
    emit(report);
  } else {
    std::cout << "normal form s = (" << spec.s1() << ", " << spec.s2() << ", " << spec.s3() << ")\n";
    for (const auto& d : per_degree)
      std::cout << "d = " << d["d"] << ": exprk " << d["exprk"] << ", only Euler: " << d["only_euler"].get<std::string>()
                << '\n';
    std::cout << "indeg: " << indeg.indeg << '\n';
    if (report.contains("classification")) {
      const auto& v = report["classification"]["verdict"];
      std::cout << "classification: " << v["kind"].get<std::string>();
      if (v.contains("exponents")) std::cout << " exponents " << join(v["exponents"]);
      std::cout << '\n';
    }
  }
  return unknown && c.strict ? kExitUnknown : kExitOk;
}

int cmd_locally_free(const Common& c, const std::string& dot_dir, const std::string& lattice_out) {
  const ArrangementInput in = read_arrangement(c.file);
  const Arrangement& a = in.arrangement;
  size_guard(a, c.allow_large);
  if (!a.is_complete_hypertetrahedral()) throw NotCompleteError("local freeness needs a complete hypertetrahedral arrangement");
  const unsigned cap = cap_for(a, c.cap);
  if (!dot_dir.empty() || !lattice_out.empty()) {
    const Lattice lattice = intersection_lattice(a);
    if (!dot_dir.empty()) write_gamma_dot_files(a, lattice, dot_dir);
    if (!lattice_out.empty()) {
      std::ofstream out(lattice_out);
      if (!out) throw Error("cannot write " + lattice_out);
      out << lattice_to_json(lattice).dump(2) << '\n';
    }
  }
  const LocalFreenessReport r = is_locally_free(a, cap, c.threads);
  const Json report = local_report_to_json(r);
  if (c.json) {
    emit(report);
  } else {
    std::cout << report["kind"].get<std::string>() << " (" << r.flats_checked << " flats checked)\n";
    if (r.failing_flat) std::cout << "witness flat: hyperplanes " << flat_name(*r.failing_flat) << '\n';
    if (report.contains("witness_verdict")) std::cout << "reason: " << report["witness_verdict"]["reason"].get<std::string>() << '\n';
  }
  return r.kind == GlobalKind::Unknown && c.strict ? kExitUnknown : kExitOk;
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      out.push_back(std::stoul(part));
    } catch (const std::exception&) {
      throw ParseError("expected a comma-separated list of counts, got \"" + text + "\"");
    }
  }
  return out;
}

struct GenOptions {
  std::string family;
  std::string random;
  std::size_t n = 2;
  unsigned a = 1;
  unsigned r = 1;
  std::string s;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  long range = 1000;
  std::string out;
};

Json generate_one(const GenOptions& g, std::uint64_t seed) {
  if (!g.family.empty()) {
    if (g.family == "boolean") return arrangement_to_json(boolean_arrangement(g.n));
    if (g.family == "braid") return arrangement_to_json(braid_arrangement(g.n));
    if (g.family == "extended-fermat") return spec_to_json(build_extended_fermat(g.n, g.a));
    if (g.family == "sharp") return spec_to_json(build_sharp_family(g.n, g.a, g.r, seed));
    throw ParseError("unknown family \"" + g.family + "\" (boolean, braid, extended-fermat, sharp)");
  }
  RandomSpecOptions options;
  options.range = g.range;
  const auto s = parse_counts(g.s);
  if (g.random == "triangular") {
    if (s.size() != 3) throw ParseError("--s needs three counts for triangular specs");
    return spec_to_json(to_hypertetra(build_random_triangular(s[0], s[1], s[2], seed, options)));
  }
  if (g.random == "hypertet") {
    std::map<VertexPair, std::size_t> counts;
    std::size_t k = 0;
    for (std::size_t i = 0; i <= g.n; ++i)
      for (std::size_t j = i + 1; j <= g.n; ++j, ++k) {
        if (s.size() != 1 && k >= s.size()) throw ParseError("--s needs one count, or one per pair in (i, j) order");
        counts[{i, j}] = s.size() == 1 ? s[0] : s[k];
      }
    if (s.size() != 1 && k != s.size()) throw ParseError("--s lists more counts than pairs");
    return spec_to_json(build_random_general(g.n, counts, seed, options));
  }
  throw ParseError("gen needs --family or --random (triangular, hypertet)");
}

int cmd_gen(const GenOptions& g) {
  Json out;
  if (g.count == 1) {
    out = generate_one(g, g.seed);
  } else {
    out = Json::array();
    for (std::size_t k = 0; k < g.count; ++k) out.push_back(generate_one(g, g.seed + k));
  }
  if (g.out.empty()) {
    emit(out);
  } else {
    std::ofstream f(g.out);
    if (!f) throw Error("cannot write " + g.out);
    f << out.dump(2) << '\n';
  }
  return kExitOk;
}

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<SuiteResult> verify_one(const ArrangementInput& in, const std::set<std::string>& suites, unsigned max_d) {
  std::vector<SuiteResult> out;
  const Arrangement& a = in.arrangement;
  auto wanted = [&](const std::string& s) { return suites.empty() || suites.count(s); };
  if (in.spec && wanted("structured")) {
    std::string detail;
    for (unsigned d = 0; d <= max_d; ++d)
      if (structured_der_dim(*in.spec, d) != der_dim(a, d)) detail += " d=" + std::to_string(d);
    out.push_back({"structured", detail.empty(), detail.empty() ? "" : "mismatch at" + detail});
  }
  std::optional<unsigned> indeg;
  if (in.spec && (wanted("bounds") || wanted("triangular"))) indeg = indeg_syz(a, default_cap(a));
  if (in.spec && all_pairs_positive(*in.spec) && wanted("bounds")) {
    const BoundsReport r = indeg_interval(*in.spec);
    const bool ok = indeg && r.lower() <= static_cast<long>(*indeg) && static_cast<long>(*indeg) <= r.upper;
    out.push_back({"bounds", ok,
                   "indeg " + (indeg ? std::to_string(*indeg) : "none") + " in [" + std::to_string(r.lower()) + ", " +
                       std::to_string(r.upper) + "]"});
  }
  if (in.spec && wanted("dimcan")) {
    const Derivation theta = dimcan_syzygy(*in.spec, dimcan_vertex(*in.spec));
    Polynomial sum(a.nvars());
    const auto partials = jacobian(a);
    for (std::size_t k = 0; k < theta.size(); ++k) sum = sum + theta[k] * partials[k];
    out.push_back({"dimcan", sum.is_zero(), ""});
  }
  if (in.spec && in.spec->n == 2 && wanted("triangular")) {
    const TriangularSpec t = normalize(*in.spec).spec;
    std::string detail;
    for (unsigned d = t.s3() + 1; d <= t.s1() + t.s2(); ++d) {
      const EulerOnly e = only_euler_at(t, d);
      if (e != EulerOnly::NotApplicable && (e == EulerOnly::Yes) != (syz_dim(a, d) == 0))
        detail += " only_euler d=" + std::to_string(d);
    }
    if (!indeg || indeg_triangular(t).indeg != *indeg) detail += " indeg";
    if (t.s3() + 1 <= t.s1() + t.s2()) {
      const FreenessVerdict oracle = freeness_decide(a, default_cap(a));
      const FreenessVerdict mine = classify_free(t).verdict;
      if (oracle.kind != FreenessVerdict::Kind::Unknown &&
          (oracle.kind != mine.kind || oracle.exponents != mine.exponents))
        detail += " classification";
    }
    out.push_back({"triangular", detail.empty(), detail.empty() ? "" : "mismatch:" + detail});
  }
  if (wanted("char-poly")) {
    const FreenessVerdict v = freeness_decide(a, default_cap(a));
    bool ok = true;
    if (v.kind == FreenessVerdict::Kind::Free) {
      auto roots = integer_roots(char_poly(a));
      std::vector<unsigned> expected = v.exponents;
      ok = roots.has_value();
      if (ok) {
        std::sort(roots->begin(), roots->end());
        std::sort(expected.begin(), expected.end());
        ok = *roots == expected;
      }
    }
    out.push_back({"char-poly", ok, to_string(v.kind)});
  }
  return out;
}

int cmd_verify(const Common& c, const std::string& suites_text, unsigned max_d) {
  std::ifstream f(c.file);
  if (!f) throw ParseError("cannot open " + c.file);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(c.file + ": " + e.what());
  }
  std::vector<Json> items;
  if (j.is_array()) items.assign(j.begin(), j.end());
  else items.push_back(j);
  std::set<std::string> suites;
  std::stringstream ss(suites_text);
  for (std::string s; std::getline(ss, s, ',');)
    if (!s.empty()) suites.insert(s);
  for (const auto& s : suites)
    if (s != "structured" && s != "bounds" && s != "dimcan" && s != "triangular" && s != "char-poly")
      throw ParseError("unknown suite \"" + s + "\"");
  bool all_ok = true;
  Json report = Json::array();
  for (std::size_t k = 0; k < items.size(); ++k) {
    const ArrangementInput in = arrangement_from_json(items[k]);
    size_guard(in.arrangement, c.allow_large);
    for (const auto& r : verify_one(in, suites, max_d)) {
      all_ok = all_ok && r.passed;
      if (c.json) report.push_back({{"item", k}, {"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      else std::cout << "[" << k << "] " << r.name << ": " << (r.passed ? "PASS" : "FAIL") << (r.detail.empty() ? "" : "  " + r.detail) << '\n';
    }
  }
  if (c.json) emit(report);
  return all_ok ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperplane arrangement analysis: local freeness, syzygy degrees, bounds, triangular rank tests"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool takes_file = true) {
    if (takes_file) sub->add_option("file", common.file, "Arrangement JSON file")->required();
    sub->add_flag("--json", common.json, "Print a JSON report");
    sub->add_flag("--allow-large", common.allow_large, "Lift the size guard (25 hyperplanes, n <= 6)");
    sub->add_flag("--strict", common.strict, "Exit with code 2 when a verdict is Unknown");
  };

  bool oracle = false;
  std::string dot_dir, lattice_out, suites;
  int emit_matrix = -1, dump_m = -1;
  unsigned max_d = 6;
  GenOptions gen;

  auto* analyze = app.add_subcommand("analyze", "Lattice, local freeness, bounds and freeness verdict");
  add_common(analyze);
  analyze->add_option("--degree-cap", common.cap, "Largest degree searched by the solvers");
  analyze->add_option("--dot-dir", dot_dir, "Write one DOT graph per flat into this directory");
  analyze->add_flag("--oracle", oracle, "Also compute indeg and syzygy generator degrees by linear algebra");
  analyze->add_option("--threads", common.threads, "Worker threads for the per-flat checks")->check(CLI::PositiveNumber);
  analyze->add_flag("--timings", common.timings, "Include wall-clock timings in the report");

  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on the initial syzygy degree");
  add_common(bounds);

  auto* indeg = app.add_subcommand("indeg", "Initial degree of the Jacobian syzygy module");
  add_common(indeg);
  indeg->add_option("--cap,--degree-cap", common.cap, "Largest degree searched");
  indeg->add_option("--emit-matrix", emit_matrix, "Print the syzygy system of this degree and exit");

  auto* triangular = app.add_subcommand("triangular", "Rank matrices and freeness of a triangular arrangement");
  add_common(triangular);
  triangular->add_option("--dump-M", dump_m, "Print the rank matrix of this degree and exit");

  auto* local = app.add_subcommand("locally-free", "Local freeness over the intersection lattice");
  add_common(local);
  local->add_option("--degree-cap", common.cap, "Largest degree searched by the solvers");
  local->add_option("--dot-dir", dot_dir, "Write one DOT graph per flat into this directory");
  local->add_option("--lattice-json", lattice_out, "Write the intersection lattice as JSON");
  local->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* gen_cmd = app.add_subcommand("gen", "Generate arrangement JSON");
  auto* family = gen_cmd->add_option("--family", gen.family, "boolean, braid, extended-fermat or sharp");
  auto* random = gen_cmd->add_option("--random", gen.random, "triangular or hypertet");
  family->excludes(random);
  gen_cmd->add_option("--n", gen.n, "Projective dimension");
  gen_cmd->add_option("--a", gen.a, "Family parameter a");
  gen_cmd->add_option("--r", gen.r, "Family parameter r");
  gen_cmd->add_option("--s", gen.s, "Multiplicities: s1,s2,s3 for triangular; one count or one per pair for hypertet");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--count", gen.count, "Number of arrangements (more than one writes a JSON array)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--range", gen.range, "Bound on numerators and denominators of random ratios")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Cross-check solvers and bounds on an arrangement or a corpus");
  add_common(verify);
  verify->add_option("--suites", suites, "Comma-separated: structured, bounds, dimcan, triangular, char-poly");
  verify->add_option("--max-degree", max_d, "Largest degree for the structured solver comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*analyze) return cmd_analyze(common, oracle, dot_dir);
    if (*bounds) return cmd_bounds(common);
    if (*indeg) return cmd_indeg(common, emit_matrix);
    if (*triangular) return cmd_triangular(common, dump_m);
    if (*local) return cmd_locally_free(common, dot_dir, lattice_out);
    if (*gen_cmd) return cmd_gen(gen);
    if (*verify) return cmd_verify(common, suites, max_d);
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
