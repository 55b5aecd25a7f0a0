#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgcat/constructions.hpp"
#include "dgcat/lens.hpp"
#include "dgcat/simplify.hpp"
#include "dgcat/suites.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dgcat;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Missing files and malformed input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    try {
      rethrow_json_error(text, e);
    } catch (const ParseError& pe) {
      throw InputError(what + ": " + pe.what());
    }
  }
}

json read_json(const fs::path& path) { return parse_json(read_file(path), path.string()); }

// A span file entry is either a path relative to the span file or an inline object.
json resolve_entry(const json& span, const char* key, const fs::path& base) {
  if (!span.contains(key)) throw InputError(std::string("span file lacks \"") + key + "\"");
  const json& v = span[key];
  if (v.is_string()) return read_json(base / v.get<std::string>());
  if (v.is_object()) return v;
  throw InputError(std::string("span entry \"") + key + "\" must be a path or an object");
}

PresentationPtr load_presentation(const json& j, const std::string& what) {
  try {
    return share(presentation_from_json(j));
  } catch (const Error& e) {
    throw InputError(what + ": " + e.what());
  }
}

PresentationPtr load_presentation(const fs::path& path) {
  return load_presentation(read_json(path), path.string());
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : list) {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> names_from(const json& span, const char* key, const std::string& flag) {
  if (!flag.empty()) return split_names(flag);
  if (!span.contains(key)) return {};
  return span[key].get<std::vector<std::string>>();
}

json report_json(const ValidationReport& r) {
  json issues = json::array();
  for (const Issue& i : r.issues) issues.push_back({{"subject", i.subject}, {"check", i.check}, {"message", i.message}});
  return {{"ok", r.ok()}, {"issues", issues}};
}

std::string render_presentation(const DgPresentation& p) {
  std::ostringstream out;
  out << "objects:";
  for (const auto& o : p.objects()) out << ' ' << o;
  out << '\n';
  for (std::size_t g = 0; g < p.size(); ++g) {
    const GeneratorDecl& decl = p.gen(static_cast<GenIndex>(g));
    out << "  " << decl.name << " : " << p.signature().object_name(decl.source) << " -> "
        << p.signature().object_name(decl.target) << ", deg " << decl.degree << ", d = "
        << p.format(p.differential(static_cast<GenIndex>(g))) << '\n';
  }
  for (const InverseRecord& r : p.inverses()) {
    out << "  inverse of " << p.format(r.base) << ": " << r.inverse << ", " << r.hat << ", " << r.check << ", "
        << r.bar << '\n';
  }
  return out.str();
}

json provenance_json(const Provenance& prov) { return {{"objects", prov.objects}, {"generators", prov.generators}}; }

void print_log(const RewriteLog& log) {
  for (const RewriteRecord& r : log) {
    std::cout << "  " << r.move << ' ' << r.args.dump();
    if (!r.generators_removed.empty()) {
      std::cout << " removed";
      for (const auto& g : r.generators_removed) std::cout << ' ' << g;
    }
    for (const auto& [from, to] : r.generators_renamed) std::cout << ' ' << from << "->" << to;
    std::cout << '\n';
  }
}

struct Common {
  bool json_out = false;
  std::string out_file;
  std::string log_file;
};

int emit_presentation_result(const Common& c, const DgPresentation& p, json extra, const RewriteLog* log) {
  ValidationReport v = validate(p);
  if (!c.out_file.empty()) write_file(c.out_file, serialize_presentation(p));
  if (log != nullptr && !c.log_file.empty()) write_file(c.log_file, log_to_json(*log).dump(2));
  if (c.json_out) {
    extra["presentation"] = presentation_to_json(p);
    extra["validation"] = report_json(v);
    if (log != nullptr) extra["log"] = log_to_json(*log);
    std::cout << extra.dump(2) << '\n';
  } else {
    std::cout << render_presentation(p);
    if (log != nullptr && !log->empty()) {
      std::cout << "rewrite log:\n";
      print_log(*log);
    }
    std::cout << (v.ok() ? "valid" : v.to_string()) << '\n';
  }
  return v.ok() ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, bool json_out) {
  json j = read_json(file);
  ValidationReport report;
  std::string error;
  try {
    report = validate(presentation_from_json(j));
  } catch (const Error& e) {
    error = e.what();
    report.add(file, "structure", error);
  }
  if (json_out) {
    json out = report_json(report);
    out["file"] = file;
    std::cout << out.dump(2) << '\n';
  } else {
    std::string text = report.to_string();
    std::cout << text << (text.ends_with('\n') ? "" : "\n");
  }
  return report.ok() ? kOk : kFailed;
}

struct HocolimArgs {
  std::string span_file;
  std::string localize_a, localize_b, localize_c;
  bool simplify = false;
};

int cmd_hocolim(const HocolimArgs& a, const Common& c) {
  fs::path path(a.span_file);
  json span = read_json(path);
  fs::path base = path.parent_path();
  PresentationPtr cp = load_presentation(resolve_entry(span, "C", base), "C");
  PresentationPtr ap = load_presentation(resolve_entry(span, "A", base), "A");
  PresentationPtr bp = load_presentation(resolve_entry(span, "B", base), "B");
  std::optional<Span> sp;
  try {
    sp.emplace(functor_from_json(resolve_entry(span, "alpha", base), cp, ap),
               functor_from_json(resolve_entry(span, "beta", base), cp, bp));
  } catch (const Error& e) {
    throw InputError(std::string("span functors: ") + e.what());
  }
  for (const char* leg : {"alpha", "beta"}) {
    ValidationReport r = check_dg(std::string(leg) == "alpha" ? sp->alpha : sp->beta);
    if (!r.ok()) {
      std::cerr << leg << " is not a dg functor: " << r.to_string() << '\n';
      return kFailed;
    }
  }
  auto s_a = names_from(span, "localize_a", a.localize_a);
  auto s_b = names_from(span, "localize_b", a.localize_b);
  auto s_c = names_from(span, "localize_c", a.localize_c);
  HocolimResult h = (s_a.empty() && s_b.empty() && s_c.empty())
                        ? homotopy_pushout(*sp)
                        : homotopy_pushout_localized(*sp, s_a, s_b, s_c);
  json extra = {{"provenance", provenance_json(h.provenance)}};
  if (!a.simplify) {
    if (!c.json_out) std::cout << "# homotopy pushout\n";
    return emit_presentation_result(c, *h.result, extra, nullptr);
  }
  SimplifyResult s = simplify(*h.result);
  extra["hocolim"] = presentation_to_json(*h.result);
  if (!c.json_out) std::cout << "# homotopy pushout, simplified\n";
  return emit_presentation_result(c, s.result, extra, &s.log);
}

int cmd_simplify(const std::string& file, const std::string& strategy_file, const Common& c) {
  PresentationPtr p = load_presentation(fs::path(file));
  Strategy strategy{Step::greedy()};
  if (!strategy_file.empty()) strategy = strategy_from_json(read_json(strategy_file));
  SimplifyResult s = simplify(*p, strategy);
  return emit_presentation_result(c, s.result, json::object(), &s.log);
}

int cmd_replay(const std::string& file, const std::string& log_file, const std::string& expected_file,
               const Common& c) {
  PresentationPtr p = load_presentation(fs::path(file));
  RewriteLog log = log_from_json(read_json(log_file));
  SimplifyResult s = replay(*p, log);
  json extra = json::object();
  int code = kOk;
  if (!expected_file.empty()) {
    PresentationPtr expected = load_presentation(fs::path(expected_file));
    bool same = s.result == *expected;
    extra["matches_expected"] = same;
    if (!c.json_out) std::cout << (same ? "# matches expected\n" : "# differs from expected\n");
    if (!same) code = kFailed;
  }
  int v = emit_presentation_result(c, s.result, extra, &s.log);
  return code != kOk ? code : v;
}

struct SuiteArgs {
  std::string name;
  SuiteOptions options;
  bool json_out = false;
};

int print_suite(const SuiteReport& r, bool json_out) {
  if (json_out) {
    std::cout << r.to_json().dump(2) << '\n';
  } else {
    std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)\n";
    for (const auto& n : r.notes) std::cout << "  " << n << '\n';
    for (const auto& f : r.failures) std::cout << "  failure: " << f << '\n';
  }
  return r.ok ? kOk : kFailed;
}

int cmd_suite(SuiteArgs a) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), a.name) == names.end()) {
    std::cerr << "unknown suite " << a.name << "; known:";
    for (const auto& n : names) std::cerr << ' ' << n;
    std::cerr << '\n';
    return kUsage;
  }
  a.options.progress = [](const std::string& line) {
    std::cout << (line.rfind('#', 0) == 0 ? line : "# " + line) << '\n' << std::flush;
  };
  return print_suite(run_suite(a.name, a.options), a.json_out);
}

// ---------------------------------------------------------------------------

struct LensArgs {
  int p = 0;
  int q = 0;
  int q2 = 0;
  int n = 1;
  int m = -1;
  int xmax = 0;
  int cases = 0;
  std::uint64_t seed = 20240611;
  bool exhaustive = false;
  bool json_out = false;
};

LensParams lens_params(const LensArgs& a) {
  if (a.p == 0 || a.q == 0) throw InputError("--p and --q are required");
  return LensParams::make(a.p, a.q);
}

json params_json(const LensParams& l) { return {{"p", l.p}, {"q", l.q}, {"qbar", l.qbar}, {"r", l.r}}; }

int finish(const json& j, bool ok, bool json_out, const std::string& text) {
  if (json_out) {
    json out = j;
    out["ok"] = ok;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << text << (ok ? "ok\n" : "FAILED\n");
  }
  return ok ? kOk : kFailed;
}

int lens_dga(const LensArgs& a) {
  LensParams l = lens_params(a);
  PresentationPtr c = build_cpq(l);
  ValidationReport v = validate(*c);
  json j = {{"params", params_json(l)}, {"presentation", presentation_to_json(*c)}, {"validation", report_json(v)}};
  std::string text = render_presentation(*c) + (v.ok() ? "" : v.to_string() + "\n");
  return finish(j, v.ok(), a.json_out, text);
}

int lens_chi(const LensArgs& a) {
  LensParams l = lens_params(a);
  PresentationPtr c = build_cpq(l);
  Element ch = chi(l, *c);
  Element lam = lambda_elt(l, *c);
  Element d_chi = extend_differential(*c, ch);
  Element d_lam = extend_differential(*c, lam);
  bool ok = d_chi.is_zero() && d_lam == c->element("x*y - y*x");
  json j = {{"params", params_json(l)},
            {"chi", c->format(ch)},
            {"lambda", c->format(lam)},
            {"d_chi", c->format(d_chi)},
            {"d_lambda", c->format(d_lam)}};
  std::string text = "chi = " + c->format(ch) + "\nd(chi) = " + c->format(d_chi) + "\nlambda = " + c->format(lam) +
                     "\nd(lambda) = " + c->format(d_lam) + "\n";
  return finish(j, ok, a.json_out, text);
}

int lens_pipeline(const LensArgs& a) {
  LensParams l = lens_params(a);
  PipelineResult r = heegaard_pipeline(l);
  SimplifyResult again = replay(r.hocolim, r.log);
  bool replayed = again.result == r.result;
  bool ok = r.comparison.ok() && replayed;
  json j = {{"params", params_json(l)},
            {"hocolim", presentation_to_json(r.hocolim)},
            {"result", presentation_to_json(r.result)},
            {"log", log_to_json(r.log)},
            {"comparison", report_json(r.comparison)},
            {"replay_matches", replayed}};
  std::ostringstream text;
  text << "# hocolim has " << r.hocolim.size() << " generators\nrewrite log:\n";
  std::streambuf* old = std::cout.rdbuf(text.rdbuf());
  print_log(r.log);
  std::cout.rdbuf(old);
  text << "result:\n" << render_presentation(r.result);
  text << "comparison with C_{" << l.p << "," << l.q << "}: " << r.comparison.to_string() << '\n';
  text << "replay: " << (replayed ? "same result" : "different result") << '\n';
  return finish(j, ok, a.json_out, text.str());
}

int lens_pi(const LensArgs& a) {
  LensParams l = lens_params(a);
  if (a.n < 1) throw InputError("--n must be at least 1");
  PiMap pi(l);
  const DgPresentation& c = pi.domain();
  ValidationReport dg = pi.check_dg();
  Element ch = chi(l, c);
  Element chn = Element::identity(0);
  for (int k = 0; k < a.n; ++k) chn = chn * ch;
  Integer pn = 1;
  for (int k = 0; k < a.n; ++k) pn *= l.p;
  bool ok = dg.ok();
  json images = json::array();
  std::ostringstream text;
  std::vector<std::vector<Integer>> rows;
  for (int k = 0; k < l.p; ++k) {
    Element xk = k == 0 ? Element::identity(0) : c.element("x^" + std::to_string(k));
    CyclicElement img = pi.apply(xk * chn);
    CyclicElement expected = CyclicElement::monomial(l.p, k - static_cast<long long>(a.n) * l.q, a.n, pn);
    bool match = img == expected;
    ok = ok && match;
    std::vector<Integer> row;
    for (int i = 0; i < l.p; ++i) row.push_back(img.coefficient(i, a.n));
    rows.push_back(row);
    images.push_back({{"k", k}, {"image", img.to_string()}, {"expected", expected.to_string()}, {"match", match}});
    text << "pi(x^" << k << " chi^" << a.n << ") = " << img.to_string() << (match ? "" : "  expected " + expected.to_string())
         << '\n';
  }
  int rank = integer_rank(rows);
  ok = ok && rank == l.p;
  text << "rank " << rank << " of " << l.p << '\n';
  json j = {{"params", params_json(l)}, {"n", a.n}, {"pi_is_dg", dg.ok()}, {"images", images}, {"rank", rank}};
  return finish(j, ok, a.json_out, text.str());
}

int lens_commuting(const LensArgs& a) {
  LensParams l = lens_params(a);
  if (a.n < 1) throw InputError("--n must be at least 1");
  const int xmax = a.xmax > 0 ? a.xmax : 2 * l.p * l.q;
  CommutingMode mode = a.exhaustive ? CommutingMode::exhaustive : CommutingMode::certificate;
  bool ok = true;
  json runs = json::array();
  std::ostringstream text;
  for (int m = 0; m < l.p; ++m) {
    if (a.m >= 0 && m != a.m) continue;
    CommutingReport r = check_commuting(l, a.n, m, xmax, mode);
    ok = ok && r.ok;
    runs.push_back({{"m", m},
                    {"ok", r.ok},
                    {"words_evaluated", r.words_evaluated},
                    {"words_covered", r.words_covered},
                    {"counterexamples", r.counterexamples}});
    text << "m=" << m << ": " << (r.ok ? "commutes" : "FAILS") << " (" << r.words_evaluated << " evaluated, "
         << r.words_covered << " covered)\n";
    for (const auto& ce : r.counterexamples) text << "  " << ce << '\n';
  }
  if (runs.empty()) throw InputError("--m must lie in [0, p)");
  json j = {{"params", params_json(l)},
            {"n", a.n},
            {"xmax", xmax},
            {"mode", a.exhaustive ? "exhaustive" : "certificate"},
            {"runs", runs}};
  return finish(j, ok, a.json_out, text.str());
}

int lens_divisibility(const LensArgs& a) {
  LensParams l = lens_params(a);
  SuiteOptions o;
  o.p = l.p;
  o.q = l.q;
  o.n = a.n;
  o.cases = a.cases;
  o.seed = a.seed;
  return print_suite(run_suite("divisibility", o), a.json_out);
}

int lens_classify(const LensArgs& a) {
  if (a.p == 0 || a.q == 0 || a.q2 == 0) throw InputError("--p, --q and --q2 are required");
  LensParams::make(a.p, a.q);
  LensParams::make(a.p, a.q2);
  std::optional<LensWitness> w = homotopy_equivalent(a.p, a.q, a.q2);
  json j = {{"p", a.p}, {"q1", a.q}, {"q2", a.q2}, {"equivalent", w.has_value()}};
  if (w) j["witness"] = {{"a", w->a}, {"b", w->b}, {"c", w->c.str()}};
  if (a.json_out) {
    std::cout << j.dump(2) << '\n';
  } else if (w) {
    std::cout << "equivalent: a=" << w->a << " b=" << w->b << " c=" << w->c << '\n';
  } else {
    std::cout << "not equivalent\n";
  }
  return kOk;
}

int lens_build_f(const LensArgs& a) {
  if (a.p == 0 || a.q == 0 || a.q2 == 0) throw InputError("--p, --q and --q2 are required");
  LensParams l1 = LensParams::make(a.p, a.q);
  LensParams l2 = LensParams::make(a.p, a.q2);
  std::optional<LensWitness> w = homotopy_equivalent(a.p, a.q, a.q2);
  if (!w) {
    if (a.json_out) {
      std::cout << json{{"p", a.p}, {"q1", a.q}, {"q2", a.q2}, {"ok", false}, {"error", "not equivalent"}}.dump(2)
                << '\n';
    } else {
      std::cout << "not equivalent; no functor\n";
    }
    return kFailed;
  }
  if (w->a == 0) throw InputError("witness with a = 0 gives no functor");
  DgFunctor f = build_F(a.p, a.q, a.q2, w->a, w->b, w->c);
  ValidationReport dg = check_dg(f);
  PiMap pi2(l2);
  CyclicElement image = pi2.apply(apply(f, chi(l1, f.domain())));
  CyclicElement expected = CyclicElement::monomial(a.p, -static_cast<long long>(a.q2), 1, Integer(a.p) * w->b);
  bool ok = dg.ok() && image == expected;
  json j = {{"p", a.p},
            {"q1", a.q},
            {"q2", a.q2},
            {"witness", {{"a", w->a}, {"b", w->b}, {"c", w->c.str()}}},
            {"functor", functor_to_json(f)},
            {"check_dg", report_json(dg)},
            {"pi_of_chi", image.to_string()},
            {"expected", expected.to_string()}};
  std::ostringstream text;
  text << "witness a=" << w->a << " b=" << w->b << " c=" << w->c << '\n';
  for (std::size_t g = 0; g < f.domain().size(); ++g) {
    text << "  " << f.domain().gen(static_cast<GenIndex>(g)).name << " -> "
         << f.codomain().format(f.image(static_cast<GenIndex>(g))) << '\n';
  }
  text << "check_dg: " << dg.to_string() << "\npi(F(chi)) = " << image.to_string() << ", expected "
       << expected.to_string() << '\n';
  return finish(j, ok, a.json_out, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semifree dg categories, homotopy pushouts and lens space invariants"};
  app.require_subcommand(1);
  int code = kOk;
  auto run = [&code](auto fn) { return [&code, fn]() { code = fn(); }; };

  std::string file;
  bool json_out = false;
  auto* validate_cmd = app.add_subcommand("validate", "Validate a presentation file");
  validate_cmd->add_option("file", file, "Presentation JSON")->required();
  validate_cmd->add_flag("--json", json_out, "JSON output");
  validate_cmd->callback(run([&] { return cmd_validate(file, json_out); }));

  HocolimArgs hargs;
  Common common;
  auto add_common = [&common](CLI::App* cmd) {
    cmd->add_flag("--json", common.json_out, "JSON output");
    cmd->add_option("--out", common.out_file, "Write the resulting presentation here");
    cmd->add_option("--log", common.log_file, "Write the rewrite log here");
  };
  auto* hocolim_cmd = app.add_subcommand("hocolim", "Homotopy pushout of a span file");
  hocolim_cmd->add_option("spanfile", hargs.span_file, "Span JSON")->required();
  hocolim_cmd->add_option("--localize-a", hargs.localize_a, "Generators of A to invert (comma separated)");
  hocolim_cmd->add_option("--localize-b", hargs.localize_b, "Generators of B to invert (comma separated)");
  hocolim_cmd->add_option("--localize-c", hargs.localize_c, "Generators of C inverted in the source");
  hocolim_cmd->add_flag("--simplify", hargs.simplify, "Run the greedy simplifier on the result");
  add_common(hocolim_cmd);
  hocolim_cmd->callback(run([&] { return cmd_hocolim(hargs, common); }));

  std::string strategy_file;
  auto* simplify_cmd = app.add_subcommand("simplify", "Simplify a presentation");
  simplify_cmd->add_option("file", file, "Presentation JSON")->required();
  simplify_cmd->add_option("--strategy", strategy_file, "Strategy JSON (default: greedy)");
  add_common(simplify_cmd);
  simplify_cmd->callback(run([&] { return cmd_simplify(file, strategy_file, common); }));

  std::string log_file, expected_file;
  auto* replay_cmd = app.add_subcommand("replay", "Replay a rewrite log on a presentation");
  replay_cmd->add_option("file", file, "Presentation JSON")->required();
  replay_cmd->add_option("logfile", log_file, "Rewrite log JSON")->required();
  replay_cmd->add_option("--expect", expected_file, "Presentation the replay must reproduce");
  add_common(replay_cmd);
  replay_cmd->callback(run([&] { return cmd_replay(file, log_file, expected_file, common); }));

  SuiteArgs sargs;
  auto* suite_cmd = app.add_subcommand("suite", "Run a named verification suite");
  suite_cmd->add_option("name", sargs.name, "Suite name")->required();
  suite_cmd->add_option("--p-max", sargs.options.p_max, "Largest p");
  suite_cmd->add_option("--n-max", sargs.options.n_max, "Largest n");
  suite_cmd->add_option("--xmax", sargs.options.xmax, "Cap on x exponents (default 2pq)");
  suite_cmd->add_option("--seed", sargs.options.seed, "Seed for randomized suites");
  suite_cmd->add_option("--cases", sargs.options.cases, "Cases per grid point or property");
  suite_cmd->add_flag("--json", sargs.json_out, "JSON output");
  suite_cmd->callback(run([&] { return cmd_suite(sargs); }));

  LensArgs largs;
  auto* lens_cmd = app.add_subcommand("lens", "Lens space dg algebras and invariants");
  lens_cmd->require_subcommand(1);
  auto lens_sub = [&](const char* name, const char* help, int (*fn)(const LensArgs&)) {
    auto* cmd = lens_cmd->add_subcommand(name, help);
    cmd->add_option("--p", largs.p, "p");
    cmd->add_option("--q", largs.q, "q (q1 for classify and build-f)");
    cmd->add_option("--q2", largs.q2, "q2");
    cmd->add_option("--n", largs.n, "n")->capture_default_str();
    cmd->add_option("--m", largs.m, "m (default: every m < p)");
    cmd->add_option("--xmax", largs.xmax, "Cap on x exponents (default 2pq)");
    cmd->add_option("--cases", largs.cases, "Random cases");
    cmd->add_option("--seed", largs.seed, "Seed");
    cmd->add_flag("--exhaustive", largs.exhaustive, "Enumerate every capped word");
    cmd->add_flag("--json", largs.json_out, "JSON output");
    cmd->callback(run([&largs, fn] { return fn(largs); }));
  };
  lens_sub("dga", "Build and validate C_{p,q}", lens_dga);
  lens_sub("chi", "The closed class chi and the element lambda", lens_chi);
  lens_sub("pipeline", "Glue two solid tori and simplify to C_{p,q}", lens_pipeline);
  lens_sub("pi", "Images of x^k chi^n in Z[alpha, gamma]/(alpha^p - 1)", lens_pi);
  lens_sub("commuting", "Check rho Psi_m = Phi_m d on capped words", lens_commuting);
  lens_sub("divisibility", "p^n divides pi of random closed elements", lens_divisibility);
  lens_sub("classify", "Search for (a, b) with b q2 = a^2 q1 mod p", lens_classify);
  lens_sub("build-f", "Build the quasi-equivalence C_{p,q} -> C_{p,q2}", lens_build_f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}
