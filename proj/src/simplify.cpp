#include "dgcat/simplify.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace dgcat {

using nlohmann::json;

namespace {

constexpr GenIndex kNone = std::numeric_limits<GenIndex>::max();

struct RewriteSpec {
  std::vector<ObjIndex> object_rep;  // old object -> surviving old object
  std::map<GenIndex, Element> replace;
  std::set<GenIndex> deleted;
  std::map<GenIndex, Element> override_d;
  std::map<std::string, std::string> gen_renames;
  std::map<std::string, std::string> obj_renames;
};

RewriteSpec identity_spec(const DgPresentation& p) {
  RewriteSpec s;
  s.object_rep.resize(p.objects().size());
  for (ObjIndex o = 0; o < s.object_rep.size(); ++o) s.object_rep[o] = o;
  return s;
}

std::string renamed(const std::map<std::string, std::string>& m, const std::string& n) {
  auto it = m.find(n);
  return it == m.end() ? n : it->second;
}

bool uses_any(const Element& e, const std::set<GenIndex>& gens) {
  for (const auto& t : e.terms()) {
    for (const auto& r : t.word.runs()) {
      if (gens.count(r.gen)) return true;
    }
  }
  return false;
}

// Generators whose differential mentions g, directly or through other such
// generators; g itself included.
std::set<GenIndex> dependents(const DgPresentation& p, GenIndex g) {
  std::set<GenIndex> out{g};
  for (GenIndex h = g + 1; h < p.size(); ++h) {
    if (uses_any(p.differential(h), out)) out.insert(h);
  }
  return out;
}

MoveResult rewrite(const DgPresentation& p, const RewriteSpec& spec) {
  const Signature& old = p.signature();

  std::vector<ObjIndex> kept_objects;
  std::vector<ObjIndex> slot(old.objects().size(), 0);
  for (ObjIndex o = 0; o < old.objects().size(); ++o) {
    if (spec.object_rep[o] == o) {
      slot[o] = static_cast<ObjIndex>(kept_objects.size());
      kept_objects.push_back(o);
    }
  }
  std::vector<ObjIndex> object_map(old.objects().size());
  for (ObjIndex o = 0; o < object_map.size(); ++o) object_map[o] = slot[spec.object_rep[o]];

  // Intermediate signature: surviving generators in their old order.
  Signature mid;
  for (ObjIndex o : kept_objects) mid.add_object(renamed(spec.obj_renames, old.object_name(o)));
  std::vector<GenIndex> letter(p.size(), kNone);
  std::vector<GenIndex> mid_to_old;
  for (GenIndex g = 0; g < p.size(); ++g) {
    if (spec.deleted.count(g)) continue;
    const GeneratorDecl& d = old.gen(g);
    letter[g] = mid.add_generator(
        {renamed(spec.gen_renames, d.name), object_map[d.source], object_map[d.target], d.degree});
    mid_to_old.push_back(g);
  }

  auto to_mid = [&](const Element& e) {
    for (const auto& t : e.terms()) {
      for (const auto& r : t.word.runs()) {
        if (letter[r.gen] == kNone)
          throw Error("internal: rewrite image uses deleted generator '" + old.gen(r.gen).name + "'");
      }
    }
    return reindex(e, mid, letter, object_map);
  };

  std::vector<Element> images(p.size());
  std::vector<const Element*> ptrs(p.size());
  for (GenIndex g = 0; g < p.size(); ++g) {
    auto it = spec.replace.find(g);
    if (it != spec.replace.end()) {
      images[g] = to_mid(it->second);
    } else if (letter[g] != kNone) {
      images[g] = Element::generator(mid, letter[g]);
    } else {
      throw Error("internal: deleted generator '" + old.gen(g).name + "' has no replacement");
    }
    ptrs[g] = &images[g];
  }

  std::vector<Element> mid_diffs;
  for (GenIndex g : mid_to_old) {
    auto it = spec.override_d.find(g);
    const Element& d = it != spec.override_d.end() ? it->second : p.differential(g);
    mid_diffs.push_back(substitute(d, ptrs, object_map));
  }

  // Stable topological order.
  std::size_t n = mid_to_old.size();
  std::vector<std::vector<GenIndex>> users(n);
  std::vector<std::size_t> pending(n, 0);
  for (GenIndex g = 0; g < n; ++g) {
    std::set<GenIndex> deps;
    for (const auto& t : mid_diffs[g].terms()) {
      for (const auto& r : t.word.runs()) deps.insert(r.gen);
    }
    if (deps.count(g)) throw PreconditionError("rewrite makes '" + mid.gen(g).name + "' depend on itself");
    pending[g] = deps.size();
    for (GenIndex h : deps) users[h].push_back(g);
  }
  std::priority_queue<GenIndex, std::vector<GenIndex>, std::greater<>> ready;
  for (GenIndex g = 0; g < n; ++g) {
    if (pending[g] == 0) ready.push(g);
  }
  std::vector<GenIndex> order;
  while (!ready.empty()) {
    GenIndex g = ready.top();
    ready.pop();
    order.push_back(g);
    for (GenIndex u : users[g]) {
      if (--pending[u] == 0) ready.push(u);
    }
  }
  if (order.size() != n) throw PreconditionError("rewrite creates a cyclic dependency between generators");

  PresentationBuilder b;
  for (const auto& name : mid.objects()) b.add_object(name);
  std::vector<GenIndex> final_index(n, kNone);
  std::vector<ObjIndex> same_objects(mid.objects().size());
  for (ObjIndex o = 0; o < same_objects.size(); ++o) same_objects[o] = o;
  for (GenIndex g : order) {
    const GeneratorDecl& d = mid.gen(g);
    Element diff = reindex(mid_diffs[g], b.signature(), final_index, same_objects);
    final_index[g] = b.add_generator(d.name, d.source, d.target, d.degree, std::move(diff));
  }
  // Final signature is complete; reindex against it from here on.
  DgPresentation shell = b.build();
  auto to_final = [&](const Element& e) { return reindex(e, shell.signature(), final_index, same_objects); };

  MoveResult out;
  for (const auto& rec : p.inverses()) {
    bool gone = false;
    for (const auto& m : rec.members()) gone = gone || spec.deleted.count(old.generator(m));
    if (gone) continue;
    b.add_inverse({to_final(substitute(rec.base, ptrs, object_map)), renamed(spec.gen_renames, rec.inverse),
                   renamed(spec.gen_renames, rec.hat), renamed(spec.gen_renames, rec.check),
                   renamed(spec.gen_renames, rec.bar)});
  }
  out.result = std::move(b).build();
  out.images.reserve(p.size());
  for (const auto& img : images) out.images.push_back(to_final(img));
  out.object_map = std::move(object_map);
  for (GenIndex g : spec.deleted) out.removed.push_back(old.gen(g).name);
  std::sort(out.removed.begin(), out.removed.end(),
            [&](const std::string& a, const std::string& c) { return old.generator(a) < old.generator(c); });
  for (const auto& [from, to] : spec.gen_renames) out.renamed[from] = to;

  ValidationReport report = validate(out.result);
  if (!report.ok()) throw Error("rewrite produced an invalid presentation: " + report.to_string());
  return out;
}

const InverseRecord* record_of_base(const DgPresentation& p, GenIndex t) {
  Element base = Element::generator(p.signature(), t);
  for (const auto& rec : p.inverses()) {
    if (rec.base == base) return &rec;
  }
  return nullptr;
}

const InverseRecord* record_by_inverse(const DgPresentation& p, const std::string& inverse) {
  for (const auto& rec : p.inverses()) {
    if (rec.inverse == inverse) return &rec;
  }
  return nullptr;
}

bool is_record_member(const DgPresentation& p, const std::string& name) {
  for (const auto& rec : p.inverses()) {
    for (const auto& m : rec.members()) {
      if (m == name) return true;
    }
  }
  return false;
}

// dt = e*g + w split, or nullopt when dt has no such shape for this g.
struct Split {
  int sign;
  Element rest;
};

std::optional<Split> split_differential(const DgPresentation& p, GenIndex g, GenIndex t) {
  const Element& dt = p.differential(t);
  Word letter = Word::letter(p.signature(), g);
  Integer c = dt.coefficient(letter);
  if (c != 1 && c != -1) return std::nullopt;
  Element rest = dt - elem_scale(Element::of_word(letter), c);
  if (rest.contains(g)) return std::nullopt;
  return Split{c == 1 ? 1 : -1, std::move(rest)};
}

std::string cancel_problem(const DgPresentation& p, GenIndex g, GenIndex t) {
  const Signature& s = p.signature();
  if (g == t) return "a generator cannot cancel itself";
  if (s.gen(t).degree != s.gen(g).degree - 1) return "degrees do not differ by one";
  auto split = split_differential(p, g, t);
  if (!split) {
    Integer c = p.differential(t).coefficient(Word::letter(s, g));
    if (c == 0) return "d" + s.gen(t).name + " does not contain " + s.gen(g).name + " as a lone letter";
    if (c != 1 && c != -1) return "coefficient of " + s.gen(g).name + " is not a unit";
    return "the rest of d" + s.gen(t).name + " still mentions " + s.gen(g).name;
  }
  std::set<GenIndex> deps = dependents(p, g);
  if (uses_any(split->rest, deps)) return "the rest of d" + s.gen(t).name + " depends on " + s.gen(g).name;
  return {};
}

std::string drop_problem(const DgPresentation& p, const InverseRecord& rec, const Element& g, const Element& h_right,
                         const Element& h_left) {
  const Signature& s = p.signature();
  std::set<GenIndex> members;
  for (const auto& m : rec.members()) members.insert(s.generator(m));
  const Element& f = rec.base;
  ObjIndex A = f.source(), B = f.target();
  if (g.source() != B || g.target() != A) return "witness inverse has the wrong endpoints";
  if (h_right.source() != B || h_right.target() != B || h_left.source() != A || h_left.target() != A)
    return "homotopy witnesses have the wrong endpoints";
  if (!elem_degree(g).matches(0) || !elem_degree(h_right).matches(-1) || !elem_degree(h_left).matches(-1))
    return "witnesses have the wrong degrees";
  if (uses_any(g, members) || uses_any(h_right, members) || uses_any(h_left, members))
    return "witnesses use the localization being removed";
  for (GenIndex x = 0; x < p.size(); ++x) {
    if (members.count(x)) continue;
    if (uses_any(p.differential(x), members)) return "'" + s.gen(x).name + "' uses the localization";
  }
  for (const auto& other : p.inverses()) {
    if (other.inverse != rec.inverse && uses_any(other.base, members)) return "another record uses the localization";
  }
  if (!(f * g - Element::identity(B) == extend_differential(p, h_right))) return "f*g - 1 is not d(h_right)";
  if (!(g * f - Element::identity(A) == extend_differential(p, h_left))) return "g*f - 1 is not d(h_left)";
  return {};
}

void check_name_free(const DgPresentation& p, const std::string& to) {
  if (!is_valid_name(to)) throw PreconditionError("invalid name '" + to + "'");
  if (p.signature().has_name(to)) throw PreconditionError("name '" + to + "' is already used");
}

}  // namespace

Element transport(const MoveResult& m, const Element& e) {
  std::vector<const Element*> ptrs;
  for (const auto& img : m.images) ptrs.push_back(&img);
  return substitute(e, ptrs, m.object_map);
}

MoveResult identify_objects(const DgPresentation& p, const std::string& t) {
  const Signature& s = p.signature();
  GenIndex tg = s.generator(t);
  const GeneratorDecl& decl = s.gen(tg);
  const InverseRecord* rec = record_of_base(p, tg);
  if (!rec) throw PreconditionError("'" + t + "' has no inverse record");
  if (decl.source == decl.target) throw PreconditionError("'" + t + "' does not connect distinct objects");
  if (decl.degree != 0 || !p.differential(tg).is_zero()) throw PreconditionError("'" + t + "' is not closed of degree 0");

  RewriteSpec spec = identity_spec(p);
  ObjIndex A = decl.source, B = decl.target;
  for (ObjIndex& o : spec.object_rep) {
    if (o == B) o = A;
  }
  for (const std::string& name : {t, rec->inverse}) {
    GenIndex g = s.generator(name);
    spec.deleted.insert(g);
    spec.replace[g] = Element::identity(A);
  }
  for (const std::string& name : {rec->hat, rec->check, rec->bar}) {
    GenIndex g = s.generator(name);
    spec.deleted.insert(g);
    spec.replace[g] = Element::zero(A, A);
  }
  return rewrite(p, spec);
}

MoveResult change_of_variables(const DgPresentation& p, const std::string& v, int u, const Element& w) {
  if (u != 1 && u != -1) throw PreconditionError("change of variables needs u = 1 or u = -1");
  const Signature& s = p.signature();
  GenIndex vg = s.generator(v);
  const GeneratorDecl& decl = s.gen(vg);
  Element ww = w.is_zero() ? Element::zero(decl.source, decl.target) : w;
  if (ww.source() != decl.source || ww.target() != decl.target)
    throw PreconditionError("w does not have the endpoints of '" + v + "'");
  if (!elem_degree(ww).matches(decl.degree)) throw PreconditionError("w does not have the degree of '" + v + "'");
  if (uses_any(ww, dependents(p, vg))) throw PreconditionError("w depends on '" + v + "'");

  RewriteSpec spec = identity_spec(p);
  Element vv = Element::generator(s, vg);
  spec.replace[vg] = elem_scale(vv - ww, u);
  spec.override_d[vg] = elem_scale(p.differential(vg), u) + extend_differential(p, ww);
  return rewrite(p, spec);
}

MoveResult cancel_pair(const DgPresentation& p, const std::string& g, const std::string& t) {
  const Signature& s = p.signature();
  GenIndex gi = s.generator(g), ti = s.generator(t);
  std::string problem = cancel_problem(p, gi, ti);
  if (!problem.empty()) throw PreconditionError("cannot cancel " + g + " against " + t + ": " + problem);
  Split split = *split_differential(p, gi, ti);
  RewriteSpec spec = identity_spec(p);
  spec.deleted = {gi, ti};
  spec.replace[gi] = elem_scale(split.rest, -split.sign);
  spec.replace[ti] = Element::zero(s.gen(ti).source, s.gen(ti).target);
  return rewrite(p, spec);
}

MoveResult drop_localization(const DgPresentation& p, const std::string& inverse, const Element& g,
                             const Element& h_right, const Element& h_left) {
  const InverseRecord* rec = record_by_inverse(p, inverse);
  if (!rec) throw PreconditionError("no inverse record with inverse '" + inverse + "'");
  std::string problem = drop_problem(p, *rec, g, h_right, h_left);
  if (!problem.empty()) throw PreconditionError("cannot drop the localization " + inverse + ": " + problem);
  const Signature& s = p.signature();
  RewriteSpec spec = identity_spec(p);
  // The dropped inverse is represented by the witness in transported elements.
  spec.replace[s.generator(rec->inverse)] = g;
  spec.replace[s.generator(rec->hat)] = Element::zero(g.target(), g.target());
  spec.replace[s.generator(rec->check)] = Element::zero(g.source(), g.source());
  spec.replace[s.generator(rec->bar)] = Element::zero(g.target(), g.source());
  for (const auto& m : rec->members()) spec.deleted.insert(s.generator(m));
  return rewrite(p, spec);
}

MoveResult rename_generator(const DgPresentation& p, const std::string& from, const std::string& to) {
  p.signature().generator(from);
  if (from == to) return rewrite(p, identity_spec(p));
  check_name_free(p, to);
  RewriteSpec spec = identity_spec(p);
  spec.gen_renames[from] = to;
  return rewrite(p, spec);
}

MoveResult rename_object(const DgPresentation& p, const std::string& from, const std::string& to) {
  p.signature().object(from);
  RewriteSpec spec = identity_spec(p);
  if (from != to) {
    if (!is_valid_name(to) || p.signature().find_object(to)) throw PreconditionError("object name '" + to + "' is taken");
    spec.obj_renames[from] = to;
  }
  return rewrite(p, spec);
}

namespace {

std::string arg_string(const Move& m, const char* key) {
  if (!m.args.is_object() || !m.args.contains(key) || !m.args[key].is_string())
    throw ParseError("move '" + m.name + "' needs a string argument '" + key + "'", 0, 0);
  return m.args[key].get<std::string>();
}

Element arg_element(const DgPresentation& p, const Move& m, const char* key, Endpoints ends) {
  return p.element(arg_string(m, key), ends);
}

}  // namespace

MoveResult apply_move(const DgPresentation& p, const Move& m) {
  const Signature& s = p.signature();
  if (m.name == "identify_objects") return identify_objects(p, arg_string(m, "t"));
  if (m.name == "change_of_variables") {
    std::string v = arg_string(m, "v");
    if (!m.args.contains("u") || !m.args["u"].is_number_integer())
      throw ParseError("move 'change_of_variables' needs an integer argument 'u'", 0, 0);
    const GeneratorDecl& d = s.gen(s.generator(v));
    return change_of_variables(p, v, m.args["u"].get<int>(), arg_element(p, m, "w", {d.source, d.target}));
  }
  if (m.name == "cancel_pair") return cancel_pair(p, arg_string(m, "g"), arg_string(m, "t"));
  if (m.name == "drop_localization") {
    std::string inv = arg_string(m, "inverse");
    const InverseRecord* rec = record_by_inverse(p, inv);
    if (!rec) throw PreconditionError("no inverse record with inverse '" + inv + "'");
    ObjIndex A = rec->base.source(), B = rec->base.target();
    return drop_localization(p, inv, arg_element(p, m, "g", {B, A}), arg_element(p, m, "h_right", {B, B}),
                             arg_element(p, m, "h_left", {A, A}));
  }
  if (m.name == "rename_generator") return rename_generator(p, arg_string(m, "from"), arg_string(m, "to"));
  if (m.name == "rename_object") return rename_object(p, arg_string(m, "from"), arg_string(m, "to"));
  throw ParseError("unknown move '" + m.name + "'", 0, 0);
}

namespace {

struct Session {
  DgPresentation current;
  RewriteLog log;
  std::vector<Element> images;
  std::vector<ObjIndex> object_map;

  explicit Session(const DgPresentation& p) : current(p) {
    for (GenIndex g = 0; g < p.size(); ++g) images.push_back(Element::generator(p.signature(), g));
    for (ObjIndex o = 0; o < p.objects().size(); ++o) object_map.push_back(o);
  }

  void run(const Move& m) {
    MoveResult r = apply_move(current, m);
    for (auto& img : images) img = transport(r, img);
    for (auto& o : object_map) o = r.object_map[o];
    log.push_back({m.name, m.args, r.removed, r.renamed});
    current = std::move(r.result);
  }
};

std::optional<Move> next_identification(const DgPresentation& p) {
  const Signature& s = p.signature();
  for (const auto& rec : p.inverses()) {
    if (rec.base.size() != 1 || rec.base.terms()[0].coef != 1 || rec.base.terms()[0].word.length() != 1) continue;
    GenIndex t = rec.base.terms()[0].word.runs()[0].gen;
    const GeneratorDecl& d = s.gen(t);
    if (d.source != d.target && d.degree == 0 && p.differential(t).is_zero())
      return Move{"identify_objects", {{"t", d.name}}};
  }
  return std::nullopt;
}

std::optional<Move> next_cancellation(const DgPresentation& p) {
  const Signature& s = p.signature();
  for (GenIndex t = 0; t < p.size(); ++t) {
    if (is_record_member(p, s.gen(t).name)) continue;
    std::vector<GenIndex> candidates;
    for (const auto& term : p.differential(t).terms()) {
      if (term.word.length() == 1 && (term.coef == 1 || term.coef == -1))
        candidates.push_back(term.word.runs()[0].gen);
    }
    std::sort(candidates.begin(), candidates.end());
    for (GenIndex g : candidates) {
      if (is_record_member(p, s.gen(g).name)) continue;
      if (cancel_problem(p, g, t).empty()) return Move{"cancel_pair", {{"g", s.gen(g).name}, {"t", s.gen(t).name}}};
    }
  }
  return std::nullopt;
}

// A record whose base is a unit multiple of an identity, or equals the base
// of an earlier record.
std::optional<Move> next_redundant_localization(const DgPresentation& p) {
  const auto& recs = p.inverses();
  for (std::size_t j = 0; j < recs.size(); ++j) {
    const InverseRecord& rec = recs[j];
    ObjIndex A = rec.base.source(), B = rec.base.target();
    std::optional<Move> candidate;
    if (A == B && rec.base.size() == 1 && rec.base.terms()[0].word.is_identity() &&
        (rec.base.terms()[0].coef == 1 || rec.base.terms()[0].coef == -1)) {
      Element unit = rec.base;
      candidate = Move{"drop_localization",
                       {{"inverse", rec.inverse}, {"g", p.format(unit)}, {"h_right", "0"}, {"h_left", "0"}}};
    } else {
      for (std::size_t i = 0; i < j; ++i) {
        if (recs[i].base == rec.base) {
          candidate = Move{"drop_localization",
                           {{"inverse", rec.inverse},
                            {"g", recs[i].inverse},
                            {"h_right", "-" + recs[i].check},
                            {"h_left", "-" + recs[i].hat}}};
          break;
        }
      }
    }
    if (!candidate) continue;
    const Move& m = *candidate;
    Element g = p.element(m.args["g"].get<std::string>(), Endpoints{B, A});
    Element hr = p.element(m.args["h_right"].get<std::string>(), Endpoints{B, B});
    Element hl = p.element(m.args["h_left"].get<std::string>(), Endpoints{A, A});
    if (drop_problem(p, rec, g, hr, hl).empty()) return candidate;
  }
  return std::nullopt;
}

void identify_phase(Session& s) {
  while (auto m = next_identification(s.current)) s.run(*m);
}

void greedy_phase(Session& s) {
  for (;;) {
    if (auto m = next_identification(s.current)) {
      s.run(*m);
    } else if (auto c = next_cancellation(s.current)) {
      s.run(*c);
    } else if (auto d = next_redundant_localization(s.current)) {
      s.run(*d);
    } else {
      return;
    }
  }
}

}  // namespace

SimplifyResult simplify(const DgPresentation& p, const Strategy& strategy) {
  Session s(p);
  for (const auto& step : strategy) {
    switch (step.kind) {
      case Step::Kind::identify_phase:
        identify_phase(s);
        break;
      case Step::Kind::greedy:
        greedy_phase(s);
        break;
      case Step::Kind::move:
        s.run(step.move);
        break;
    }
  }
  return {std::move(s.current), std::move(s.log), std::move(s.images), std::move(s.object_map)};
}

Element transport(const SimplifyResult& s, const Element& e) {
  std::vector<const Element*> ptrs;
  for (const auto& img : s.images) ptrs.push_back(&img);
  return substitute(e, ptrs, s.object_map);
}

SimplifyResult replay(const DgPresentation& p, const RewriteLog& log) {
  Strategy steps;
  for (const auto& rec : log) steps.push_back(Step::scripted(rec.move, rec.args));
  return simplify(p, steps);
}

json log_to_json(const RewriteLog& log) {
  json out = json::array();
  for (const auto& r : log) {
    out.push_back({{"move", r.move},
                   {"args", r.args},
                   {"generators_removed", r.generators_removed},
                   {"generators_renamed", r.generators_renamed}});
  }
  return out;
}

RewriteLog log_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("rewrite log must be a JSON array", 0, 0);
  RewriteLog log;
  for (const auto& r : j) {
    if (!r.is_object() || !r.contains("move") || !r["move"].is_string() || !r.contains("args"))
      throw ParseError("rewrite log entries need 'move' and 'args'", 0, 0);
    RewriteRecord rec;
    rec.move = r["move"].get<std::string>();
    rec.args = r["args"];
    if (r.contains("generators_removed")) rec.generators_removed = r["generators_removed"].get<std::vector<std::string>>();
    if (r.contains("generators_renamed"))
      rec.generators_renamed = r["generators_renamed"].get<std::map<std::string, std::string>>();
    log.push_back(std::move(rec));
  }
  return log;
}

Strategy strategy_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("strategy must be a JSON array", 0, 0);
  Strategy out;
  for (const auto& step : j) {
    if (step.is_string() && step == "identify") {
      out.push_back(Step::identify());
    } else if (step.is_string() && step == "greedy") {
      out.push_back(Step::greedy());
    } else if (step.is_object() && step.contains("move") && step["move"].is_string()) {
      out.push_back(Step::scripted(step["move"].get<std::string>(), step.value("args", json::object())));
    } else {
      throw ParseError("strategy steps are \"identify\", \"greedy\" or {\"move\": ..., \"args\": {...}}", 0, 0);
    }
  }
  return out;
}

}  // namespace dgcat
