#include "dgcat/presentation.hpp"

#include <algorithm>

namespace dgcat {

using nlohmann::json;

bool DgPresentation::operator==(const DgPresentation& other) const {
  if (!(sig_ == other.sig_) || !(diffs_ == other.diffs_) || inverses_.size() != other.inverses_.size())
    return false;
  for (std::size_t i = 0; i < inverses_.size(); ++i) {
    const auto& a = inverses_[i];
    const auto& b = other.inverses_[i];
    if (!(a.base == b.base) || a.members() != b.members()) return false;
  }
  return true;
}

ObjIndex PresentationBuilder::add_object(const std::string& name) {
  if (p_.sig_.find_generator(name)) throw PreconditionError("object name '" + name + "' is a generator");
  return p_.sig_.add_object(name);
}

GenIndex PresentationBuilder::add_generator(const std::string& name, ObjIndex source, ObjIndex target,
                                            int degree, Element d) {
  if (p_.sig_.find_object(name)) throw PreconditionError("generator name '" + name + "' is an object");
  auto next = static_cast<GenIndex>(p_.diffs_.size());
  for (const auto& t : d.terms()) {
    for (const auto& r : t.word.runs()) {
      if (r.gen >= next)
        throw PreconditionError("differential of '" + name + "' uses a generator not declared before it");
    }
  }
  auto objects = static_cast<ObjIndex>(p_.sig_.objects().size());
  if (d.source() >= objects || d.target() >= objects)
    throw PreconditionError("differential of '" + name + "' has unknown endpoints");
  GenIndex g = p_.sig_.add_generator({name, source, target, degree});
  if (d.is_zero()) d = Element::zero(source, target);
  p_.diffs_.push_back(std::move(d));
  return g;
}

GenIndex PresentationBuilder::add_generator(const std::string& name, const std::string& source,
                                            const std::string& target, int degree, std::string_view d) {
  ObjIndex s = p_.sig_.object(source);
  ObjIndex t = p_.sig_.object(target);
  return add_generator(name, s, t, degree, parse_element(p_.sig_, d, Endpoints{s, t}));
}

void PresentationBuilder::add_inverse(InverseRecord record) {
  for (const auto& m : record.members()) {
    if (!p_.sig_.find_generator(m)) throw PreconditionError("inverse record names unknown generator '" + m + "'");
  }
  p_.inverses_.push_back(std::move(record));
}

std::string PresentationBuilder::fresh_name(const std::string& base) const {
  if (!p_.sig_.has_name(base)) return base;
  for (int k = 2;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!p_.sig_.has_name(candidate)) return candidate;
  }
}

Element extend_differential(const DgPresentation& p, const Element& e) {
  if (!elem_degree(e).homogeneous()) throw PreconditionError("differential of a non-homogeneous element");
  const Signature& sig = p.signature();
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    const auto& runs = t.word.runs();
    int left_degree = 0;
    for (std::size_t ri = 0; ri < runs.size(); ++ri) {
      const Run& run = runs[ri];
      if (run.gen >= p.size()) throw PreconditionError("element uses an unknown generator");
      const GeneratorDecl& g = sig.gen(run.gen);
      const Element& dg = p.differential(run.gen);
      if (dg.is_zero()) {
        left_degree += g.degree * static_cast<int>(run.power);
        continue;
      }
      for (std::uint32_t j = 0; j < run.power; ++j) {
        // prefix = runs before ri, then g^j; suffix = g^(power-1-j), then runs after ri
        WordBuilder left(sig, t.word.target());
        for (std::size_t k = 0; k < ri; ++k) left.append(runs[k].gen, runs[k].power);
        left.append(run.gen, j);
        WordBuilder right(sig, g.source);
        right.append(run.gen, run.power - 1 - j);
        for (std::size_t k = ri + 1; k < runs.size(); ++k) right.append(runs[k].gen, runs[k].power);
        Word lw = left.build();
        Word rw = right.build();
        int sign_degree = left_degree + g.degree * static_cast<int>(j);
        Integer c = (sign_degree % 2 == 0) ? t.coef : Integer(-t.coef);
        for (const auto& dt : dg.terms()) {
          out.push_back({word_compose(word_compose(lw, dt.word), rw), c * dt.coef});
        }
      }
      left_degree += g.degree * static_cast<int>(run.power);
    }
  }
  return Element::from_terms(e.source(), e.target(), std::move(out));
}

std::string ValidationReport::to_string() const {
  if (issues.empty()) return "valid";
  std::string out;
  for (const auto& i : issues) out += i.subject + ": " + i.check + ": " + i.message + "\n";
  return out;
}

ValidationReport validate(const DgPresentation& p) {
  ValidationReport report;
  const Signature& sig = p.signature();
  for (GenIndex g = 0; g < p.size(); ++g) {
    const GeneratorDecl& decl = sig.gen(g);
    const Element& d = p.differential(g);
    if (d.source() != decl.source || d.target() != decl.target) {
      report.add(decl.name, "endpoints", "differential runs " + sig.object_name(d.source()) + " -> " +
                                             sig.object_name(d.target()) + ", expected " +
                                             sig.object_name(decl.source) + " -> " + sig.object_name(decl.target));
    }
    for (const auto& t : d.terms()) {
      if (std::any_of(t.word.runs().begin(), t.word.runs().end(), [g](const Run& r) { return r.gen >= g; })) {
        report.add(decl.name, "filtration", "differential uses a generator not declared before it");
        break;
      }
    }
    Degree deg = elem_degree(d);
    if (!deg.matches(decl.degree + 1)) {
      report.add(decl.name, "degree",
                 deg.kind == Degree::Kind::mixed
                     ? "differential is not homogeneous"
                     : "differential has degree " + std::to_string(deg.value) + ", expected " +
                           std::to_string(decl.degree + 1));
      if (deg.kind == Degree::Kind::mixed) continue;
    }
    Element dd = extend_differential(p, d);
    if (!dd.is_zero()) report.add(decl.name, "d^2", "d(d " + decl.name + ") = " + format_element(sig, dd));
  }
  for (const auto& rec : p.inverses()) {
    for (const auto& m : rec.members()) {
      if (!sig.find_generator(m)) report.add(m, "inverse", "inverse record names an unknown generator");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

json presentation_to_json(const DgPresentation& p) {
  const Signature& sig = p.signature();
  json j;
  j["objects"] = sig.objects();
  json gens = json::array();
  for (GenIndex g = 0; g < p.size(); ++g) {
    const auto& decl = sig.gen(g);
    gens.push_back({{"name", decl.name},
                    {"src", sig.object_name(decl.source)},
                    {"dst", sig.object_name(decl.target)},
                    {"deg", decl.degree},
                    {"d", format_element(sig, p.differential(g))}});
  }
  j["generators"] = gens;
  json inv = json::array();
  for (const auto& rec : p.inverses()) {
    inv.push_back({{"base", format_element(sig, rec.base)},
                   {"inv", rec.inverse},
                   {"hat", rec.hat},
                   {"chk", rec.check},
                   {"bar", rec.bar}});
  }
  j["invert"] = inv;
  return j;
}

namespace {

[[noreturn]] void structure_error(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg, 0, 0);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) structure_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) structure_error(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) structure_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

DgPresentation presentation_from_json(const json& j) {
  PresentationBuilder b;
  const json& objects = field(j, "objects", "$");
  if (!objects.is_array()) structure_error("$.objects", "expected an array");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!objects[i].is_string()) structure_error("$.objects[" + std::to_string(i) + "]", "expected a string");
    try {
      b.add_object(objects[i].get<std::string>());
    } catch (const PreconditionError& e) {
      structure_error("$.objects[" + std::to_string(i) + "]", e.what());
    }
  }
  const json& gens = field(j, "generators", "$");
  if (!gens.is_array()) structure_error("$.generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string path = "$.generators[" + std::to_string(i) + "]";
    const json& g = gens[i];
    std::string name = string_field(g, "name", path);
    std::string src = string_field(g, "src", path);
    std::string dst = string_field(g, "dst", path);
    const json& deg = field(g, "deg", path);
    if (!deg.is_number_integer()) structure_error(path + ".deg", "expected an integer");
    std::string d = g.contains("d") ? string_field(g, "d", path) : std::string("0");
    try {
      b.add_generator(name, src, dst, deg.get<int>(), d);
    } catch (const ParseError& e) {
      structure_error(path + ".d", e.what());
    } catch (const Error& e) {
      structure_error(path, e.what());
    }
  }
  if (j.contains("invert")) {
    const json& inv = j["invert"];
    if (!inv.is_array()) structure_error("$.invert", "expected an array");
    for (std::size_t i = 0; i < inv.size(); ++i) {
      std::string path = "$.invert[" + std::to_string(i) + "]";
      InverseRecord rec;
      rec.inverse = string_field(inv[i], "inv", path);
      rec.hat = string_field(inv[i], "hat", path);
      rec.check = string_field(inv[i], "chk", path);
      rec.bar = string_field(inv[i], "bar", path);
      try {
        const Signature& sig = b.signature();
        const auto& hat = sig.gen(sig.generator(rec.hat));
        const auto& chk = sig.gen(sig.generator(rec.check));
        rec.base = b.element(string_field(inv[i], "base", path), Endpoints{hat.source, chk.source});
        b.add_inverse(std::move(rec));
      } catch (const Error& e) {
        structure_error(path, e.what());
      }
    }
  }
  return std::move(b).build();
}

void rethrow_json_error(std::string_view text, const json::parse_error& e) {
  std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ParseError("malformed JSON", line, column);
}

DgPresentation parse_presentation(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    rethrow_json_error(text, e);
  }
  return presentation_from_json(j);
}

std::string serialize_presentation(const DgPresentation& p) { return presentation_to_json(p).dump(2) + "\n"; }

}  // namespace dgcat
