#include "dgcat/functor.hpp"

namespace dgcat {

using nlohmann::json;

DgFunctor::DgFunctor(PresentationPtr domain, PresentationPtr codomain, std::vector<ObjIndex> object_map,
                     std::vector<Element> gen_map)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      object_map_(std::move(object_map)),
      gen_map_(std::move(gen_map)) {
  const Signature& dom = domain_->signature();
  const Signature& cod = codomain_->signature();
  if (object_map_.size() != dom.objects().size()) throw PreconditionError("functor object map has wrong size");
  if (gen_map_.size() != domain_->size()) throw PreconditionError("functor generator map has wrong size");
  for (ObjIndex o : object_map_) {
    if (o >= cod.objects().size()) throw PreconditionError("functor maps an object outside the codomain");
  }
  for (GenIndex g = 0; g < gen_map_.size(); ++g) {
    const GeneratorDecl& decl = dom.gen(g);
    Element& img = gen_map_[g];
    ObjIndex s = object_map_[decl.source];
    ObjIndex t = object_map_[decl.target];
    if (img.is_zero()) img = Element::zero(s, t);
    if (img.source() != s || img.target() != t)
      throw PreconditionError("image of '" + decl.name + "' has the wrong endpoints");
    for (const auto& term : img.terms()) {
      for (const auto& r : term.word.runs()) {
        if (r.gen >= codomain_->size()) throw PreconditionError("image of '" + decl.name + "' is not in the codomain");
      }
    }
    if (!elem_degree(img).matches(decl.degree))
      throw PreconditionError("image of '" + decl.name + "' does not have degree " + std::to_string(decl.degree));
  }
}

DgFunctor DgFunctor::identity(const PresentationPtr& p) {
  std::vector<ObjIndex> objects(p->objects().size());
  for (ObjIndex o = 0; o < objects.size(); ++o) objects[o] = o;
  std::vector<Element> gens;
  gens.reserve(p->size());
  for (GenIndex g = 0; g < p->size(); ++g) gens.push_back(Element::generator(p->signature(), g));
  return DgFunctor(p, p, std::move(objects), std::move(gens));
}

DgFunctor DgFunctor::from_names(PresentationPtr domain, PresentationPtr codomain,
                                const std::map<std::string, std::string>& objects,
                                const std::map<std::string, std::string>& gens) {
  const Signature& dom = domain->signature();
  const Signature& cod = codomain->signature();
  std::vector<ObjIndex> object_map(dom.objects().size());
  for (ObjIndex o = 0; o < object_map.size(); ++o) {
    auto it = objects.find(dom.object_name(o));
    if (it == objects.end()) throw PreconditionError("functor leaves object '" + dom.object_name(o) + "' unmapped");
    object_map[o] = cod.object(it->second);
  }
  for (const auto& [name, _] : objects) dom.object(name);
  for (const auto& [name, _] : gens) dom.generator(name);
  std::vector<Element> images;
  images.reserve(domain->size());
  for (GenIndex g = 0; g < domain->size(); ++g) {
    const GeneratorDecl& decl = dom.gen(g);
    Endpoints ends{object_map[decl.source], object_map[decl.target]};
    auto it = gens.find(decl.name);
    images.push_back(it == gens.end() ? Element::zero(ends.source, ends.target)
                                      : parse_element(cod, it->second, ends));
  }
  return DgFunctor(std::move(domain), std::move(codomain), std::move(object_map), std::move(images));
}

DgFunctor DgFunctor::with_codomain(PresentationPtr extended) const {
  return DgFunctor(domain_, std::move(extended), object_map_, gen_map_);
}

bool DgFunctor::operator==(const DgFunctor& other) const {
  bool same_domain = domain_ == other.domain_ || *domain_ == *other.domain_;
  bool same_codomain = codomain_ == other.codomain_ || *codomain_ == *other.codomain_;
  return same_domain && same_codomain && object_map_ == other.object_map_ && gen_map_ == other.gen_map_;
}

Element apply(const DgFunctor& f, const Element& e) {
  std::vector<const Element*> images;
  images.reserve(f.images().size());
  for (const auto& img : f.images()) images.push_back(&img);
  return substitute(e, images, f.object_map());
}

ValidationReport check_dg(const DgFunctor& f) {
  ValidationReport report;
  const DgPresentation& dom = f.domain();
  for (GenIndex g = 0; g < dom.size(); ++g) {
    Element lhs = apply(f, dom.differential(g));
    Element rhs = extend_differential(f.codomain(), f.image(g));
    if (!(lhs == rhs)) {
      report.add(dom.gen(g).name, "dg",
                 "F(d " + dom.gen(g).name + ") = " + f.codomain().format(lhs) + " but d(F " + dom.gen(g).name +
                     ") = " + f.codomain().format(rhs));
    }
  }
  return report;
}

DgFunctor compose_functors(const DgFunctor& g, const DgFunctor& f) {
  if (!(f.codomain_ptr() == g.domain_ptr() || f.codomain() == g.domain()))
    throw PreconditionError("composing functors with mismatched domain and codomain");
  std::vector<ObjIndex> objects(f.object_map().size());
  for (ObjIndex o = 0; o < objects.size(); ++o) objects[o] = g.object_image(f.object_image(o));
  std::vector<Element> gens;
  gens.reserve(f.images().size());
  for (const auto& img : f.images()) gens.push_back(apply(g, img));
  return DgFunctor(f.domain_ptr(), g.codomain_ptr(), std::move(objects), std::move(gens));
}

Span::Span(DgFunctor a, DgFunctor b) : alpha(std::move(a)), beta(std::move(b)) {
  if (!(alpha.domain_ptr() == beta.domain_ptr() || alpha.domain() == beta.domain()))
    throw PreconditionError("span legs have different domains");
}

json functor_to_json(const DgFunctor& f) {
  const Signature& dom = f.domain().signature();
  const Signature& cod = f.codomain().signature();
  json objects = json::object();
  for (ObjIndex o = 0; o < dom.objects().size(); ++o) objects[dom.object_name(o)] = cod.object_name(f.object_image(o));
  json gens = json::object();
  for (GenIndex g = 0; g < dom.generators().size(); ++g) gens[dom.gen(g).name] = format_element(cod, f.image(g));
  return {{"objects", objects}, {"gens", gens}};
}

DgFunctor functor_from_json(const json& j, PresentationPtr domain, PresentationPtr codomain) {
  if (!j.is_object() || !j.contains("objects") || !j.contains("gens") || !j["objects"].is_object() ||
      !j["gens"].is_object())
    throw ParseError("functor JSON needs 'objects' and 'gens' objects", 0, 0);
  std::map<std::string, std::string> objects, gens;
  for (const auto& [k, v] : j["objects"].items()) {
    if (!v.is_string()) throw ParseError("functor object image of '" + k + "' must be a string", 0, 0);
    objects[k] = v.get<std::string>();
  }
  for (const auto& [k, v] : j["gens"].items()) {
    if (!v.is_string()) throw ParseError("functor image of '" + k + "' must be a string", 0, 0);
    gens[k] = v.get<std::string>();
  }
  return DgFunctor::from_names(std::move(domain), std::move(codomain), objects, gens);
}

ValidationReport compare_by_renaming(const DgPresentation& a, const DgPresentation& b,
                                     const std::map<std::string, std::string>& object_names,
                                     const std::map<std::string, std::string>& gen_names) {
  ValidationReport report;
  const Signature& sa = a.signature();
  const Signature& sb = b.signature();
  if (sa.objects().size() != sb.objects().size()) report.add("objects", "count", "object counts differ");
  if (a.size() != b.size()) report.add("generators", "count", "generator counts differ");
  if (!report.ok()) return report;
  std::vector<ObjIndex> obj_map(sa.objects().size());
  std::vector<bool> obj_hit(sb.objects().size(), false);
  for (ObjIndex o = 0; o < obj_map.size(); ++o) {
    auto it = object_names.find(sa.object_name(o));
    auto target = it == object_names.end() ? std::nullopt : sb.find_object(it->second);
    if (!target || obj_hit[*target]) {
      report.add(sa.object_name(o), "objects", "no distinct partner object");
      return report;
    }
    obj_hit[*target] = true;
    obj_map[o] = *target;
  }
  std::vector<GenIndex> gen_map(a.size());
  std::vector<bool> gen_hit(b.size(), false);
  for (GenIndex g = 0; g < a.size(); ++g) {
    auto it = gen_names.find(sa.gen(g).name);
    auto target = it == gen_names.end() ? std::nullopt : sb.find_generator(it->second);
    if (!target || gen_hit[*target]) {
      report.add(sa.gen(g).name, "generators", "no distinct partner generator");
      return report;
    }
    gen_hit[*target] = true;
    gen_map[g] = *target;
  }
  for (GenIndex g = 0; g < a.size(); ++g) {
    const auto& ga = sa.gen(g);
    const auto& gb = sb.gen(gen_map[g]);
    if (ga.degree != gb.degree) report.add(ga.name, "degree", "partner " + gb.name + " has another degree");
    if (obj_map[ga.source] != gb.source || obj_map[ga.target] != gb.target)
      report.add(ga.name, "endpoints", "partner " + gb.name + " has other endpoints");
  }
  if (!report.ok()) return report;
  for (GenIndex g = 0; g < a.size(); ++g) {
    Element mapped = reindex(a.differential(g), sb, gen_map, obj_map);
    if (!(mapped == b.differential(gen_map[g]))) {
      report.add(sa.gen(g).name, "differential",
                 b.format(mapped) + " vs " + b.format(b.differential(gen_map[g])));
    }
  }
  if (a.inverses().size() != b.inverses().size()) {
    report.add("invert", "count", "inverse record counts differ");
    return report;
  }
  for (const auto& ra : a.inverses()) {
    auto rename = [&](const std::string& n) {
      auto it = gen_names.find(n);
      return it == gen_names.end() ? std::string() : it->second;
    };
    bool found = false;
    for (const auto& rb : b.inverses()) {
      if (rb.inverse == rename(ra.inverse) && rb.hat == rename(ra.hat) && rb.check == rename(ra.check) &&
          rb.bar == rename(ra.bar) && reindex(ra.base, sb, gen_map, obj_map) == rb.base) {
        found = true;
        break;
      }
    }
    if (!found) report.add(ra.inverse, "invert", "no matching inverse record");
  }
  return report;
}

}  // namespace dgcat
