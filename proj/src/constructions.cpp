#include "dgcat/constructions.hpp"

#include <algorithm>
#include <functional>

namespace dgcat {

namespace {

struct CopyMap {
  std::vector<ObjIndex> objects;
  std::vector<GenIndex> gens;
  std::map<std::string, std::string> names;
};

using Rename = std::function<std::string(const std::string&)>;

CopyMap copy_into(PresentationBuilder& b, const DgPresentation& src, const Rename& rename, const std::string& tag,
                  Provenance& prov) {
  CopyMap m;
  const Signature& s = src.signature();
  for (ObjIndex o = 0; o < s.objects().size(); ++o) {
    std::string name = b.fresh_name(rename(s.object_name(o)));
    m.objects.push_back(b.add_object(name));
    prov.objects[name] = tag + s.object_name(o);
  }
  for (GenIndex g = 0; g < src.size(); ++g) {
    const GeneratorDecl& decl = s.gen(g);
    std::string name = b.fresh_name(rename(decl.name));
    Element d = reindex(src.differential(g), b.signature(), m.gens, m.objects);
    m.gens.push_back(b.add_generator(name, m.objects[decl.source], m.objects[decl.target], decl.degree, d));
    m.names[decl.name] = name;
    prov.generators[name] = tag + decl.name;
  }
  for (const auto& rec : src.inverses()) {
    b.add_inverse({reindex(rec.base, b.signature(), m.gens, m.objects), m.names.at(rec.inverse), m.names.at(rec.hat),
                   m.names.at(rec.check), m.names.at(rec.bar)});
  }
  return m;
}

struct TGenerators {
  std::vector<GenIndex> objects;
  std::vector<GenIndex> gens;
};

// The t-generators of a span C -> A, C -> B whose legs are given as images
// inside the builder's signature.
TGenerators add_t_generators(PresentationBuilder& b, const DgPresentation& c, const std::vector<ObjIndex>& alpha_obj,
                             const std::vector<ObjIndex>& beta_obj, const std::vector<Element>& alpha_img,
                             const std::vector<Element>& beta_img, Provenance& prov) {
  const Signature& cs = c.signature();
  TGenerators t;
  for (ObjIndex o = 0; o < cs.objects().size(); ++o) {
    std::string name = b.fresh_name("t_" + cs.object_name(o));
    t.objects.push_back(b.add_generator(name, alpha_obj[o], beta_obj[o], 0, Element::zero(alpha_obj[o], beta_obj[o])));
    prov.generators[name] = "tobj:" + cs.object_name(o);
  }
  for (GenIndex f = 0; f < c.size(); ++f) {
    const GeneratorDecl& decl = cs.gen(f);
    ObjIndex src = alpha_obj[decl.source];
    ObjIndex dst = beta_obj[decl.target];
    const Signature& sig = b.signature();
    auto tgen = [&](GenIndex g) { return Element::generator(sig, t.gens[g]); };

    Element d = beta_img[f] * Element::generator(sig, t.objects[decl.source]) -
                Element::generator(sig, t.objects[decl.target]) * alpha_img[f];
    if (decl.degree % 2 != 0) d = -d;

    for (const auto& term : c.differential(f).terms()) {
      if (term.word.is_identity()) continue;
      std::vector<GenIndex> letters;
      for (const auto& r : term.word.runs()) letters.insert(letters.end(), r.power, r.gen);
      std::size_t n = letters.size();
      // suffix[k] = alpha(l_k ... l_{n-1}); prefix[k] = beta(l_0 ... l_{k-1})
      std::vector<Element> suffix(n + 1);
      suffix[n] = Element::identity(alpha_obj[term.word.source()]);
      for (std::size_t k = n; k-- > 0;) suffix[k] = alpha_img[letters[k]] * suffix[k + 1];
      Element prefix = Element::identity(beta_obj[term.word.target()]);
      std::vector<int> right_degree(n + 1, 0);
      for (std::size_t k = n; k-- > 0;) right_degree[k] = right_degree[k + 1] + cs.gen(letters[k]).degree;
      for (std::size_t k = 0; k < n; ++k) {
        Integer coef = right_degree[k + 1] % 2 == 0 ? term.coef : Integer(-term.coef);
        d = d + elem_scale(prefix * tgen(letters[k]) * suffix[k + 1], coef);
        prefix = prefix * beta_img[letters[k]];
      }
    }
    std::string name = b.fresh_name("t_" + decl.name);
    t.gens.push_back(b.add_generator(name, src, dst, decl.degree - 1, std::move(d)));
    prov.generators[name] = "t:" + decl.name;
  }
  return t;
}

std::vector<std::string> localize_into(PresentationBuilder& b, const DgPresentation& base,
                                       const std::vector<std::string>& names, Provenance* prov) {
  const Signature& s = base.signature();
  for (const auto& n : names) {
    GenIndex f = s.generator(n);
    if (s.gen(f).degree != 0) throw PreconditionError("cannot localize at '" + n + "': degree is not 0");
    if (!base.differential(f).is_zero()) throw PreconditionError("cannot localize at '" + n + "': not closed");
  }
  std::vector<std::string> inverses;
  for (const auto& n : names) {
    GenIndex f = b.signature().generator(n);
    ObjIndex A = b.signature().gen(f).source;
    ObjIndex B = b.signature().gen(f).target;
    InverseRecord rec;
    rec.base = Element::generator(b.signature(), f);
    rec.inverse = b.fresh_name("inv_" + n);
    GenIndex inv = b.add_generator(rec.inverse, B, A, 0, Element::zero(B, A));
    Element fe = Element::generator(b.signature(), f);
    Element ie = Element::generator(b.signature(), inv);
    rec.hat = b.fresh_name("hat_" + n);
    GenIndex hat = b.add_generator(rec.hat, A, A, -1, Element::identity(A) - ie * fe);
    rec.check = b.fresh_name("chk_" + n);
    GenIndex chk = b.add_generator(rec.check, B, B, -1, Element::identity(B) - fe * ie);
    rec.bar = b.fresh_name("bar_" + n);
    b.add_generator(rec.bar, A, B, -2,
                    fe * Element::generator(b.signature(), hat) - Element::generator(b.signature(), chk) * fe);
    if (prov) {
      auto it = prov->generators.find(n);
      std::string origin = it == prov->generators.end() ? n : it->second;
      prov->generators[rec.inverse] = "inv:" + origin;
      prov->generators[rec.hat] = "hat:" + origin;
      prov->generators[rec.check] = "chk:" + origin;
      prov->generators[rec.bar] = "bar:" + origin;
    }
    inverses.push_back(rec.inverse);
    b.add_inverse(std::move(rec));
  }
  return inverses;
}

std::vector<Element> generator_images(const Signature& sig, const std::vector<GenIndex>& gens) {
  std::vector<Element> out;
  out.reserve(gens.size());
  for (GenIndex g : gens) out.push_back(Element::generator(sig, g));
  return out;
}

}  // namespace

DgPresentation localize(const DgPresentation& c, const std::vector<std::string>& names) {
  PresentationBuilder b(c);
  localize_into(b, c, names, nullptr);
  return std::move(b).build();
}

CylinderResult cylinder0(const PresentationPtr& c) {
  PresentationBuilder b;
  Provenance prov;
  CopyMap one = copy_into(b, *c, [](const std::string& n) { return n + "#1"; }, "1:", prov);
  CopyMap two = copy_into(b, *c, [](const std::string& n) { return n + "#2"; }, "2:", prov);
  std::vector<Element> img1 = generator_images(b.signature(), one.gens);
  std::vector<Element> img2 = generator_images(b.signature(), two.gens);
  add_t_generators(b, *c, one.objects, two.objects, img1, img2, prov);
  PresentationPtr cyl = share(std::move(b).build());
  DgFunctor i1(c, cyl, one.objects, std::move(img1));
  DgFunctor i2(c, cyl, two.objects, std::move(img2));
  return {cyl, std::move(i1), std::move(i2), std::nullopt, std::move(prov)};
}

CylinderResult cylinder(const PresentationPtr& c) {
  CylinderResult base = cylinder0(c);
  const DgPresentation& cyl0 = *base.cylinder;
  const Signature& cs = c->signature();
  std::vector<std::string> t_objects;
  for (const auto& [name, tag] : base.provenance.generators) {
    if (tag.rfind("tobj:", 0) == 0) t_objects.push_back(name);
  }
  // keep object order
  std::sort(t_objects.begin(), t_objects.end(), [&](const std::string& a, const std::string& b) {
    return cyl0.signature().generator(a) < cyl0.signature().generator(b);
  });
  PresentationBuilder b(cyl0);
  localize_into(b, cyl0, t_objects, &base.provenance);
  PresentationPtr cyl = share(std::move(b).build());

  const Signature& ys = cyl->signature();
  std::vector<ObjIndex> objects(ys.objects().size());
  for (const auto& [name, tag] : base.provenance.objects) objects[ys.object(name)] = cs.object(tag.substr(2));
  std::map<std::string, Element> t_images;
  std::vector<Element> images;
  images.reserve(cyl->size());
  for (GenIndex g = 0; g < cyl->size(); ++g) {
    const GeneratorDecl& decl = ys.gen(g);
    const std::string& tag = base.provenance.generators.at(decl.name);
    ObjIndex s = objects[decl.source], t = objects[decl.target];
    std::string kind = tag.substr(0, tag.find(':'));
    if (kind == "1" || kind == "2") {
      images.push_back(Element::generator(cs, cs.generator(tag.substr(2))));
    } else if (kind == "tobj" || kind == "inv") {
      images.push_back(Element::identity(s));
    } else {
      images.push_back(Element::zero(s, t));
    }
  }
  DgFunctor proj(cyl, c, std::move(objects), std::move(images));
  return {cyl, base.i1.with_codomain(cyl), base.i2.with_codomain(cyl), std::move(proj), std::move(base.provenance)};
}

PushoutResult pushout(const Span& span) {
  const DgFunctor& alpha = span.alpha;
  const DgFunctor& beta = span.beta;
  const DgPresentation& A = alpha.codomain();
  const DgPresentation& B = beta.codomain();
  const DgPresentation& C = alpha.domain();
  const Signature& as = A.signature();

  std::vector<std::optional<ObjIndex>> obj_preimage(as.objects().size());
  for (ObjIndex o = 0; o < C.objects().size(); ++o) {
    auto& slot = obj_preimage[alpha.object_image(o)];
    if (slot) throw PreconditionError("pushout: extension is not injective on objects");
    slot = o;
  }
  std::vector<std::optional<GenIndex>> gen_preimage(A.size());
  for (GenIndex g = 0; g < C.size(); ++g) {
    const Element& img = alpha.image(g);
    if (img.size() != 1 || img.terms()[0].coef != 1 || img.terms()[0].word.length() != 1)
      throw PreconditionError("pushout: extension does not send '" + C.gen(g).name + "' to a generator");
    GenIndex a = img.terms()[0].word.runs()[0].gen;
    if (gen_preimage[a]) throw PreconditionError("pushout: extension is not injective on generators");
    gen_preimage[a] = g;
  }
  if (!check_dg(alpha).ok()) throw PreconditionError("pushout: extension is not a dg functor");

  Provenance prov;
  for (const auto& n : B.objects()) prov.objects[n] = "B:" + n;
  for (const auto& d : B.generators()) prov.generators[d.name] = "B:" + d.name;
  PresentationBuilder b(B);
  std::vector<ObjIndex> objects(as.objects().size());
  for (ObjIndex o = 0; o < objects.size(); ++o) {
    if (obj_preimage[o]) {
      objects[o] = beta.object_image(*obj_preimage[o]);
    } else {
      std::string name = b.fresh_name(as.object_name(o));
      objects[o] = b.add_object(name);
      prov.objects[name] = "A:" + as.object_name(o);
    }
  }
  std::vector<Element> images(A.size());
  std::vector<const Element*> ptrs(A.size(), nullptr);
  std::map<std::string, std::string> new_names;
  for (GenIndex g = 0; g < A.size(); ++g) {
    if (gen_preimage[g]) {
      images[g] = beta.image(*gen_preimage[g]);
    } else {
      const GeneratorDecl& decl = as.gen(g);
      Element d = substitute(A.differential(g), ptrs, objects);
      std::string name = b.fresh_name(decl.name);
      GenIndex ng = b.add_generator(name, objects[decl.source], objects[decl.target], decl.degree, std::move(d));
      images[g] = Element::generator(b.signature(), ng);
      new_names[decl.name] = name;
      prov.generators[name] = "A:" + decl.name;
    }
    ptrs[g] = &images[g];
  }
  for (const auto& rec : A.inverses()) {
    bool all_new = true;
    for (const auto& m : rec.members()) all_new = all_new && new_names.count(m);
    if (!all_new) continue;
    b.add_inverse({substitute(rec.base, ptrs, objects), new_names.at(rec.inverse), new_names.at(rec.hat),
                   new_names.at(rec.check), new_names.at(rec.bar)});
  }
  PresentationPtr D = share(std::move(b).build());
  std::vector<ObjIndex> b_objects(B.objects().size());
  for (ObjIndex o = 0; o < b_objects.size(); ++o) b_objects[o] = o;
  std::vector<GenIndex> b_gens(B.size());
  for (GenIndex g = 0; g < b_gens.size(); ++g) b_gens[g] = g;
  DgFunctor inclusion(beta.codomain_ptr(), D, std::move(b_objects), generator_images(D->signature(), b_gens));
  DgFunctor induced(alpha.codomain_ptr(), D, std::move(objects), std::move(images));
  return {D, std::move(inclusion), std::move(induced), std::move(prov)};
}

namespace {

HocolimResult hocolim_impl(const Span& span, const std::vector<std::string>& s_a,
                           const std::vector<std::string>& s_b) {
  const DgPresentation& A = span.alpha.codomain();
  const DgPresentation& B = span.beta.codomain();
  const DgPresentation& C = span.alpha.domain();
  PresentationBuilder b;
  Provenance prov;
  auto keep = [](const std::string& n) { return n; };
  CopyMap ca = copy_into(b, A, keep, "A:", prov);
  CopyMap cb = copy_into(b, B, keep, "B:", prov);

  std::vector<ObjIndex> alpha_obj(C.objects().size()), beta_obj(C.objects().size());
  std::vector<Element> alpha_img, beta_img;
  for (ObjIndex o = 0; o < alpha_obj.size(); ++o) {
    alpha_obj[o] = ca.objects[span.alpha.object_image(o)];
    beta_obj[o] = cb.objects[span.beta.object_image(o)];
  }
  for (GenIndex g = 0; g < C.size(); ++g) {
    alpha_img.push_back(reindex(span.alpha.image(g), b.signature(), ca.gens, ca.objects));
    beta_img.push_back(reindex(span.beta.image(g), b.signature(), cb.gens, cb.objects));
  }
  TGenerators t = add_t_generators(b, C, alpha_obj, beta_obj, alpha_img, beta_img, prov);

  DgPresentation unlocalized = b.build();
  std::vector<std::string> names;
  for (GenIndex g : t.objects) names.push_back(unlocalized.gen(g).name);
  for (const auto& n : s_a) names.push_back(ca.names.at(std::string(A.gen(A.signature().generator(n)).name)));
  for (const auto& n : s_b) names.push_back(cb.names.at(std::string(B.gen(B.signature().generator(n)).name)));
  localize_into(b, unlocalized, names, &prov);
  PresentationPtr D = share(std::move(b).build());

  DgFunctor from_a(span.alpha.codomain_ptr(), D, ca.objects, generator_images(D->signature(), ca.gens));
  DgFunctor from_b(span.beta.codomain_ptr(), D, cb.objects, generator_images(D->signature(), cb.gens));
  return {D, std::move(from_a), std::move(from_b), std::move(prov)};
}

}  // namespace

HocolimResult homotopy_pushout(const Span& span) { return hocolim_impl(span, {}, {}); }

HocolimResult homotopy_pushout_localized(const Span& span, const std::vector<std::string>& s_a,
                                         const std::vector<std::string>& s_b,
                                         const std::vector<std::string>& s_c) {
  const DgPresentation& C = span.alpha.domain();
  for (const auto& n : s_c) {
    GenIndex g = C.signature().generator(n);
    if (C.gen(g).degree != 0 || !C.differential(g).is_zero())
      throw PreconditionError("'" + n + "' is not a closed degree 0 generator of the span source");
  }
  return hocolim_impl(span, s_a, s_b);
}

HocolimResult homotopy_pushout_via_cylinder(const Span& span) {
  CylinderResult cyl = cylinder(span.alpha.domain_ptr());
  PushoutResult first = pushout(Span(cyl.i1, span.alpha));
  PushoutResult second = pushout(Span(compose_functors(first.induced, cyl.i2), span.beta));

  auto origin = [&](const std::map<std::string, std::string>& p1, const std::map<std::string, std::string>& c,
                    const std::string& tag) -> std::string {
    if (tag.rfind("B:", 0) == 0) return tag;
    const std::string& t1 = p1.at(tag.substr(2));
    if (t1.rfind("B:", 0) == 0) return "A:" + t1.substr(2);
    const std::string& t2 = c.at(t1.substr(2));
    if (t2.rfind("1:", 0) == 0 || t2.rfind("2:", 0) == 0)
      throw PreconditionError("cylinder route left a copy of the span source behind");
    return t2;
  };
  Provenance prov;
  for (const auto& [name, tag] : second.provenance.objects)
    prov.objects[name] = origin(first.provenance.objects, cyl.provenance.objects, tag);
  for (const auto& [name, tag] : second.provenance.generators)
    prov.generators[name] = origin(first.provenance.generators, cyl.provenance.generators, tag);

  DgFunctor from_a = compose_functors(second.induced, first.inclusion);
  return {second.result, std::move(from_a), std::move(second.inclusion), std::move(prov)};
}

}  // namespace dgcat
