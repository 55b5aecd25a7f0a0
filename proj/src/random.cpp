#include "dgcat/random.hpp"

namespace dgcat {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(Rng& rng, int percent) { return uniform(rng, 1, 100) <= percent; }

Integer random_coef(Rng& rng, int max_coef) {
  int c = uniform(rng, 1, max_coef);
  return chance(rng, 50) ? Integer(c) : Integer(-c);
}

std::optional<Word> random_word(Rng& rng, const Signature& sig, const std::vector<GenIndex>& letters, ObjIndex source,
                                ObjIndex target, int degree, int max_len) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    int len = uniform(rng, 0, max_len);
    WordBuilder wb(sig, target);
    ObjIndex cur = target;
    int deg = 0;
    bool ok = true;
    for (int k = 0; k < len; ++k) {
      std::vector<GenIndex> options;
      for (GenIndex g : letters) {
        if (sig.gen(g).target == cur) options.push_back(g);
      }
      if (options.empty()) {
        ok = false;
        break;
      }
      GenIndex g = options[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(options.size()) - 1))];
      wb.append(g);
      cur = sig.gen(g).source;
      deg += sig.gen(g).degree;
    }
    if (ok && cur == source && deg == degree) return wb.build();
  }
  return std::nullopt;
}

Element random_combination(Rng& rng, const Signature& sig, const std::vector<GenIndex>& letters, ObjIndex source,
                           ObjIndex target, int degree, const RandomShape& shape) {
  Element out = Element::zero(source, target);
  int terms = uniform(rng, 1, shape.max_terms);
  for (int k = 0; k < terms; ++k) {
    auto w = random_word(rng, sig, letters, source, target, degree, shape.max_word_length);
    if (w) out = out + Element::of_word(*w, random_coef(rng, shape.max_coef));
  }
  return out;
}

std::vector<GenIndex> all_generators(const Signature& sig) {
  std::vector<GenIndex> out(sig.generators().size());
  for (GenIndex g = 0; g < out.size(); ++g) out[g] = g;
  return out;
}

// Closed element: words in closed generators plus an exact part.
Element random_closed(Rng& rng, const DgPresentation& p, ObjIndex source, ObjIndex target, int degree,
                      const RandomShape& shape) {
  std::vector<GenIndex> closed;
  for (GenIndex g = 0; g < p.size(); ++g) {
    if (p.differential(g).is_zero()) closed.push_back(g);
  }
  Element out = Element::zero(source, target);
  if (chance(rng, 60)) out = random_combination(rng, p.signature(), closed, source, target, degree, shape);
  if (chance(rng, 60)) {
    Element w = random_combination(rng, p.signature(), all_generators(p.signature()), source, target, degree - 1,
                                   shape);
    out = out + extend_differential(p, w);
  }
  return out;
}

// Random composable word of length 1..max_len over the given letters.
std::optional<Word> random_path(Rng& rng, const Signature& sig, const std::vector<GenIndex>& letters, int max_len) {
  if (letters.empty() || max_len < 1) return std::nullopt;
  GenIndex first = letters[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(letters.size()) - 1))];
  WordBuilder wb(sig, sig.gen(first).target);
  wb.append(first);
  ObjIndex cur = sig.gen(first).source;
  int len = uniform(rng, 1, max_len);
  for (int k = 1; k < len; ++k) {
    std::vector<GenIndex> options;
    for (GenIndex g : letters) {
      if (sig.gen(g).target == cur) options.push_back(g);
    }
    if (options.empty()) break;
    GenIndex g = options[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(options.size()) - 1))];
    wb.append(g);
    cur = sig.gen(g).source;
  }
  return wb.build();
}

// Picks the differential first (a closed word or the boundary of a word) and
// fits the generator's endpoints and degree to it.
GenIndex add_random_generator(Rng& rng, PresentationBuilder& b, const std::string& name, const RandomShape& shape) {
  DgPresentation so_far = b.build();
  const Signature& sig = so_far.signature();
  std::vector<GenIndex> closed;
  for (GenIndex g = 0; g < so_far.size(); ++g) {
    if (so_far.differential(g).is_zero()) closed.push_back(g);
  }
  for (int attempt = 0; attempt < 8 && chance(rng, 80); ++attempt) {
    bool exact = chance(rng, 50);
    auto w = random_path(rng, sig, exact ? all_generators(sig) : closed, shape.max_word_length);
    if (!w) continue;
    int degree = exact ? w->degree() : w->degree() - 1;
    if (degree < shape.min_degree || degree > shape.max_degree) continue;
    Element lead = Element::of_word(*w, random_coef(rng, shape.max_coef));
    if (exact) lead = extend_differential(so_far, lead);
    if (lead.is_zero()) continue;
    Element d = lead + random_closed(rng, so_far, w->source(), w->target(), degree + 1, shape);
    return b.add_generator(name, w->source(), w->target(), degree, std::move(d));
  }
  int objects = static_cast<int>(so_far.objects().size());
  auto s = static_cast<ObjIndex>(uniform(rng, 0, objects - 1));
  auto t = static_cast<ObjIndex>(uniform(rng, 0, objects - 1));
  int degree = uniform(rng, shape.min_degree, shape.max_degree);
  Element d = random_closed(rng, so_far, s, t, degree + 1, shape);
  return b.add_generator(name, s, t, degree, std::move(d));
}

DgPresentation random_presentation_named(Rng& rng, const RandomShape& shape, const std::string& obj_prefix,
                                         const std::string& gen_prefix) {
  PresentationBuilder b;
  int objects = uniform(rng, 1, shape.max_objects);
  for (int o = 1; o <= objects; ++o) b.add_object(obj_prefix + std::to_string(o));
  int gens = uniform(rng, 1, shape.max_generators);
  for (int g = 1; g <= gens; ++g) add_random_generator(rng, b, gen_prefix + std::to_string(g), shape);
  return std::move(b).build();
}

// Grows a leg target alongside the span source so that the leg is dg.
DgFunctor grow_leg(Rng& rng, const PresentationPtr& c, const std::string& obj_prefix, const std::string& gen_prefix,
                   const RandomShape& shape) {
  const Signature& cs = c->signature();
  PresentationBuilder b;
  std::vector<ObjIndex> objects;
  int next_obj = 1;
  for (ObjIndex o = 0; o < cs.objects().size(); ++o) {
    if (!objects.empty() && chance(rng, 25)) {
      objects.push_back(objects[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(objects.size()) - 1))]);
    } else {
      objects.push_back(b.add_object(obj_prefix + std::to_string(next_obj++)));
    }
  }
  if (chance(rng, 25)) b.add_object(obj_prefix + std::to_string(next_obj++));

  int next_gen = 1;
  std::vector<Element> images;
  for (GenIndex f = 0; f < c->size(); ++f) {
    if (chance(rng, 25)) add_random_generator(rng, b, gen_prefix + std::to_string(next_gen++), shape);
    std::vector<const Element*> ptrs;
    for (const auto& img : images) ptrs.push_back(&img);
    ptrs.resize(c->size(), nullptr);
    const GeneratorDecl& decl = cs.gen(f);
    ObjIndex s = objects[decl.source], t = objects[decl.target];
    Element da = substitute(c->differential(f), ptrs, objects);
    DgPresentation so_far = b.build();
    if (da.is_zero() && chance(rng, 35)) {
      images.push_back(random_closed(rng, so_far, s, t, decl.degree, shape));
    } else {
      GenIndex g = b.add_generator(gen_prefix + std::to_string(next_gen++), s, t, decl.degree, da);
      Element img = Element::generator(b.signature(), g);
      if (chance(rng, 25)) img = img + random_closed(rng, so_far, s, t, decl.degree, shape);
      images.push_back(std::move(img));
    }
  }
  if (chance(rng, 25)) add_random_generator(rng, b, gen_prefix + std::to_string(next_gen++), shape);
  PresentationPtr target = share(std::move(b).build());
  return DgFunctor(c, target, std::move(objects), std::move(images));
}

}  // namespace

Element random_element(Rng& rng, const DgPresentation& p, ObjIndex source, ObjIndex target, int degree,
                       const RandomShape& shape) {
  return random_combination(rng, p.signature(), all_generators(p.signature()), source, target, degree, shape);
}

Element random_element(Rng& rng, const DgPresentation& p, const RandomShape& shape) {
  const Signature& sig = p.signature();
  if (sig.objects().empty()) throw PreconditionError("random element over a presentation without objects");
  auto start = static_cast<ObjIndex>(uniform(rng, 0, static_cast<int>(sig.objects().size()) - 1));
  ObjIndex cur = start;
  int degree = 0;
  int len = uniform(rng, 0, shape.max_word_length);
  for (int k = 0; k < len; ++k) {
    std::vector<GenIndex> options;
    for (GenIndex g = 0; g < p.size(); ++g) {
      if (sig.gen(g).target == cur) options.push_back(g);
    }
    if (options.empty()) break;
    GenIndex g = options[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(options.size()) - 1))];
    cur = sig.gen(g).source;
    degree += sig.gen(g).degree;
  }
  Element e = random_element(rng, p, cur, start, degree, shape);
  return e;
}

DgPresentation random_presentation(Rng& rng, const RandomShape& shape) {
  return random_presentation_named(rng, shape, "O", "g");
}

Span random_span(Rng& rng, const RandomShape& shape) {
  PresentationPtr c = share(random_presentation_named(rng, shape, "C", "c"));
  DgFunctor alpha = grow_leg(rng, c, "A", "a", shape);
  bool clash = chance(rng, 30);
  DgFunctor beta = grow_leg(rng, c, clash ? "A" : "B", clash ? "a" : "b", shape);
  return Span(std::move(alpha), std::move(beta));
}

}  // namespace dgcat
