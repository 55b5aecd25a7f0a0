#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgcat/presentation.hpp"

namespace dgcat {

using PresentationPtr = std::shared_ptr<const DgPresentation>;

inline PresentationPtr share(DgPresentation p) { return std::make_shared<const DgPresentation>(std::move(p)); }

class DgFunctor {
 public:
  // Checks that each image has the mapped endpoints and the generator's degree.
  DgFunctor(PresentationPtr domain, PresentationPtr codomain, std::vector<ObjIndex> object_map,
            std::vector<Element> gen_map);

  static DgFunctor identity(const PresentationPtr& p);
  // Images given by name; unlisted objects must be listed, unlisted generators map to 0.
  static DgFunctor from_names(PresentationPtr domain, PresentationPtr codomain,
                              const std::map<std::string, std::string>& objects,
                              const std::map<std::string, std::string>& gens);

  const DgPresentation& domain() const { return *domain_; }
  const DgPresentation& codomain() const { return *codomain_; }
  const PresentationPtr& domain_ptr() const { return domain_; }
  const PresentationPtr& codomain_ptr() const { return codomain_; }
  ObjIndex object_image(ObjIndex o) const { return object_map_.at(o); }
  const std::vector<ObjIndex>& object_map() const { return object_map_; }
  const Element& image(GenIndex g) const { return gen_map_.at(g); }
  const Element& image(std::string_view name) const { return gen_map_.at(domain_->signature().generator(name)); }
  const std::vector<Element>& images() const { return gen_map_; }

  // Same images, codomain replaced by an extension of it (generators appended).
  DgFunctor with_codomain(PresentationPtr extended) const;

  bool operator==(const DgFunctor& other) const;

 private:
  PresentationPtr domain_;
  PresentationPtr codomain_;
  std::vector<ObjIndex> object_map_;
  std::vector<Element> gen_map_;
};

Element apply(const DgFunctor& f, const Element& e);
ValidationReport check_dg(const DgFunctor& f);
DgFunctor compose_functors(const DgFunctor& g, const DgFunctor& f);

struct Span {
  DgFunctor alpha;  // C -> A
  DgFunctor beta;   // C -> B

  Span(DgFunctor a, DgFunctor b);
};

nlohmann::json functor_to_json(const DgFunctor& f);
DgFunctor functor_from_json(const nlohmann::json& j, PresentationPtr domain, PresentationPtr codomain);

// Renaming isomorphism test: `gen_names`/`object_names` send names of `a` to
// names of `b`. Compares degrees, endpoints, differentials and inverse records.
ValidationReport compare_by_renaming(const DgPresentation& a, const DgPresentation& b,
                                     const std::map<std::string, std::string>& object_names,
                                     const std::map<std::string, std::string>& gen_names);

}  // namespace dgcat
