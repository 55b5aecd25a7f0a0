#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgcat/functor.hpp"

namespace dgcat {

// Origin of every object and generator of a construction output, keyed by
// output name. Tags:
//   "A:n", "B:n"     copied from a span leg's target
//   "1:n", "2:n"     cylinder copies
//   "tobj:n"         t-generator of object n of the span source
//   "t:n"            t-generator of generator n of the span source
//   "inv:T", "hat:T", "chk:T", "bar:T"   localization of the generator tagged T
struct Provenance {
  std::map<std::string, std::string> objects;
  std::map<std::string, std::string> generators;
};

struct CylinderResult {
  PresentationPtr cylinder;
  DgFunctor i1;
  DgFunctor i2;
  std::optional<DgFunctor> projection;  // set by cylinder(), not by cylinder0()
  Provenance provenance;
};

CylinderResult cylinder0(const PresentationPtr& c);
// cylinder0 localized at every t-generator of an object, with the projection.
CylinderResult cylinder(const PresentationPtr& c);

// Adds an inverse f' and homotopies f-hat, f-check, f-bar for each named
// closed degree 0 generator.
DgPresentation localize(const DgPresentation& c, const std::vector<std::string>& names);

struct PushoutResult {
  PresentationPtr result;
  DgFunctor inclusion;  // from span.beta's codomain
  DgFunctor induced;    // from span.alpha's codomain
  Provenance provenance;
};

// Strict pushout along a semifree extension span.alpha. The extension must
// send generators to distinct generators and objects injectively; its image
// must be closed under d.
PushoutResult pushout(const Span& span);

struct HocolimResult {
  PresentationPtr result;
  DgFunctor from_a;
  DgFunctor from_b;
  Provenance provenance;
};

HocolimResult homotopy_pushout(const Span& span);

// The same homotopy pushout computed as two strict pushouts through Cyl of
// the span source. Provenance tags match those of homotopy_pushout.
HocolimResult homotopy_pushout_via_cylinder(const Span& span);

// homotopy_pushout of the span, then localized at s_a and s_b (names in the
// leg targets). s_c is checked to consist of closed degree 0 generators of
// the source; the invertibility of its images is not decided.
HocolimResult homotopy_pushout_localized(const Span& span, const std::vector<std::string>& s_a,
                                         const std::vector<std::string>& s_b,
                                         const std::vector<std::string>& s_c);

}  // namespace dgcat
