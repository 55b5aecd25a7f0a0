#pragma once

#include <random>

#include "dgcat/functor.hpp"

namespace dgcat {

using Rng = std::mt19937_64;

struct RandomShape {
  int max_objects = 3;
  int max_generators = 5;
  int min_degree = -3;
  int max_degree = 0;
  int max_terms = 3;
  int max_word_length = 3;
  int max_coef = 3;
};

// Random homogeneous element with the given endpoints and degree; may be zero
// when no word of that shape is found.
Element random_element(Rng& rng, const DgPresentation& p, ObjIndex source, ObjIndex target, int degree,
                       const RandomShape& shape = {});

// Random homogeneous element of any endpoints and degree over a nonempty
// presentation.
Element random_element(Rng& rng, const DgPresentation& p, const RandomShape& shape = {});

// Valid by construction: each differential is a combination of words in
// closed generators plus the differential of a random element.
DgPresentation random_presentation(Rng& rng, const RandomShape& shape = {});

// Random dg functors C -> A and C -> B, built by growing A and B alongside C.
Span random_span(Rng& rng, const RandomShape& shape = {});

}  // namespace dgcat
