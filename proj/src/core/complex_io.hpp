#pragma once

#include <string>

#include "complex.hpp"

namespace morselink::alg {

// Schema: {dimension, ring, generators: [{id, degree, level}],
//          boundary: {"<degree>": [[row-id, col-id, coefficient], ...]}}.
// Coefficients travel as exact decimal strings; the round trip is lossless.
std::string complex_to_json(const FilteredComplex& cx);
FilteredComplex complex_from_json(const std::string& text);

}  // namespace morselink::alg
