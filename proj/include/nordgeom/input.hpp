#pragma once

#include <string>
#include <vector>

#include "nordgeom/frame_algebra.hpp"

namespace nordgeom {

// Unvalidated input triple as read from a file or preset. Validation is a
// separate step so that failures can be reported with witnesses.
struct RawInput {
  std::string source;
  ParamList params;
  StructureConstants constants;
  RationalMatrix g;
  RationalMatrix j;
  Assignment bindings;
};

// JSON input:
//   {"dimension": 4, "parameters": ["lambda", "mu"],
//    "brackets": {"1,2": {"1": "lambda", "2": "-lambda"}, ...},
//    "metric": [[...]], "J": [[...]]}
// Brackets are listed for i < j only; missing pairs and components are zero.
// "frame": "paper-frame" may replace "metric" and "J".
RawInput parse_input(const std::string& json_text, const std::string& source = "<json>");
RawInput load_input(const std::string& path);

// paper-frame, paper-frame-abelian, paper-family.
RawInput preset_input(const std::string& name);
const std::vector<std::string>& preset_names();

// Substitutes the bindings into the structure constants. Unknown names
// throw InputError.
RawInput bind_parameters(RawInput input, const Assignment& bindings);

// antisymmetry, Jacobi, Norden (with the metric check first).
std::vector<Verdict> validate(const RawInput& input);

// Throws ValidationError on the first failing check.
GeometrySetup make_setup(const RawInput& input);

}  // namespace nordgeom
