#include "nordgeom/input.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nordgeom/families.hpp"

namespace nordgeom {

namespace {

using nlohmann::json;

Rational rational_entry(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InputError("matrix entries must be integers or rational strings such as \"1/2\"");
}

RationalMatrix matrix_entry(const json& v, int dim, const char* what) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    throw InputError(std::string(what) + " must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " array");
  }
  RationalMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw InputError(std::string(what) + " row " + std::to_string(i + 1) + " has the wrong length");
    }
    for (int j = 0; j < dim; ++j) m(i, j) = rational_entry(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

int frame_index(const std::string& text, int dim) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 1 || v > dim) throw InputError("bad frame index '" + text + "'");
  return v - 1;
}

}  // namespace

RawInput parse_input(const std::string& json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("input is not valid JSON: ") + e.what());
  }
  try {
    const int dim = doc.at("dimension").get<int>();
    if (dim <= 0 || dim % 2 != 0) throw InputError("dimension must be even and positive");
    ParamList params(doc.value("parameters", std::vector<std::string>{}));
    RawInput in{source, params, StructureConstants(dim, params), RationalMatrix(dim), RationalMatrix(dim), {}};
    if (doc.contains("brackets")) {
      for (const auto& [pair, comps] : doc.at("brackets").items()) {
        const auto comma = pair.find(',');
        if (comma == std::string::npos) throw InputError("bracket key '" + pair + "' must look like \"i,j\"");
        const int i = frame_index(pair.substr(0, comma), dim);
        const int j = frame_index(pair.substr(comma + 1), dim);
        if (i >= j) throw InputError("bracket key '" + pair + "' must have i < j");
        for (const auto& [k, value] : comps.items()) {
          Scalar s = value.is_string() ? parse_scalar(value.get<std::string>(), params)
                                       : Scalar(params, rational_entry(value));
          in.constants.set_bracket(i, j, frame_index(k, dim), s);
        }
      }
    }
    if (doc.contains("frame")) {
      if (doc.at("frame").get<std::string>() != "paper-frame") {
        throw InputError("unknown frame preset '" + doc.at("frame").get<std::string>() + "'");
      }
      if (dim != 4) throw InputError("paper-frame is 4-dimensional");
      const FrameStructure f = paper_frame();
      in.g = f.g();
      in.j = f.j();
    } else {
      in.g = matrix_entry(doc.at("metric"), dim, "metric");
      in.j = matrix_entry(doc.at("J"), dim, "J");
    }
    return in;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed input: ") + e.what());
  } catch (const ParseError& e) {
    throw InputError(std::string("bad expression: ") + e.what());
  }
}

RawInput load_input(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InputError("cannot read input file '" + path + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_input(buf.str(), path);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"paper-family", "paper-frame", "paper-frame-abelian"};
  return names;
}

RawInput preset_input(const std::string& name) {
  const FrameStructure frame = paper_frame();
  if (name == "paper-family") {
    const ParamList& params = family_params();
    return RawInput{"preset " + name, params,
                    paper_family_constants(Scalar::variable(params, "lambda"), Scalar::variable(params, "mu")),
                    frame.g(), frame.j(), {}};
  }
  if (name == "paper-frame" || name == "paper-frame-abelian") {
    return RawInput{"preset " + name, ParamList{}, StructureConstants(4, ParamList{}), frame.g(), frame.j(), {}};
  }
  throw InputError("unknown preset '" + name + "'");
}

RawInput bind_parameters(RawInput input, const Assignment& bindings) {
  for (const auto& [name, value] : bindings) {
    if (!input.params.index_of(name)) throw InputError("cannot bind unknown parameter '" + name + "'");
    input.bindings[name] = value;
  }
  if (!bindings.empty()) input.constants = input.constants.substituted(bindings);
  return input;
}

std::vector<Verdict> validate(const RawInput& input) {
  return {check_antisymmetry(input.constants), check_jacobi(input.constants), check_norden(input.g, input.j)};
}

GeometrySetup make_setup(const RawInput& input) {
  if (input.g.size() != input.constants.dim()) throw DimensionError("algebra and frame dimensions differ");
  return GeometrySetup(LieAlgebra(input.constants), FrameStructure(input.g, input.j));
}

}  // namespace nordgeom
