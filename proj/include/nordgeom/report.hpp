#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nordgeom/input.hpp"

namespace nordgeom {

// Every invariant of one input, serialised with canonical Scalar strings.
// Tensors list nonzero components only, keyed by 1-based index tuples.
nlohmann::json build_report(const RawInput& input, const GeometrySetup& setup);

// Class flags, their residuals and (in dimension 4) the W2 conditions.
nlohmann::json build_classification(const RawInput& input, const GeometrySetup& setup);

nlohmann::json validation_json(const std::vector<Verdict>& verdicts);

// Aligned plain-text rendering of build_report / build_classification output.
void render_text(const nlohmann::json& report, std::ostream& out);

struct PaperCheck {
  std::string kind;  // "table" or "theorem"
  std::string name;
  bool pass = true;
  std::vector<std::string> details;
};

// Golden tables from `golden_dir` followed by the theorem checks.
std::vector<PaperCheck> verify_paper(const std::filesystem::path& golden_dir);

}  // namespace nordgeom
