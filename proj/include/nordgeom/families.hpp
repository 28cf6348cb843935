#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nordgeom/frame_algebra.hpp"

namespace nordgeom {

// The two-parameter family on the adapted 4-frame, symbolic in (lambda, mu)
// unless an assignment binds both.
struct PaperFamilyInstance {
  std::optional<Assignment> assignment;
  GeometrySetup setup;
};

// Parameter list ["lambda", "mu"] shared by every family instance.
const ParamList& family_params();

// The assignment, when given, must bind exactly lambda and mu.
PaperFamilyInstance build_paper_family(const std::optional<Assignment>& assignment = std::nullopt);

// A transcribed table of expected values. Index keys are 0-based here and
// 1-based ("1,2,2,1") in the file.
struct GoldenTable {
  std::string name;
  // connection | F | nabla_j_norm | curvature | ricci | sectional | weyl
  std::string quantity;
  // none | symmetric | f_symmetries | riemann
  std::string symmetry_closure = "none";
  // When true, entries missing after closure are asserted to be zero.
  bool unlisted_zero = true;
  ParamList params;
  std::map<std::vector<int>, Scalar> entries;
  std::map<std::string, Scalar> scalars;
};

GoldenTable parse_golden_table(const std::string& json_text);
GoldenTable load_golden_table(const std::filesystem::path& path);

// The seven tables in verification order: LC1, F1, n2, R1, tau1, s1, W1.
const std::vector<std::string>& golden_table_names();
std::vector<GoldenTable> load_golden_tables(const std::filesystem::path& dir);
std::filesystem::path default_golden_dir();

// Applies the table's symmetry closure. Throws InputError when two images
// of listed entries conflict.
std::map<std::vector<int>, Scalar> expand_closure(const GoldenTable& table, const FrameStructure& frame);

struct TableDiff {
  std::string key;
  std::string expected;
  std::string computed;
};

struct TableResult {
  std::string name;
  bool pass = true;
  std::vector<TableDiff> diffs;
};

// Recomputes every quantity from definitions and compares it exactly with
// the tables. Failures are reported as diffs, never thrown.
std::vector<TableResult> verify_golden_tables(const PaperFamilyInstance& instance,
                                              const std::vector<GoldenTable>& tables);

// Deterministic fuzz generator. Samples structure constants with
// |entry| <= magnitude from a mix of strategies (sparse, semidirect,
// W2-adapted) and keeps the first that satisfies Jacobi; nullopt after
// the attempt bound. magnitude 0 yields the abelian algebra.
std::optional<LieAlgebra> random_valid_algebra(std::uint64_t seed, int dim, int magnitude,
                                               const ParamList& params = ParamList{});

// Dimensions of g, [g,g], [[g,g],[g,g]], ... until it stabilises. Needs
// constant structure constants. Solvable iff the last entry is 0.
std::vector<int> derived_series_dimensions(const LieAlgebra& algebra);

}  // namespace nordgeom
