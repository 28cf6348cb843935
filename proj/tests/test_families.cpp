#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "nordgeom/curvature.hpp"
#include "nordgeom/families.hpp"

using namespace nordgeom;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::filesystem::path golden_dir = NORDGEOM_GOLDEN_DIR;

}  // namespace

TEST(PaperFamily, SymbolicAndNumericInstances) {
  const auto sym = build_paper_family();
  EXPECT_FALSE(sym.assignment.has_value());
  EXPECT_TRUE(check_jacobi(sym.setup.algebra().constants()).pass);
  EXPECT_TRUE(sym.setup.on_paper_frame());

  const auto zero = build_paper_family(Assignment{{"lambda", 0}, {"mu", 0}});
  EXPECT_TRUE(zero.setup.algebra().constants().tensor().is_zero());
  EXPECT_TRUE(f_tensor(zero.setup, levi_civita(zero.setup)).f.is_zero());

  const auto point = build_paper_family(Assignment{{"lambda", 1}, {"mu", 2}});
  EXPECT_TRUE(w2_condition_check(point.setup.algebra()).pass);
}

TEST(PaperFamily, AssignmentMustBindBothParameters) {
  EXPECT_THROW(build_paper_family(Assignment{{"lambda", 1}}), InputError);
  EXPECT_THROW(build_paper_family(Assignment{{"lambda", 1}, {"mu", 1}, {"nu", 1}}), InputError);
}

TEST(GoldenTables, SymbolicFamilyReproducesAllTables) {
  const auto tables = load_golden_tables(golden_dir);
  ASSERT_EQ(tables.size(), golden_table_names().size());
  for (const auto& r : verify_golden_tables(build_paper_family(), tables)) {
    EXPECT_TRUE(r.pass) << r.name;
    EXPECT_TRUE(r.diffs.empty()) << r.name;
  }
}

TEST(GoldenTables, UnitPointZeroesTheDifferenceEntries) {
  const auto inst = build_paper_family(Assignment{{"lambda", 1}, {"mu", 1}});
  const auto r1 = load_golden_table(golden_dir / "R1.json");
  const auto results = verify_golden_tables(inst, {r1});
  ASSERT_EQ(results.size(), 1u);
  EXPECT_TRUE(results[0].pass);
  const Tensor& R = curvature_tensor(inst.setup, levi_civita(inst.setup)).r;
  EXPECT_TRUE(R(0, 2, 2, 0).is_zero());
  EXPECT_TRUE(R(0, 2, 1, 3).is_zero());
}

TEST(GoldenTables, SingleSignFlipGivesOneDiff) {
  std::string text = read_file(golden_dir / "LC1.json");
  const std::string needle = "\"3,3,4\": \"mu\"";
  const auto at = text.find(needle);
  ASSERT_NE(at, std::string::npos);
  text.replace(at, needle.size(), "\"3,3,4\": \"-mu\"");
  const auto results = verify_golden_tables(build_paper_family(), {parse_golden_table(text)});
  ASSERT_EQ(results.size(), 1u);
  EXPECT_FALSE(results[0].pass);
  ASSERT_EQ(results[0].diffs.size(), 1u);
  EXPECT_EQ(results[0].diffs[0].key, "3,3,4");
  EXPECT_EQ(results[0].diffs[0].expected, "-mu");
  EXPECT_EQ(results[0].diffs[0].computed, "mu");
}

TEST(GoldenTables, ClosureExpandsToFullSupport) {
  const FrameStructure frame = paper_frame();
  const auto inst = build_paper_family();
  const auto conn = levi_civita(inst.setup);
  const auto f1 = expand_closure(load_golden_table(golden_dir / "F1.json"), frame);
  EXPECT_EQ(f1.size(), f_tensor(inst.setup, conn).f.nonzero_count());
  const auto r1 = expand_closure(load_golden_table(golden_dir / "R1.json"), frame);
  EXPECT_EQ(r1.size(), curvature_tensor(inst.setup, conn).r.nonzero_count());
}

TEST(GoldenTables, ConflictingEntriesAreRejected) {
  const std::string text = R"({"table": "bad", "quantity": "ricci", "symmetry_closure": "symmetric",
    "parameters": ["lambda", "mu"], "entries": {"1,2": "lambda", "2,1": "mu"}})";
  EXPECT_THROW(expand_closure(parse_golden_table(text), paper_frame()), InputError);
  EXPECT_THROW(parse_golden_table(R"({"table": "x"})"), InputError);
  EXPECT_THROW(parse_golden_table(R"({"table": "x", "quantity": "F", "symmetry_closure": "cyclic",
    "parameters": []})"),
               InputError);
}

TEST(GoldenTables, WrongQuantityIsReportedAsDiff) {
  const std::string text = R"({"table": "odd", "quantity": "torsion", "parameters": ["lambda", "mu"]})";
  const auto r = verify_golden_tables(build_paper_family(), {parse_golden_table(text)});
  EXPECT_FALSE(r[0].pass);
  EXPECT_EQ(r[0].diffs.size(), 1u);
}

TEST(RandomAlgebra, ZeroMagnitudeIsAbelian) {
  for (std::uint64_t seed : {0u, 7u, 99u}) {
    auto a = random_valid_algebra(seed, 4, 0);
    ASSERT_TRUE(a.has_value());
    EXPECT_TRUE(a->constants().tensor().is_zero());
  }
}

TEST(RandomAlgebra, DeterministicBoundedAndJacobiValid) {
  int w2 = 0, produced = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto a = random_valid_algebra(seed, 4, 3);
    auto b = random_valid_algebra(seed, 4, 3);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (!a) continue;
    ++produced;
    EXPECT_EQ(a->constants(), b->constants());
    EXPECT_TRUE(check_jacobi(a->constants()).pass);
    const Tensor& c = a->constants().tensor();
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_LE(abs(c.flat(k).constant_value()), 3);
    if (w2_condition_check(*a).pass) ++w2;
  }
  EXPECT_GT(produced, 180);
  // The generator must exercise both sides of the W2 conditions.
  EXPECT_GT(w2, 10);
  EXPECT_LT(w2, produced);
}

TEST(DerivedSeries, Examples) {
  const auto point = build_paper_family(Assignment{{"lambda", 1}, {"mu", 2}});
  EXPECT_EQ(derived_series_dimensions(point.setup.algebra()), (std::vector<int>{4, 3, 0}));
  EXPECT_EQ(derived_series_dimensions(LieAlgebra(StructureConstants(4, ParamList{}))), (std::vector<int>{4, 0}));
  EXPECT_THROW(derived_series_dimensions(build_paper_family().setup.algebra()), InputError);
}
