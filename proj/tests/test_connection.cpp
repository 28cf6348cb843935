#include <gtest/gtest.h>

#include "nordgeom/connection.hpp"
#include "nordgeom/families.hpp"
#include "oracle.hpp"

using namespace nordgeom;

namespace {

const ParamList& lm() { return family_params(); }
Scalar S(const std::string& text) { return parse_scalar(text, lm()); }

GeometrySetup family_setup() { return build_paper_family().setup; }

GeometrySetup single_bracket(int i, int j, int k, int value = 1) {
  const ParamList none;
  StructureConstants c(4, none);
  c.set_bracket(i, j, k, Scalar(none, value));
  return GeometrySetup(LieAlgebra(c), paper_frame());
}

oracle::Geometry to_oracle(const LieAlgebra& algebra) {
  oracle::Geometry geo = oracle::adapted_frame();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) geo.C(i, j, k) = algebra(i, j, k).constant_value();
  oracle::solve_connection(geo);
  return geo;
}

struct Computed {
  ConnectionTable conn;
  FTensor f;
  LieForms forms;
  ClassVerdict classes;
};

Computed compute(const GeometrySetup& s) {
  ConnectionTable conn = levi_civita(s);
  FTensor f = f_tensor(s, conn);
  LieForms forms = lie_forms(s, f);
  ClassVerdict classes = classify(s, f, forms);
  return {std::move(conn), std::move(f), std::move(forms), std::move(classes)};
}

}  // namespace

TEST(LeviCivita, FamilyTable) {
  const auto c = compute(family_setup());
  const Tensor& G = c.conn.gamma;
  // nabla_{X1} X2 = lambda X1 + mu (X3 + X4)
  EXPECT_EQ(G(0, 1, 0), S("lambda"));
  EXPECT_EQ(G(0, 1, 2), S("mu"));
  EXPECT_EQ(G(0, 1, 3), S("mu"));
  EXPECT_TRUE(G(0, 1, 1).is_zero());
  // nabla_{X4} X3 = -lambda (X1 + X2) - mu X4
  EXPECT_EQ(G(3, 2, 0), S("-lambda"));
  EXPECT_EQ(G(3, 2, 3), S("-mu"));
  EXPECT_EQ(G(2, 2, 3), S("mu"));
  EXPECT_EQ(G.nonzero_count(), 24u);
}

TEST(LeviCivita, AbelianAndNumericPoint) {
  const auto abelian = compute(GeometrySetup(LieAlgebra(StructureConstants(4, ParamList{})), paper_frame()));
  EXPECT_TRUE(abelian.conn.gamma.is_zero());
  const auto point = compute(build_paper_family(Assignment{{"lambda", 1}, {"mu", 2}}).setup);
  EXPECT_EQ(point.conn.gamma(2, 2, 3).constant_value(), 2);  // nabla_{X3} X3 = 2 X4
}

TEST(FTensor, FamilyComponents) {
  const auto c = compute(family_setup());
  const Tensor& F = c.f.f;
  EXPECT_EQ(F(0, 0, 3), S("-lambda"));
  EXPECT_EQ(F(2, 1, 1), S("-2*lambda"));
  EXPECT_EQ(F(0, 0, 1), S("mu"));
  EXPECT_EQ(F(1, 0, 0), S("2*mu"));
  EXPECT_EQ(F.nonzero_count(), 40u);
  EXPECT_TRUE(check_f_symmetries(family_setup(), F).pass);
  EXPECT_EQ(F, f_from_brackets(family_setup()));
}

TEST(FTensor, LambdaZeroLeavesMuComponents) {
  const auto c = compute(build_paper_family(Assignment{{"lambda", 0}, {"mu", 1}}).setup);
  const Tensor& F = c.f.f;
  EXPECT_EQ(F(0, 0, 1).constant_value(), 1);
  EXPECT_EQ(F(0, 1, 1).constant_value(), 2);
  EXPECT_TRUE(F(0, 0, 3).is_zero());
  EXPECT_TRUE(F(2, 1, 1).is_zero());
  EXPECT_TRUE(F(3, 0, 0).is_zero());
}

TEST(FTensor, AbelianIsKaehler) {
  const auto c = compute(GeometrySetup(LieAlgebra(StructureConstants(4, ParamList{})), paper_frame()));
  EXPECT_TRUE(c.f.f.is_zero());
  EXPECT_TRUE(c.classes.w0 && c.classes.w1 && c.classes.w2 && c.classes.w3);
}

TEST(Nijenhuis, Examples) {
  EXPECT_TRUE(nijenhuis(family_setup()).is_zero());
  EXPECT_TRUE(nijenhuis(GeometrySetup(LieAlgebra(StructureConstants(4, ParamList{})), paper_frame())).is_zero());
  const GeometrySetup s = single_bracket(0, 1, 0);  // [X1, X2] = X1
  const Tensor n = nijenhuis(s);
  EXPECT_EQ(n(0, 1, 0).constant_value(), -1);
  EXPECT_EQ(n, nijenhuis_components_adapted(s));
}

TEST(LieForms, Examples) {
  const auto fam = compute(family_setup());
  for (const auto& t : fam.forms.theta) EXPECT_TRUE(t.is_zero());
  for (const auto& t : fam.forms.theta_star) EXPECT_TRUE(t.is_zero());

  const GeometrySetup s = single_bracket(0, 2, 0);  // [X1, X3] = X1
  const auto c = compute(s);
  EXPECT_EQ(c.forms.theta[0].constant_value(), 2);
  EXPECT_EQ(c.forms.theta, theta_components_adapted(s));
  // theta*(X_i) = theta(J X_i)
  const auto o = to_oracle(s.algebra());
  for (int i = 0; i < 4; ++i) {
    oracle::Q th = 0, ths = 0;
    const auto ei = oracle::basis(o, i), jei = oracle::jv(o, ei);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (o.Gi(a, b) != 0) {
          th += o.Gi(a, b) * oracle::f(o, oracle::basis(o, a), oracle::basis(o, b), ei);
          ths += o.Gi(a, b) * oracle::f(o, oracle::basis(o, a), oracle::basis(o, b), jei);
        }
    EXPECT_EQ(c.forms.theta[static_cast<std::size_t>(i)].constant_value(), th);
    EXPECT_EQ(c.forms.theta_star[static_cast<std::size_t>(i)].constant_value(), ths);
  }
}

TEST(Classify, FamilyIsW2Only) {
  const auto c = compute(family_setup());
  EXPECT_TRUE(c.classes.w2);
  EXPECT_FALSE(c.classes.w0);
  EXPECT_FALSE(c.classes.w1);
  EXPECT_FALSE(c.classes.w3);
  EXPECT_TRUE(c.classes.integrability.pass);
  EXPECT_FALSE(c.classes.w3_check.witness.empty());
}

TEST(Classify, DegenerateFamilyPointIsKaehler) {
  const auto c = compute(build_paper_family(Assignment{{"lambda", 0}, {"mu", 0}}).setup);
  EXPECT_TRUE(c.classes.w0 && c.classes.w1 && c.classes.w2 && c.classes.w3);
}

TEST(NablaJNorm, Examples) {
  const auto fam = compute(family_setup());
  EXPECT_EQ(nabla_j_square_norm(family_setup(), fam.f), S("-32*(lambda^2 - mu^2)"));
  const GeometrySetup point = build_paper_family(Assignment{{"lambda", 1}, {"mu", 2}}).setup;
  EXPECT_EQ(nabla_j_square_norm(point, compute(point).f).constant_value(), 96);
  EXPECT_EQ(oracle::nabla_j_norm(oracle::family(1, 2)), 96);
}

TEST(W2Conditions, Examples) {
  EXPECT_TRUE(w2_condition_check(LieAlgebra(paper_family_constants(S("lambda"), S("mu")))).pass);
  EXPECT_TRUE(w2_condition_check(LieAlgebra(StructureConstants(4, ParamList{}))).pass);
  const Verdict v = w2_condition_check(single_bracket(0, 2, 0).algebra());
  ASSERT_FALSE(v.pass);
  EXPECT_EQ(v.witness, std::vector<int>{1});
  StructureConstants six(6, ParamList{});
  EXPECT_THROW(w2_condition_check(LieAlgebra(six)), DimensionError);
}

TEST(ConnectionProperties, RandomAlgebrasAgreeWithOracle) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto algebra = random_valid_algebra(seed, 4, 2);
    if (!algebra) continue;
    ++checked;
    const GeometrySetup s(*algebra, paper_frame());
    const auto c = compute(s);
    EXPECT_TRUE(check_torsion_free(s, c.conn).pass);
    EXPECT_TRUE(check_metric_compatible(s, c.conn).pass);
    EXPECT_TRUE(check_f_symmetries(s, c.f.f).pass);
    EXPECT_EQ(f_from_brackets(s), f_from_connection(s, c.conn));
    EXPECT_EQ(nijenhuis(s), nijenhuis_components_adapted(s));
    EXPECT_EQ(c.forms.theta, theta_components_adapted(s));
    if (c.classes.w0) EXPECT_TRUE(c.classes.w1 && c.classes.w2 && c.classes.w3);
    if (c.classes.w2) EXPECT_TRUE(nijenhuis(s).is_zero());

    const auto o = to_oracle(*algebra);
    const auto of = oracle::f_table(o);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const std::size_t flat = static_cast<std::size_t>((i * 4 + j) * 4 + k);
          ASSERT_EQ(c.conn.gamma(i, j, k).constant_value(), o.nabla[flat]) << "seed " << seed;
          ASSERT_EQ(c.f.f(i, j, k).constant_value(), of[flat]) << "seed " << seed;
        }
    EXPECT_EQ(nabla_j_square_norm(s, c.f).constant_value(), oracle::nabla_j_norm(o));
  }
  EXPECT_GT(checked, 100);
}

TEST(ConnectionProperties, GeneralFrameInDimensionSix) {
  // Block frame built from two copies of a 2-dim Norden pair plus one more.
  const RationalMatrix g = RationalMatrix::diagonal({1, 1, 1, -1, -1, -1});
  RationalMatrix j(6);
  for (int i = 0; i < 3; ++i) {
    j(i, i + 3) = 1;
    j(i + 3, i) = -1;
  }
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto algebra = random_valid_algebra(seed, 6, 1);
    if (!algebra) continue;
    ++checked;
    const GeometrySetup s(*algebra, FrameStructure(g, j));
    const auto c = compute(s);
    EXPECT_TRUE(check_torsion_free(s, c.conn).pass);
    EXPECT_TRUE(check_metric_compatible(s, c.conn).pass);
    EXPECT_EQ(f_from_brackets(s), f_from_connection(s, c.conn));
  }
  EXPECT_GT(checked, 5);
}
