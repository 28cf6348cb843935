#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "nordgeom/curvature.hpp"
#include "nordgeom/families.hpp"
#include "oracle.hpp"

using namespace nordgeom;

namespace {

const ParamList& lm() { return family_params(); }
Scalar S(const std::string& text) { return parse_scalar(text, lm()); }

struct Pipeline {
  GeometrySetup setup;
  ConnectionTable conn;
  FTensor f;
  ClassVerdict classes;
  CurvatureTensor curv;
  RicciData ricci;

  explicit Pipeline(GeometrySetup s)
      : setup(std::move(s)),
        conn(levi_civita(setup)),
        f(f_tensor(setup, conn)),
        classes(classify(setup, f, lie_forms(setup, f))),
        curv(curvature_tensor(setup, conn)),
        ricci(ricci_and_scalars(setup, curv)) {}
};

Pipeline family(std::optional<Assignment> at = std::nullopt) { return Pipeline(build_paper_family(at).setup); }
Pipeline abelian() { return Pipeline(GeometrySetup(LieAlgebra(StructureConstants(4, ParamList{})), paper_frame())); }

ScalarVector vec(const ParamList& p, std::initializer_list<int> entries) {
  ScalarVector v;
  for (int e : entries) v.emplace_back(p, Rational(e));
  return v;
}

}  // namespace

TEST(Curvature, FamilyComponents) {
  const auto p = family();
  const Tensor& R = p.curv.r;
  EXPECT_EQ(R(0, 1, 1, 0), S("-2*(lambda^2 + mu^2)"));
  EXPECT_EQ(R(0, 2, 2, 0), S("lambda^2 - mu^2"));
  EXPECT_EQ(R(0, 1, 2, 0), S("2*lambda*mu"));
  EXPECT_TRUE(check_curvature_symmetries(R).pass);
}

TEST(Curvature, AbelianAndUnitPoint) {
  EXPECT_TRUE(abelian().curv.r.is_zero());
  const auto p = family(Assignment{{"lambda", 1}, {"mu", 1}});
  EXPECT_TRUE(p.curv.r(0, 2, 2, 0).is_zero());
  EXPECT_EQ(p.curv.r(0, 1, 1, 0).constant_value(), -4);
  EXPECT_EQ(p.curv.r(0, 1, 2, 0).constant_value(), 2);
}

TEST(Curvature, SymmetryCheckReportsWitness) {
  Tensor t(4, 4, ParamList{});
  t(0, 1, 0, 1) = Scalar(ParamList{}, 1);
  const Verdict v = check_curvature_symmetries(t);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.witness.size(), 4u);
}

TEST(Ricci, FamilyValues) {
  const auto p = family();
  EXPECT_EQ(p.ricci.rho(0, 0), S("-4*lambda^2"));
  EXPECT_EQ(p.ricci.rho(0, 1), S("-2*(lambda^2 + mu^2)"));
  EXPECT_EQ(p.ricci.rho(0, 2), S("4*lambda*mu"));
  EXPECT_EQ(p.ricci.tau, S("-8*(lambda^2 - mu^2)"));
  EXPECT_EQ(to_string(p.ricci.tau), "-8*lambda^2 + 8*mu^2");
  EXPECT_EQ(p.ricci.tau_star, S("16*lambda*mu"));
  EXPECT_EQ(p.ricci.tau_star_star, S("-8*(lambda^2 - mu^2)"));
  // |nabla J|^2 = 2 (tau + tau**) on W2.
  EXPECT_EQ(nabla_j_square_norm(p.setup, p.f), (p.ricci.tau + p.ricci.tau_star_star) * Rational(2));
}

TEST(Ricci, AbelianIsZero) {
  const auto p = abelian();
  EXPECT_TRUE(p.ricci.rho.is_zero());
  EXPECT_TRUE(p.ricci.tau.is_zero());
  EXPECT_TRUE(p.ricci.tau_star.is_zero());
  EXPECT_TRUE(p.ricci.tau_star_star.is_zero());
}

TEST(Ricci, TauStarStarMatchesOracleOnFamilyPoints) {
  for (const auto& [l, m] : {std::pair{1, 2}, std::pair{-3, 1}, std::pair{2, 2}, std::pair{5, -4}}) {
    const auto p = family(Assignment{{"lambda", l}, {"mu", m}});
    const auto o = oracle::family(l, m);
    EXPECT_EQ(p.ricci.tau.constant_value(), oracle::tau(o));
    EXPECT_EQ(p.ricci.tau_star.constant_value(), oracle::tau_star(o));
    EXPECT_EQ(p.ricci.tau_star_star.constant_value(), oracle::tau_star_star(o));
    EXPECT_EQ(oracle::tau_star_star(o), -8 * (l * l - m * m));
  }
}

TEST(CurvatureLike, PaperFrameValues) {
  const auto p = abelian();
  const Tensor pi1 = curvature_like(CurvatureLikeKind::Pi1, p.setup).t;
  const Tensor pi2 = curvature_like(CurvatureLikeKind::Pi2, p.setup).t;
  EXPECT_EQ(pi1(0, 1, 1, 0).constant_value(), 1);
  // g(X3, J X3) g(X1, J X1) - g(X1, J X3) g(X3, J X1) = 0 - (-1)(-1)
  EXPECT_EQ(pi2(0, 2, 2, 0).constant_value(), -1);
  Tensor g(2, 4, ParamList{});
  for (int i = 0; i < 4; ++i) g(i, i) = Scalar(ParamList{}, p.setup.frame().g()(i, i));
  Tensor twice = pi1;
  twice *= Rational(2);
  EXPECT_EQ(curvature_like(CurvatureLikeKind::Psi1, p.setup, &g).t, twice);
  EXPECT_TRUE(check_curvature_symmetries(pi1).pass);
  EXPECT_TRUE(check_curvature_symmetries(pi2).pass);
  EXPECT_THROW(curvature_like(CurvatureLikeKind::Psi1, p.setup), InputError);
}

TEST(Sectional, FamilyPlanes) {
  const auto p = family();
  const auto e = [&](int i) { return basis_vector(lm(), 4, i); };
  const auto hol = sectional_curvature(p.setup, p.curv, e(0), e(2));
  EXPECT_EQ(hol.denominator, S("-1"));
  ASSERT_TRUE(hol.value.has_value());
  EXPECT_EQ(*hol.value, S("-(lambda^2 - mu^2)"));
  const auto real = sectional_curvature(p.setup, p.curv, e(0), e(1));
  EXPECT_EQ(real.denominator, S("1"));
  EXPECT_EQ(*real.value, S("-2*(lambda^2 + mu^2)"));
}

TEST(Sectional, DegeneratePlaneThrows) {
  const auto p = family();
  EXPECT_THROW(sectional_curvature(p.setup, p.curv, vec(lm(), {1, 0, 1, 0}), vec(lm(), {0, 1, 0, 1})),
               DegeneratePlaneError);
}

TEST(Sectional, PlaneTypes) {
  const auto p = abelian();
  const ParamList none;
  EXPECT_EQ(plane_type(p.setup, vec(none, {1, 0, 0, 0}), vec(none, {0, 0, 1, 0})), PlaneType::Holomorphic);
  EXPECT_EQ(plane_type(p.setup, vec(none, {1, 0, 0, 0}), vec(none, {0, 1, 0, 0})), PlaneType::TotallyReal);
  EXPECT_EQ(plane_type(p.setup, vec(none, {1, 0, 0, 0}), vec(none, {0, 1, 1, 0})), PlaneType::Generic);
  EXPECT_EQ(to_string(PlaneType::TotallyReal), "totally-real");
  // Isotropic planes still have a type; only dependent vectors are rejected.
  EXPECT_EQ(plane_type(p.setup, vec(none, {1, 0, 1, 0}), vec(none, {0, 1, 0, 1})), PlaneType::Generic);
  EXPECT_THROW(plane_type(p.setup, vec(none, {1, 0, 0, 0}), vec(none, {2, 0, 0, 0})), DegeneratePlaneError);
}

TEST(HolomorphicIdentity, ModelTensorHasConstantHolomorphicCurvature) {
  const auto p = abelian();
  CurvatureTensor model{curvature_like(CurvatureLikeKind::Pi1, p.setup).t +
                        curvature_like(CurvatureLikeKind::Pi2, p.setup).t};
  model.r *= Rational(3);
  const RicciData ricci = ricci_and_scalars(p.setup, model);
  const TheoremAResult ta = theorem_a_check(p.setup, model, ricci);
  EXPECT_TRUE(ta.verdict.pass) << ta.verdict.describe();
  EXPECT_EQ(ta.h.constant_value(), 6);
  const ParamList none;
  const ScalarVector x = vec(none, {1, 2, 0, 5});
  EXPECT_EQ(*sectional_curvature(p.setup, model, x, apply_j(p.setup.frame(), x)).value, ta.h);
}

TEST(HolomorphicIdentity, AbelianPasses) {
  const auto p = abelian();
  const auto ta = theorem_a_check(p.setup, p.curv, p.ricci);
  EXPECT_TRUE(ta.verdict.pass);
  EXPECT_TRUE(ta.h.is_zero());
}

TEST(HolomorphicIdentity, FamilyHolomorphicCurvatureIsNotConstant) {
  const auto p = family();
  const auto ta = theorem_a_check(p.setup, p.curv, p.ricci);
  EXPECT_EQ(ta.h, S("-(lambda^2 - mu^2)"));
  EXPECT_FALSE(ta.verdict.pass);
  EXPECT_EQ(ta.verdict.witness, (std::vector<int>{1, 2, 1, 2}));
  // The holomorphic plane through X1 + X2 has twice the curvature of alpha(1,3).
  const ScalarVector x = vec(lm(), {1, 1, 0, 0});
  const auto sec = sectional_curvature(p.setup, p.curv, x, apply_j(p.setup.frame(), x));
  EXPECT_EQ(*sec.value, S("-2*(lambda^2 - mu^2)"));
  const auto o = oracle::family(2, 1);
  const oracle::Vec ox{1, 1, 0, 0};
  EXPECT_EQ(oracle::sectional(o, ox, oracle::jv(o, ox)), -6);
}

TEST(HolomorphicIdentity, NumericPointMatchesCoordinatePlanes) {
  const auto p = family(Assignment{{"lambda", 2}, {"mu", 1}});
  const auto ta = theorem_a_check(p.setup, p.curv, p.ricci);
  EXPECT_EQ(ta.h.constant_value(), -3);
  const auto e = [&](int i) { return basis_vector(p.setup.params(), 4, i); };
  EXPECT_EQ(sectional_curvature(p.setup, p.curv, e(0), e(2)).value->constant_value(), -3);
  EXPECT_FALSE(ta.verdict.pass);
}

TEST(NormRelation, Relations) {
  for (auto p : {family(), abelian(), family(Assignment{{"lambda", 1}, {"mu", 2}})}) {
    const Scalar norm = nabla_j_square_norm(p.setup, p.f);
    const auto ta = theorem_a_check(p.setup, p.curv, p.ricci);
    const auto t1 = theorem1_check(p.setup, norm, p.ricci, p.classes, ta);
    EXPECT_EQ(t1.status, CheckStatus::Pass);
    ASSERT_TRUE(t1.w2_norm_vs_h.has_value());
    EXPECT_TRUE(t1.w2_norm_vs_h->pass);
    EXPECT_TRUE(t1.w2_norm_vs_tau->pass);
    EXPECT_EQ(norm, ta.h * Rational(32));
  }
  const auto point = family(Assignment{{"lambda", 1}, {"mu", 2}});
  EXPECT_EQ(nabla_j_square_norm(point.setup, point.f).constant_value(), 96);
}

TEST(NormRelation, NotApplicableOutsideW2AndW3) {
  // [X1, X2] = X1 on the adapted frame is neither W2 nor W3.
  const ParamList none;
  StructureConstants c(4, none);
  c.set_bracket(0, 1, 0, Scalar(none, 1));
  const Pipeline p(GeometrySetup(LieAlgebra(c), paper_frame()));
  ASSERT_FALSE(p.classes.w2 || p.classes.w3);
  const auto ta = theorem_a_check(p.setup, p.curv, p.ricci);
  EXPECT_EQ(theorem1_check(p.setup, nabla_j_square_norm(p.setup, p.f), p.ricci, p.classes, ta).status,
            CheckStatus::NotApplicable);
}

TEST(Weyl, FamilyTable) {
  const auto p = family();
  const Tensor w = weyl_tensor(p.setup, p.curv, p.ricci);
  EXPECT_EQ(w(0, 1, 1, 0), S("2/3*(lambda^2 - mu^2)"));
  EXPECT_EQ(w(0, 2, 2, 0), S("1/3*(lambda^2 - mu^2)"));
  EXPECT_EQ(w(0, 2, 1, 3), S("-(lambda^2 - mu^2)"));
  EXPECT_TRUE(ricci_contraction(p.setup, w).is_zero());
}

TEST(Weyl, VanishesOnIsotropicLocusAndAbelian) {
  for (const auto& [l, m] : {std::pair{1, 1}, std::pair{3, -3}, std::pair{0, 0}}) {
    const auto p = family(Assignment{{"lambda", l}, {"mu", m}});
    EXPECT_TRUE(weyl_tensor(p.setup, p.curv, p.ricci).is_zero());
  }
  const auto a = abelian();
  EXPECT_TRUE(weyl_tensor(a.setup, a.curv, a.ricci).is_zero());
}

TEST(Weyl, NeedsDimensionFour) {
  const ParamList none;
  const RationalMatrix g = RationalMatrix::diagonal({1, -1});
  const RationalMatrix j{{0, 1}, {-1, 0}};
  const Pipeline p(GeometrySetup(LieAlgebra(StructureConstants(2, none)), FrameStructure(g, j)));
  EXPECT_THROW(weyl_tensor(p.setup, p.curv, p.ricci), DimensionError);
}

TEST(IsotropicKaehler, NumericPoints) {
  auto all = [](const Theorem4Report& r, bool value) {
    return std::all_of(r.conditions.begin(), r.conditions.end(),
                       [&](const Theorem4Condition& c) { return c.holds == value; });
  };
  const auto t11 = theorem4_battery(build_paper_family(Assignment{{"lambda", 1}, {"mu", 1}}).setup);
  EXPECT_TRUE(t11.family);
  EXPECT_TRUE(all(t11, true));
  EXPECT_EQ(t11.equivalent, true);
  const auto t12 = theorem4_battery(build_paper_family(Assignment{{"lambda", 1}, {"mu", 2}}).setup);
  EXPECT_TRUE(all(t12, false));
  EXPECT_EQ(t12.equivalent, true);
  EXPECT_TRUE(all(theorem4_battery(build_paper_family(Assignment{{"lambda", 0}, {"mu", 0}}).setup), true));
}

TEST(IsotropicKaehler, SymbolicAndNonFamily) {
  const auto sym = theorem4_battery(build_paper_family().setup);
  EXPECT_TRUE(sym.symbolic);
  EXPECT_EQ(sym.equivalent, true);
  EXPECT_FALSE(sym.conditions[1].holds.has_value());

  const ParamList none;
  StructureConstants c(4, none);
  c.set_bracket(0, 1, 0, Scalar(none, 1));
  const auto other = theorem4_battery(GeometrySetup(LieAlgebra(c), paper_frame()));
  EXPECT_FALSE(other.family);
  EXPECT_FALSE(other.equivalent.has_value());
}

TEST(CurvatureProperties, RandomAlgebras) {
  int checked = 0;
  for (std::uint64_t seed = 200; seed < 320; ++seed) {
    auto algebra = random_valid_algebra(seed, 4, 2);
    if (!algebra) continue;
    ++checked;
    const Pipeline p(GeometrySetup(*algebra, paper_frame()));
    EXPECT_TRUE(check_curvature_symmetries(p.curv.r).pass);
    EXPECT_TRUE(ricci_contraction(p.setup, weyl_tensor(p.setup, p.curv, p.ricci)).is_zero());

    oracle::Geometry o = oracle::adapted_frame();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) o.C(i, j, k) = (*algebra)(i, j, k).constant_value();
    oracle::solve_connection(o);
    for_each_index(4, 4, [&](std::span<const int> idx) {
      ASSERT_EQ(p.curv.r.at(idx).constant_value(), oracle::r(o, idx[0], idx[1], idx[2], idx[3]))
          << "seed " << seed << " at " << index_key(idx);
    });
    EXPECT_EQ(p.ricci.tau_star_star.constant_value(), oracle::tau_star_star(o));
  }
  EXPECT_GT(checked, 80);
}

TEST(CurvatureProperties, ScalarsInvariantUnderRelabelling) {
  // Swap (X1, X2) together with (X3, X4): the adapted frame is preserved.
  const std::array<int, 4> perm{1, 0, 3, 2};
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto algebra = random_valid_algebra(seed, 4, 2);
    if (!algebra) continue;
    StructureConstants moved(4, ParamList{});
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const Scalar& v = (*algebra)(i, j, k);
          if (!v.is_zero()) moved.set_bracket(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(k)], v);
        }
    const Pipeline a(GeometrySetup(*algebra, paper_frame()));
    const Pipeline b(GeometrySetup(LieAlgebra(moved), paper_frame()));
    EXPECT_EQ(a.ricci.tau, b.ricci.tau);
    EXPECT_EQ(a.ricci.tau_star, b.ricci.tau_star);
    EXPECT_EQ(a.ricci.tau_star_star, b.ricci.tau_star_star);
  }
}
