#include "nordgeom/curvature.hpp"

#include <vector>

namespace nordgeom {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

Tensor metric_tensor(const ParamList& params, const RationalMatrix& m) {
  Tensor t(2, m.size(), params);
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) t(i, j) = Scalar(params, m(i, j));
  }
  return t;
}

// Applies J to one slot of a rank-4 tensor: out(.., i, ..) = sum_a J(i, a) t(.., a, ..).
Tensor apply_j_slot(const Tensor& t, const RationalMatrix& J, int slot) {
  const int n = t.dim();
  Tensor out(4, n, t.params());
  for_each_index(4, n, [&](std::span<const int> idx) {
    std::array<int, 4> src = {idx[0], idx[1], idx[2], idx[3]};
    Scalar v = Scalar::zero(t.params());
    for (int a = 0; a < n; ++a) {
      const Rational& w = J(idx[u(slot)], a);
      if (w == 0) continue;
      src[u(slot)] = a;
      v += t.at(src) * w;
    }
    out.at(idx) = std::move(v);
  });
  return out;
}

// Rank of the rows as vectors over Q.
int row_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

std::vector<Rational> constant_entries(const ScalarVector& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& s : v) {
    if (!s.is_constant()) throw InputError("plane classification needs vectors with constant entries");
    out.push_back(s.constant_value());
  }
  return out;
}

Scalar pi1_on_plane(const GeometrySetup& setup, const ScalarVector& x, const ScalarVector& y) {
  const Scalar gxx = metric(setup.frame(), x, x);
  const Scalar gyy = metric(setup.frame(), y, y);
  const Scalar gxy = metric(setup.frame(), x, y);
  return gxx * gyy - gxy * gxy;
}

}  // namespace

Verdict check_curvature_symmetries(const Tensor& t) {
  if (t.rank() != 4) throw DimensionError("curvature-like tensors have rank 4");
  const int n = t.dim();
  std::optional<Verdict> failure;
  for_each_index(4, n, [&](std::span<const int> idx) {
    if (failure) return;
    const int x = idx[0], y = idx[1], z = idx[2], w = idx[3];
    const Scalar& v = t(x, y, z, w);
    Scalar r = v + t(y, x, z, w);
    if (!r.is_zero()) {
      failure = Verdict::fail("R(x,y,z,u) = -R(y,x,z,u)", {x, y, z, w}, r);
      return;
    }
    r = v + t(x, y, w, z);
    if (!r.is_zero()) {
      failure = Verdict::fail("R(x,y,z,u) = -R(x,y,u,z)", {x, y, z, w}, r);
      return;
    }
    r = v - t(z, w, x, y);
    if (!r.is_zero()) {
      failure = Verdict::fail("R(x,y,z,u) = R(z,u,x,y)", {x, y, z, w}, r);
      return;
    }
    r = v + t(y, z, x, w) + t(z, x, y, w);
    if (!r.is_zero()) failure = Verdict::fail("first Bianchi identity", {x, y, z, w}, r);
  });
  return failure ? *failure : Verdict::ok("curvature symmetries");
}

CurvatureTensor curvature_tensor(const GeometrySetup& setup, const ConnectionTable& conn) {
  const int n = setup.dim();
  const Tensor& gm = conn.gamma;
  const RationalMatrix& g = setup.frame().g();
  Tensor r(4, n, setup.params());
  std::vector<Scalar> comp(u(n), Scalar::zero(setup.params()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        // R(X_i, X_j) X_k = nabla_i (gamma_jk^a X_a) - nabla_j (gamma_ik^a X_a) - C_ij^a nabla_a X_k
        for (int p = 0; p < n; ++p) {
          Scalar v = Scalar::zero(setup.params());
          for (int a = 0; a < n; ++a) {
            if (!gm(j, k, a).is_zero()) v += gm(j, k, a) * gm(i, a, p);
            if (!gm(i, k, a).is_zero()) v -= gm(i, k, a) * gm(j, a, p);
            if (!setup.algebra()(i, j, a).is_zero()) v -= setup.algebra()(i, j, a) * gm(a, k, p);
          }
          comp[u(p)] = std::move(v);
        }
        for (int l = 0; l < n; ++l) {
          Scalar v = Scalar::zero(setup.params());
          for (int p = 0; p < n; ++p) {
            if (g(p, l) != 0) v += comp[u(p)] * g(p, l);
          }
          r(i, j, k, l) = std::move(v);
        }
      }
    }
  }
  if (auto v = check_curvature_symmetries(r); !v) throw InternalInconsistencyError(v.describe());
  return CurvatureTensor{std::move(r)};
}

Tensor ricci_contraction(const GeometrySetup& setup, const Tensor& t) {
  const int n = setup.dim();
  const RationalMatrix& gi = setup.frame().g_inv();
  Tensor rho(2, n, setup.params());
  for (int y = 0; y < n; ++y) {
    for (int z = 0; z < n; ++z) {
      Scalar v = Scalar::zero(setup.params());
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (gi(i, j) != 0) v += t(i, y, z, j) * gi(i, j);
        }
      }
      rho(y, z) = std::move(v);
    }
  }
  return rho;
}

RicciData ricci_and_scalars(const GeometrySetup& setup, const CurvatureTensor& curv) {
  const int n = setup.dim();
  const RationalMatrix& gi = setup.frame().g_inv();
  const RationalMatrix& J = setup.frame().j();
  const ParamList& params = setup.params();
  RicciData out{ricci_contraction(setup, curv.r), Scalar::zero(params), Scalar::zero(params), Scalar::zero(params)};
  for (int y = 0; y < n; ++y) {
    for (int z = y + 1; z < n; ++z) {
      if (!(out.rho(y, z) == out.rho(z, y))) {
        throw InternalInconsistencyError("Ricci tensor is not symmetric at (" + std::to_string(y + 1) + "," +
                                         std::to_string(z + 1) + ")");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (gi(i, j) == 0) continue;
      out.tau += out.rho(i, j) * gi(i, j);
      for (int a = 0; a < n; ++a) {
        if (J(j, a) != 0) out.tau_star += out.rho(i, a) * (gi(i, j) * J(j, a));
      }
    }
  }
  const Tensor rjj = apply_j_slot(apply_j_slot(curv.r, J, 2), J, 3);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      if (gi(i, l) == 0) continue;
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          if (gi(j, k) != 0) out.tau_star_star += rjj(i, j, k, l) * (gi(i, l) * gi(j, k));
        }
      }
    }
  }
  return out;
}

CurvatureLike curvature_like(CurvatureLikeKind kind, const GeometrySetup& setup, const Tensor* s) {
  const int n = setup.dim();
  const ParamList& params = setup.params();
  const RationalMatrix& g = setup.frame().g();
  Tensor t(4, n, params);
  switch (kind) {
    case CurvatureLikeKind::Psi1:
    case CurvatureLikeKind::Pi1: {
      Tensor gs = metric_tensor(params, g);
      const Tensor& sm = kind == CurvatureLikeKind::Pi1 ? gs : *s;
      if (kind == CurvatureLikeKind::Psi1) {
        if (s == nullptr) throw InputError("psi1 needs a symmetric (0,2) tensor");
        if (s->rank() != 2 || s->dim() != n) throw DimensionError("psi1 argument has the wrong shape");
        for (int a = 0; a < n; ++a) {
          for (int b = a + 1; b < n; ++b) {
            if (!((*s)(a, b) == (*s)(b, a))) throw InputError("psi1 needs a symmetric (0,2) tensor");
          }
        }
      }
      for_each_index(4, n, [&](std::span<const int> idx) {
        const int x = idx[0], y = idx[1], z = idx[2], w = idx[3];
        Scalar v = sm(x, w) * g(y, z) - sm(y, w) * g(x, z) + sm(y, z) * g(x, w) - sm(x, z) * g(y, w);
        if (kind == CurvatureLikeKind::Pi1) v *= Rational(1, 2);
        t.at(idx) = std::move(v);
      });
      break;
    }
    case CurvatureLikeKind::Pi2: {
      const RationalMatrix gt = associated_metric(setup.frame());
      for_each_index(4, n, [&](std::span<const int> idx) {
        const int x = idx[0], y = idx[1], z = idx[2], w = idx[3];
        t.at(idx) = Scalar(params, gt(y, z) * gt(x, w) - gt(x, z) * gt(y, w));
      });
      break;
    }
  }
  if (auto v = check_curvature_symmetries(t); !v) throw InternalInconsistencyError(v.describe());
  return CurvatureLike{kind, std::move(t)};
}

Scalar evaluate4(const Tensor& t, const ScalarVector& x, const ScalarVector& y, const ScalarVector& z,
                 const ScalarVector& w) {
  const int n = t.dim();
  for (const auto* v : {&x, &y, &z, &w}) {
    if (static_cast<int>(v->size()) != n) throw DimensionError("vector length does not match frame dimension");
  }
  Scalar total = Scalar::zero(t.params());
  for (int a = 0; a < n; ++a) {
    if (x[u(a)].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (y[u(b)].is_zero()) continue;
      const Scalar xy = x[u(a)] * y[u(b)];
      for (int c = 0; c < n; ++c) {
        if (z[u(c)].is_zero()) continue;
        const Scalar xyz = xy * z[u(c)];
        for (int d = 0; d < n; ++d) {
          if (w[u(d)].is_zero() || t(a, b, c, d).is_zero()) continue;
          total += xyz * w[u(d)] * t(a, b, c, d);
        }
      }
    }
  }
  return total;
}

SectionalCurvature sectional_curvature(const GeometrySetup& setup, const CurvatureTensor& r, const ScalarVector& x,
                                       const ScalarVector& y) {
  SectionalCurvature out{evaluate4(r.r, x, y, y, x), pi1_on_plane(setup, x, y), std::nullopt};
  if (out.denominator.is_zero()) throw DegeneratePlaneError("plane is degenerate: pi1(x, y, y, x) = 0");
  if (out.denominator.is_constant()) {
    out.value = out.numerator * (Rational(1) / out.denominator.constant_value());
  } else {
    out.value = exact_divide(out.numerator, out.denominator);
  }
  return out;
}

std::string to_string(PlaneType type) {
  switch (type) {
    case PlaneType::Holomorphic:
      return "holomorphic";
    case PlaneType::TotallyReal:
      return "totally-real";
    case PlaneType::Generic:
      return "generic";
  }
  return "generic";
}

PlaneType plane_type(const GeometrySetup& setup, const ScalarVector& x, const ScalarVector& y) {
  const auto xr = constant_entries(x);
  const auto yr = constant_entries(y);
  if (row_rank({xr, yr}) < 2) throw DegeneratePlaneError("x and y do not span a plane");
  const ScalarVector jx = apply_j(setup.frame(), x);
  const ScalarVector jy = apply_j(setup.frame(), y);
  if (row_rank({xr, yr, constant_entries(jx), constant_entries(jy)}) == 2) return PlaneType::Holomorphic;
  const auto& f = setup.frame();
  if (metric(f, jx, x).is_zero() && metric(f, jx, y).is_zero() && metric(f, jy, x).is_zero() &&
      metric(f, jy, y).is_zero()) {
    return PlaneType::TotallyReal;
  }
  return PlaneType::Generic;
}

TheoremAResult theorem_a_check(const GeometrySetup& setup, const CurvatureTensor& curv, const RicciData& ricci) {
  const int n = setup.dim();
  const int half = n / 2;
  const RationalMatrix& J = setup.frame().j();
  TheoremAResult out{Verdict::ok("constant holomorphic sectional curvature"),
                     (ricci.tau + ricci.tau_star_star) * Rational(1, 4 * half * half)};

  // rj[mask](i,j,k,l): R with J applied to the slots whose bit is set.
  std::array<std::optional<Tensor>, 16> rj;
  rj[0] = curv.r;
  for (int mask = 1; mask < 16; ++mask) {
    int slot = 3;
    while (!(mask & (1 << slot))) --slot;
    rj[u(mask)] = apply_j_slot(*rj[u(mask & ~(1 << slot))], J, slot);
  }
  const Tensor pi = curvature_like(CurvatureLikeKind::Pi1, setup).t + curvature_like(CurvatureLikeKind::Pi2, setup).t;
  const Scalar eight_h = out.h * Rational(8);

  for_each_index(4, n, [&](std::span<const int> idx) {
    if (!out.verdict) return;
    const int x = idx[0], y = idx[1], z = idx[2], w = idx[3];
    auto R = [&](int mask, int a, int b, int c, int d) -> const Scalar& { return (*rj[u(mask)])(a, b, c, d); };
    Scalar lhs = (R(0, x, y, z, w) + R(12, x, y, z, w) + R(3, x, y, z, w) + R(15, x, y, z, w)) * Rational(3);
    lhs -= R(3, y, z, x, w);   // R(Jy, Jz, x, u)
    lhs += R(3, x, z, y, w);   // R(Jx, Jz, y, u)
    lhs -= R(12, y, z, x, w);  // R(y, z, Jx, Ju)
    lhs += R(12, x, z, y, w);  // R(x, z, Jy, Ju)
    lhs -= R(9, x, z, y, w);   // R(Jx, z, y, Ju)
    lhs += R(9, y, z, x, w);   // R(Jy, z, x, Ju)
    lhs -= R(6, x, z, y, w);   // R(x, Jz, Jy, u)
    lhs += R(6, y, z, x, w);   // R(y, Jz, Jx, u)
    Scalar residual = lhs - eight_h * pi(x, y, z, w);
    if (!residual.is_zero()) out.verdict = Verdict::fail(out.verdict.check, {x, y, z, w}, residual);
  });
  return out;
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::NotApplicable:
      return "N/A";
  }
  return "N/A";
}

Theorem1Result theorem1_check(const GeometrySetup& setup, const Scalar& norm, const RicciData& ricci,
                              const ClassVerdict& classes, const TheoremAResult& theorem_a) {
  Theorem1Result out;
  out.constant_holomorphic = theorem_a.verdict.pass;
  if (!(classes.w2 || classes.w3)) return out;
  const int half = setup.dim() / 2;
  const Scalar eight_n2_h = theorem_a.h * Rational(8 * half * half);
  const Scalar two_taus = (ricci.tau + ricci.tau_star_star) * Rational(2);
  auto compare = [](const char* name, const Scalar& lhs, const Scalar& rhs) {
    Scalar r = lhs - rhs;
    return r.is_zero() ? Verdict::ok(name) : Verdict::fail(name, {}, r);
  };
  bool pass = true;
  if (classes.w2) {
    out.w2_norm_vs_h = compare("W2: |nabla J|^2 = 8 n^2 H", norm, eight_n2_h);
    out.w2_norm_vs_tau = compare("W2: |nabla J|^2 = 2 (tau + tau**)", norm, two_taus);
    pass = pass && out.w2_norm_vs_h->pass && out.w2_norm_vs_tau->pass;
  }
  if (classes.w3) {
    out.w3_norm_vs_h = compare("W3: |nabla J|^2 = -8 n^2 H", norm, -eight_n2_h);
    out.w3_norm_vs_tau = compare("W3: |nabla J|^2 = -2 (tau + tau**)", norm, -two_taus);
    pass = pass && out.w3_norm_vs_h->pass && out.w3_norm_vs_tau->pass;
  }
  out.status = pass ? CheckStatus::Pass : CheckStatus::Fail;
  return out;
}

Tensor weyl_tensor(const GeometrySetup& setup, const CurvatureTensor& curv, const RicciData& ricci) {
  const int n = setup.dim();
  if (n < 4) throw DimensionError("the Weyl tensor needs dimension at least 4");
  const int half = n / 2;
  const Tensor psi = curvature_like(CurvatureLikeKind::Psi1, setup, &ricci.rho).t;
  const Tensor pi1 = curvature_like(CurvatureLikeKind::Pi1, setup).t;
  Tensor bracket = psi - (ricci.tau * Rational(1, 2 * half - 1)) * pi1;
  Tensor w = curv.r - bracket * Rational(1, 2 * (half - 1));
  if (auto v = check_curvature_symmetries(w); !v) throw InternalInconsistencyError("Weyl tensor: " + v.describe());
  const Tensor trace = ricci_contraction(setup, w);
  if (!trace.is_zero()) throw InternalInconsistencyError("Weyl tensor has a nonzero Ricci contraction");
  // g^{jk} W_ijkl as well.
  const RationalMatrix& gi = setup.frame().g_inv();
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      Scalar v = Scalar::zero(setup.params());
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          if (gi(j, k) != 0) v += w(i, j, k, l) * gi(j, k);
        }
      }
      if (!v.is_zero()) throw InternalInconsistencyError("Weyl tensor has a nonzero (2,3) contraction");
    }
  }
  return w;
}

namespace {

std::optional<std::pair<Scalar, Scalar>> match_family(const GeometrySetup& setup) {
  if (!setup.on_paper_frame()) return std::nullopt;
  const Scalar& lambda = setup.algebra()(0, 1, 0);
  const Scalar& mu = setup.algebra()(0, 2, 1);
  if (!(paper_family_constants(lambda, mu) == setup.algebra().constants())) return std::nullopt;
  return std::make_pair(lambda, mu);
}

// Condition holds when every obstruction vanishes.
bool all_zero(const std::vector<Scalar>& obstructions) {
  for (const auto& s : obstructions) {
    if (!s.is_zero()) return false;
  }
  return true;
}

// Every obstruction is a rational multiple of d and at least one is nonzero.
bool vanishes_exactly_on(const std::vector<Scalar>& obstructions, const Scalar& d) {
  bool any_nonzero = false;
  for (const auto& s : obstructions) {
    if (s.is_zero()) continue;
    any_nonzero = true;
    auto q = exact_divide(s, d);
    if (!q || !q->is_constant()) return false;
  }
  return any_nonzero;
}

}  // namespace

Theorem4Report theorem4_battery(const GeometrySetup& setup) {
  const ConnectionTable conn = levi_civita(setup);
  const FTensor f = f_tensor(setup, conn);
  const CurvatureTensor curv = curvature_tensor(setup, conn);
  const RicciData ricci = ricci_and_scalars(setup, curv);
  const Scalar norm = nabla_j_square_norm(setup, f);
  const int half = setup.dim() / 2;
  const Scalar h = (ricci.tau + ricci.tau_star_star) * Rational(1, 4 * half * half);
  const Tensor w = setup.dim() >= 4 ? weyl_tensor(setup, curv, ricci) : Tensor(4, setup.dim(), setup.params());
  const Tensor psi = curvature_like(CurvatureLikeKind::Psi1, setup, &ricci.rho).t;
  const Tensor vi = curv.r - psi * Rational(1, 2);

  std::array<std::vector<Scalar>, 6> obstructions;
  obstructions[0] = {norm};
  obstructions[2] = {ricci.tau};
  obstructions[3] = {h};
  for (std::size_t k = 0; k < w.size(); ++k) obstructions[4].push_back(w.flat(k));
  for (std::size_t k = 0; k < vi.size(); ++k) obstructions[5].push_back(vi.flat(k));

  Theorem4Report report;
  const std::array<const char*, 6> names = {"(i) isotropic Kaehler: |nabla J|^2 = 0",
                                            "(ii) |lambda| = |mu|",
                                            "(iii) tau = 0",
                                            "(iv) zero holomorphic sectional curvature: H = 0",
                                            "(v) Weyl tensor vanishes",
                                            "(vi) R = psi1(rho) / 2"};
  for (std::size_t c = 0; c < 6; ++c) report.conditions[c].name = names[c];

  const auto family = match_family(setup);
  report.family = family.has_value();
  if (!family) {
    for (std::size_t c = 0; c < 6; ++c) {
      if (c == 1) {
        report.conditions[c].note = "only defined for the two-parameter family";
        continue;
      }
      report.conditions[c].holds = all_zero(obstructions[c]);
    }
    return report;
  }

  const auto& [lambda, mu] = *family;
  report.lambda = lambda;
  report.mu = mu;
  const Scalar d = lambda * lambda - mu * mu;
  report.symbolic = !(lambda.is_constant() && mu.is_constant());

  if (!report.symbolic || d.is_zero()) {
    bool abs_equal = d.is_zero();
    if (!report.symbolic) {
      abs_equal = abs(lambda.constant_value()) == abs(mu.constant_value());
      if (abs_equal != d.is_zero()) {
        throw InternalInconsistencyError("|lambda| = |mu| disagrees with lambda^2 - mu^2 = 0");
      }
    }
    report.conditions[1].holds = abs_equal;
    for (std::size_t c = 0; c < 6; ++c) {
      if (c != 1) report.conditions[c].holds = all_zero(obstructions[c]);
    }
    bool same = true;
    for (const auto& c : report.conditions) same = same && *c.holds == *report.conditions[0].holds;
    report.equivalent = same;
    return report;
  }

  bool all_tied = true;
  const std::string note = "vanishes exactly where " + to_string(d) + " = 0";
  for (std::size_t c = 0; c < 6; ++c) {
    if (c == 1) {
      report.conditions[c].note = "equivalent to " + to_string(d) + " = 0 over the reals";
      continue;
    }
    const bool tied = vanishes_exactly_on(obstructions[c], d);
    report.conditions[c].note = tied ? note : "not proportional to " + to_string(d);
    all_tied = all_tied && tied;
  }
  report.equivalent = all_tied;
  return report;
}

}  // namespace nordgeom
