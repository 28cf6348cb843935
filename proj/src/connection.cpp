#include "nordgeom/connection.hpp"

#include <array>
#include <string>

namespace nordgeom {

namespace {

using Vec = ScalarVector;

std::size_t u(int i) { return static_cast<std::size_t>(i); }

Vec zeros(const GeometrySetup& s) { return Vec(u(s.dim()), Scalar::zero(s.params())); }

// Components of J v.
Vec j_of(const GeometrySetup& s, const Vec& v) { return apply_j(s.frame(), v); }

// [X_i, J X_j].
Vec bracket_x_jx(const GeometrySetup& s, int i, int j) {
  Vec out = zeros(s);
  for (int a = 0; a < s.dim(); ++a) {
    const Rational& w = s.frame().j()(j, a);
    if (w == 0) continue;
    for (int p = 0; p < s.dim(); ++p) out[u(p)] += s.algebra()(i, a, p) * w;
  }
  return out;
}

// [J X_i, X_j].
Vec bracket_jx_x(const GeometrySetup& s, int i, int j) {
  Vec out = zeros(s);
  for (int a = 0; a < s.dim(); ++a) {
    const Rational& w = s.frame().j()(i, a);
    if (w == 0) continue;
    for (int p = 0; p < s.dim(); ++p) out[u(p)] += s.algebra()(a, j, p) * w;
  }
  return out;
}

// [J X_i, J X_j].
Vec bracket_jx_jx(const GeometrySetup& s, int i, int j) {
  Vec out = zeros(s);
  for (int a = 0; a < s.dim(); ++a) {
    const Rational& wa = s.frame().j()(i, a);
    if (wa == 0) continue;
    for (int b = 0; b < s.dim(); ++b) {
      const Rational wb = wa * s.frame().j()(j, b);
      if (wb == 0) continue;
      for (int p = 0; p < s.dim(); ++p) out[u(p)] += s.algebra()(a, b, p) * wb;
    }
  }
  return out;
}

// g(v, X_k).
Scalar g_with_basis(const GeometrySetup& s, const Vec& v, int k) {
  Scalar r = Scalar::zero(s.params());
  for (int p = 0; p < s.dim(); ++p) {
    const Rational& w = s.frame().g()(p, k);
    if (w != 0) r += v[u(p)] * w;
  }
  return r;
}

Vec sub(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

// (nabla_i gamma)-lowered: g(nabla_i X_j, X_k).
Tensor lowered_connection(const GeometrySetup& s, const ConnectionTable& conn) {
  const int n = s.dim();
  Tensor low(3, n, s.params());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Scalar v = Scalar::zero(s.params());
        for (int m = 0; m < n; ++m) {
          const Rational& w = s.frame().g()(m, k);
          if (w != 0) v += conn.gamma(i, j, m) * w;
        }
        low(i, j, k) = std::move(v);
      }
    }
  }
  return low;
}

const Scalar& c1(const GeometrySetup& s, int i, int j, int k) { return s.algebra()(i - 1, j - 1, k - 1); }

}  // namespace

ConnectionTable levi_civita(const GeometrySetup& setup) {
  const int n = setup.dim();
  const ParamList& params = setup.params();
  // gb(a, b, c) = g([X_a, X_b], X_c)
  Tensor gb(3, n, params);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Vec br = setup.algebra().constants().bracket(a, b);
      for (int c = 0; c < n; ++c) gb(a, b, c) = g_with_basis(setup, br, c);
    }
  }
  const Rational half(1, 2);
  Tensor low(3, n, params);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) low(i, j, k) = (gb(i, j, k) + gb(k, i, j) + gb(k, j, i)) * half;
    }
  }
  ConnectionTable conn{Tensor(3, n, params)};
  const RationalMatrix& gi = setup.frame().g_inv();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Scalar v = Scalar::zero(params);
        for (int m = 0; m < n; ++m) {
          if (gi(m, k) != 0) v += low(i, j, m) * gi(m, k);
        }
        conn.gamma(i, j, k) = std::move(v);
      }
    }
  }
  if (auto v = check_torsion_free(setup, conn); !v) throw InternalInconsistencyError(v.describe());
  if (auto v = check_metric_compatible(setup, conn); !v) throw InternalInconsistencyError(v.describe());
  return conn;
}

Verdict check_torsion_free(const GeometrySetup& setup, const ConnectionTable& conn) {
  const int n = setup.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Scalar r = conn.gamma(i, j, k) - conn.gamma(j, i, k) - setup.algebra()(i, j, k);
        if (!r.is_zero()) return Verdict::fail("torsion-free", {i, j, k}, r);
      }
    }
  }
  return Verdict::ok("torsion-free");
}

Verdict check_metric_compatible(const GeometrySetup& setup, const ConnectionTable& conn) {
  const int n = setup.dim();
  const Tensor low = lowered_connection(setup, conn);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        Scalar r = low(i, j, k) + low(i, k, j);
        if (!r.is_zero()) return Verdict::fail("metric-compatible", {i, j, k}, r);
      }
    }
  }
  return Verdict::ok("metric-compatible");
}

Tensor f_from_brackets(const GeometrySetup& setup) {
  const int n = setup.dim();
  const Rational half(1, 2);
  Tensor f(3, n, setup.params());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // [X_i, JX_j] - J[X_i, X_j]
      const Vec a = sub(bracket_x_jx(setup, i, j), j_of(setup, setup.algebra().constants().bracket(i, j)));
      for (int k = 0; k < n; ++k) {
        // J[X_k, X_i] - [JX_k, X_i]
        const Vec b = sub(j_of(setup, setup.algebra().constants().bracket(k, i)), bracket_jx_x(setup, k, i));
        // [X_k, JX_j] - [JX_k, X_j]
        const Vec c = sub(bracket_x_jx(setup, k, j), bracket_jx_x(setup, k, j));
        f(i, j, k) = (g_with_basis(setup, a, k) + g_with_basis(setup, b, j) + g_with_basis(setup, c, i)) * half;
      }
    }
  }
  return f;
}

Tensor f_from_connection(const GeometrySetup& setup, const ConnectionTable& conn) {
  const int n = setup.dim();
  const RationalMatrix& J = setup.frame().j();
  Tensor f(3, n, setup.params());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // (nabla_i J) X_j = nabla_i (J X_j) - J (nabla_i X_j)
      Vec v = zeros(setup);
      for (int a = 0; a < n; ++a) {
        if (J(j, a) != 0) {
          for (int p = 0; p < n; ++p) v[u(p)] += conn.gamma(i, a, p) * J(j, a);
        }
        const Scalar& gij = conn.gamma(i, j, a);
        if (gij.is_zero()) continue;
        for (int p = 0; p < n; ++p) {
          if (J(a, p) != 0) v[u(p)] -= gij * J(a, p);
        }
      }
      for (int k = 0; k < n; ++k) f(i, j, k) = g_with_basis(setup, v, k);
    }
  }
  return f;
}

Verdict check_f_symmetries(const GeometrySetup& setup, const Tensor& f) {
  const int n = setup.dim();
  const RationalMatrix& J = setup.frame().j();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Scalar r = f(i, j, k) - f(i, k, j);
        if (!r.is_zero()) return Verdict::fail("F(x,y,z)=F(x,z,y)", {i, j, k}, r);
        Scalar fj = Scalar::zero(setup.params());
        for (int a = 0; a < n; ++a) {
          if (J(j, a) == 0) continue;
          for (int b = 0; b < n; ++b) {
            if (J(k, b) != 0) fj += f(i, a, b) * (J(j, a) * J(k, b));
          }
        }
        r = f(i, j, k) - fj;
        if (!r.is_zero()) return Verdict::fail("F(x,y,z)=F(x,Jy,Jz)", {i, j, k}, r);
      }
    }
  }
  return Verdict::ok("F symmetries");
}

FTensor f_tensor(const GeometrySetup& setup, const ConnectionTable& conn) {
  Tensor a = f_from_brackets(setup);
  const Tensor b = f_from_connection(setup, conn);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a.flat(k) == b.flat(k))) {
      throw InternalInconsistencyError("F from brackets differs from F via nabla J at (" + index_key(a.index_of(k)) +
                                       "): " + to_string(a.flat(k)) + " vs " + to_string(b.flat(k)));
    }
  }
  if (auto v = check_f_symmetries(setup, a); !v) throw InternalInconsistencyError(v.describe());
  return FTensor{std::move(a)};
}

Tensor nijenhuis(const GeometrySetup& setup) {
  const int n = setup.dim();
  Tensor out(3, n, setup.params());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec v = sub(bracket_jx_jx(setup, i, j), setup.algebra().constants().bracket(i, j));
      v = sub(v, j_of(setup, bracket_jx_x(setup, i, j)));
      v = sub(v, j_of(setup, bracket_x_jx(setup, i, j)));
      for (int k = 0; k < n; ++k) out(i, j, k) = std::move(v[u(k)]);
    }
  }
  if (setup.on_paper_frame()) {
    const Tensor closed = nijenhuis_components_adapted(setup);
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (!(out.flat(k) == closed.flat(k))) {
        throw InternalInconsistencyError("Nijenhuis tensor disagrees with closed component formula at (" +
                                         index_key(out.index_of(k)) + ")");
      }
    }
  }
  return out;
}

Tensor nijenhuis_components_adapted(const GeometrySetup& s) {
  if (!s.on_paper_frame()) throw DimensionError("closed Nijenhuis formulas need the adapted 4-frame");
  const std::array<Scalar, 4> n12 = {
      c1(s, 3, 4, 1) - c1(s, 1, 2, 1) - c1(s, 2, 3, 3) + c1(s, 1, 4, 3),
      c1(s, 3, 4, 2) - c1(s, 1, 2, 2) - c1(s, 2, 3, 4) + c1(s, 1, 4, 4),
      c1(s, 3, 4, 3) - c1(s, 1, 2, 3) + c1(s, 2, 3, 1) - c1(s, 1, 4, 1),
      c1(s, 3, 4, 4) - c1(s, 1, 2, 4) + c1(s, 2, 3, 2) - c1(s, 1, 4, 2),
  };
  // X_a = J^{power[a]} X_{base[a]}: X1, X2, JX1, JX2.
  constexpr std::array<int, 4> base = {0, 1, 0, 1};
  constexpr std::array<int, 4> power = {0, 0, 1, 1};
  Tensor out(3, 4, s.params());
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (base[u(a)] == base[u(b)]) continue;
      // N(J^p x, J^q y) = (-J)^{p+q} N(x, y); N(X2, X1) = -N(X1, X2).
      Vec v(n12.begin(), n12.end());
      if (base[u(a)] == 1) {
        for (auto& x : v) x = -x;
      }
      for (int t = 0; t < power[u(a)] + power[u(b)]; ++t) {
        v = j_of(s, v);
        for (auto& x : v) x = -x;
      }
      for (int k = 0; k < 4; ++k) out(a, b, k) = std::move(v[u(k)]);
    }
  }
  return out;
}

LieForms lie_forms(const GeometrySetup& setup, const FTensor& f) {
  const int n = setup.dim();
  const RationalMatrix& gi = setup.frame().g_inv();
  LieForms forms{zeros(setup), zeros(setup)};
  for (int x = 0; x < n; ++x) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (gi(i, j) != 0) forms.theta[u(x)] += f.f(i, j, x) * gi(i, j);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Rational& w = setup.frame().j()(i, k);
      if (w != 0) forms.theta_star[u(i)] += forms.theta[u(k)] * w;
    }
  }
  if (setup.on_paper_frame()) {
    const Vec closed = theta_components_adapted(setup);
    for (int i = 0; i < n; ++i) {
      if (!(closed[u(i)] == forms.theta[u(i)])) {
        throw InternalInconsistencyError("theta_" + std::to_string(i + 1) +
                                         " disagrees with closed component formula: " + to_string(forms.theta[u(i)]) +
                                         " vs " + to_string(closed[u(i)]));
      }
    }
  }
  return forms;
}

ScalarVector theta_components_adapted(const GeometrySetup& s) {
  if (!s.on_paper_frame()) throw DimensionError("closed theta formulas need the adapted 4-frame");
  const Rational two(2);
  return {
      c1(s, 1, 3, 1) * two - c1(s, 1, 2, 4) + c1(s, 1, 4, 2) + c1(s, 2, 3, 2) - c1(s, 3, 4, 4),
      c1(s, 2, 4, 2) * two + c1(s, 1, 2, 3) + c1(s, 1, 4, 1) + c1(s, 2, 3, 1) + c1(s, 3, 4, 3),
      c1(s, 1, 3, 3) * two + c1(s, 1, 2, 2) + c1(s, 1, 4, 4) + c1(s, 2, 3, 4) + c1(s, 3, 4, 2),
      c1(s, 2, 4, 4) * two - c1(s, 1, 2, 1) + c1(s, 1, 4, 3) + c1(s, 2, 3, 3) - c1(s, 3, 4, 1),
  };
}

ClassVerdict classify(const GeometrySetup& setup, const FTensor& ft, const LieForms& forms) {
  const int n = setup.dim();
  const Tensor& f = ft.f;
  const RationalMatrix& J = setup.frame().j();
  const RationalMatrix& g = setup.frame().g();
  const ParamList& params = setup.params();

  // fj(i, j, k) = F(X_i, X_j, J X_k)
  Tensor fj(3, n, params);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int a = 0; a < n; ++a) {
          if (J(k, a) != 0) fj(i, j, k) += f(i, j, a) * J(k, a);
        }
      }
    }
  }
  const RationalMatrix gt = associated_metric(setup.frame());
  // theta(J X_k)
  const Vec& theta = forms.theta;
  const Vec& theta_j = forms.theta_star;
  const Rational inv2n(1, n);

  ClassVerdict cv;
  cv.w0_check = Verdict::ok("W0: F = 0");
  cv.w1_check = Verdict::ok("W1");
  cv.w2_check = Verdict::ok("W2: cyclic F(x,y,Jz) = 0, theta = 0");
  cv.w3_check = Verdict::ok("W3: cyclic F(x,y,z) = 0");
  for (int i = 0; i < n && cv.w0_check; ++i) {
    for (int j = 0; j < n && cv.w0_check; ++j) {
      for (int k = 0; k < n && cv.w0_check; ++k) {
        if (!f(i, j, k).is_zero()) cv.w0_check = Verdict::fail(cv.w0_check.check, {i, j, k}, f(i, j, k));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (cv.w3_check) {
          Scalar r = f(i, j, k) + f(j, k, i) + f(k, i, j);
          if (!r.is_zero()) cv.w3_check = Verdict::fail(cv.w3_check.check, {i, j, k}, r);
        }
        if (cv.w2_check) {
          Scalar r = fj(i, j, k) + fj(j, k, i) + fj(k, i, j);
          if (!r.is_zero()) cv.w2_check = Verdict::fail(cv.w2_check.check, {i, j, k}, r);
        }
        if (cv.w1_check) {
          // 1/(2n) [g(x,y) theta(z) + g(x,z) theta(y) + g(x,Jy) theta(Jz) + g(x,Jz) theta(Jy)]
          Scalar rhs = theta[u(k)] * g(i, j) + theta[u(j)] * g(i, k) + theta_j[u(k)] * gt(i, j) +
                       theta_j[u(j)] * gt(i, k);
          Scalar r = f(i, j, k) - rhs * inv2n;
          if (!r.is_zero()) cv.w1_check = Verdict::fail(cv.w1_check.check, {i, j, k}, r);
        }
      }
    }
  }
  if (cv.w2_check) {
    for (int i = 0; i < n; ++i) {
      if (!theta[u(i)].is_zero()) {
        cv.w2_check = Verdict::fail(cv.w2_check.check, {i}, theta[u(i)], "theta != 0");
        break;
      }
    }
  }
  cv.w0 = cv.w0_check.pass;
  cv.w1 = cv.w1_check.pass;
  cv.w2 = cv.w2_check.pass;
  cv.w3 = cv.w3_check.pass;

  cv.integrability = Verdict::ok("W2 implies N = 0");
  if (cv.w2) {
    const Tensor nij = nijenhuis(setup);
    for (std::size_t k = 0; k < nij.size(); ++k) {
      if (!nij.flat(k).is_zero()) {
        cv.integrability = Verdict::fail(cv.integrability.check, nij.index_of(k), nij.flat(k));
        break;
      }
    }
  }
  return cv;
}

Scalar nabla_j_square_norm(const GeometrySetup& setup, const FTensor& ft) {
  const int n = setup.dim();
  const RationalMatrix& gi = setup.frame().g_inv();
  const Tensor& f = ft.f;
  // Raise all three indices of F, then contract with F.
  Tensor raised = f;
  for (int slot = 0; slot < 3; ++slot) {
    Tensor next(3, n, setup.params());
    for_each_index(3, n, [&](std::span<const int> idx) {
      std::array<int, 3> src = {idx[0], idx[1], idx[2]};
      Scalar v = Scalar::zero(setup.params());
      for (int a = 0; a < n; ++a) {
        const Rational& w = gi(idx[u(slot)], a);
        if (w == 0) continue;
        src[u(slot)] = a;
        v += raised.at(src) * w;
      }
      next.at(idx) = std::move(v);
    });
    raised = std::move(next);
  }
  Scalar total = Scalar::zero(setup.params());
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!f.flat(k).is_zero() && !raised.flat(k).is_zero()) total += f.flat(k) * raised.flat(k);
  }
  return total;
}

Verdict w2_condition_check(const LieAlgebra& algebra) {
  if (algebra.dim() != 4) throw DimensionError("the W2 conditions are stated for 4-dimensional algebras");
  auto c = [&](int i, int j, int k) -> const Scalar& { return algebra(i - 1, j - 1, k - 1); };
  struct Equation {
    Scalar lhs;
    Scalar rhs;
    const char* text;
  };
  const std::array<Equation, 8> eqs = {{
      {c(1, 3, 1), c(1, 2, 4) - c(2, 3, 2), "C13^1 = C12^4 - C23^2"},
      {c(1, 2, 4) - c(2, 3, 2), c(3, 4, 4) - c(1, 4, 2), "C12^4 - C23^2 = C34^4 - C14^2"},
      {c(1, 3, 3), -(c(1, 2, 2) + c(2, 3, 4)), "C13^3 = -(C12^2 + C23^4)"},
      {-(c(1, 2, 2) + c(2, 3, 4)), -(c(1, 4, 4) + c(3, 4, 2)), "-(C12^2 + C23^4) = -(C14^4 + C34^2)"},
      {c(2, 4, 4), c(1, 2, 1) - c(1, 4, 3), "C24^4 = C12^1 - C14^3"},
      {c(1, 2, 1) - c(1, 4, 3), c(3, 4, 1) - c(2, 3, 3), "C12^1 - C14^3 = C34^1 - C23^3"},
      {c(2, 4, 2), -(c(1, 2, 3) + c(1, 4, 1)), "C24^2 = -(C12^3 + C14^1)"},
      {-(c(1, 2, 3) + c(1, 4, 1)), -(c(2, 3, 1) + c(3, 4, 3)), "-(C12^3 + C14^1) = -(C23^1 + C34^3)"},
  }};
  for (int e = 0; e < 8; ++e) {
    const auto& eq = eqs[u(e)];
    Scalar r = eq.lhs - eq.rhs;
    if (!r.is_zero()) return Verdict::fail("W2 structure-constant conditions", {e}, r, eq.text);
  }
  return Verdict::ok("W2 structure-constant conditions");
}

}  // namespace nordgeom
