#pragma once

#include <optional>
#include <vector>

#include "nordgeom/scalar.hpp"
#include "nordgeom/tensor.hpp"
#include "nordgeom/verdict.hpp"

namespace nordgeom {

using ScalarVector = std::vector<Scalar>;

// Square matrix of rationals; used for the metric, its inverse and J.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), Rational(0)) {}
  RationalMatrix(std::initializer_list<std::initializer_list<int>> rows);
  static RationalMatrix identity(int n);
  static RationalMatrix diagonal(const std::vector<Rational>& entries);

  int size() const { return n_; }
  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator-() const;
  RationalMatrix transpose() const;
  bool is_symmetric() const;
  // Gauss-Jordan over Q; nullopt when singular.
  std::optional<RationalMatrix> inverse() const;
  // Coefficients c_0..c_n of det(t*I - A), lowest degree first.
  std::vector<Rational> characteristic_polynomial() const;
  int rank() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

 private:
  int n_ = 0;
  std::vector<Rational> a_;
};

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

// Inertia of a symmetric rational matrix, read off the characteristic
// polynomial by Descartes' rule (exact because all roots are real).
Signature signature(const RationalMatrix& symmetric);

// Raw structure constants C[i][j][k] = C_ij^k, not yet validated.
class StructureConstants {
 public:
  StructureConstants(int dim, const ParamList& params) : c_(3, dim, params) {}
  explicit StructureConstants(Tensor c);

  int dim() const { return c_.dim(); }
  const ParamList& params() const { return c_.params(); }
  const Tensor& tensor() const { return c_; }

  const Scalar& operator()(int i, int j, int k) const { return c_(i, j, k); }
  // Sets C_ij^k = value and C_ji^k = -value.
  void set_bracket(int i, int j, int k, const Scalar& value);
  // Components of [X_i, X_j].
  ScalarVector bracket(int i, int j) const;

  StructureConstants substituted(const Assignment& assignment) const;

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) { return a.c_ == b.c_; }

 private:
  Tensor c_;
};

Verdict check_antisymmetry(const StructureConstants& c);

// Cyclic sum C_ij^k C_ks^l + C_js^k C_ki^l + C_si^k C_kj^l over all i<j<s
// and l; fails with the first (i, j, s, l) whose residual is nonzero.
Verdict check_jacobi(const StructureConstants& c);

// Structure constants that passed antisymmetry and Jacobi.
class LieAlgebra {
 public:
  // Throws ValidationError when either check fails.
  explicit LieAlgebra(StructureConstants c);

  int dim() const { return c_.dim(); }
  const ParamList& params() const { return c_.params(); }
  const StructureConstants& constants() const { return c_; }
  const Scalar& operator()(int i, int j, int k) const { return c_(i, j, k); }

 private:
  StructureConstants c_;
};

Verdict check_metric(const RationalMatrix& g);
// Metric check first, then J^2 = -Id, then g(JX_i, JX_j) = -g(X_i, X_j).
Verdict check_norden(const RationalMatrix& g, const RationalMatrix& j);

// Metric and almost complex structure on the frame. J(i, k) is the k-th
// component of J X_i.
class FrameStructure {
 public:
  // Throws ValidationError when check_norden fails.
  FrameStructure(RationalMatrix g, RationalMatrix j);

  int dim() const { return g_.size(); }
  const RationalMatrix& g() const { return g_; }
  const RationalMatrix& g_inv() const { return g_inv_; }
  const RationalMatrix& j() const { return j_; }

  friend bool operator==(const FrameStructure& a, const FrameStructure& b) { return a.g_ == b.g_ && a.j_ == b.j_; }

 private:
  RationalMatrix g_;
  RationalMatrix g_inv_;
  RationalMatrix j_;
};

// The validated (G, J, g) triple.
class GeometrySetup {
 public:
  GeometrySetup(LieAlgebra algebra, FrameStructure frame);

  int dim() const { return algebra_.dim(); }
  const ParamList& params() const { return algebra_.params(); }
  const LieAlgebra& algebra() const { return algebra_; }
  const FrameStructure& frame() const { return frame_; }
  // True when the frame is the 4-dimensional adapted frame JX1=X3, JX2=X4,
  // g = diag(1, 1, -1, -1).
  bool on_paper_frame() const;

 private:
  LieAlgebra algebra_;
  FrameStructure frame_;
};

// Frame vector X_i as a coefficient vector.
ScalarVector basis_vector(const ParamList& params, int dim, int i);

ScalarVector bracket(const GeometrySetup& setup, const ScalarVector& x, const ScalarVector& y);
ScalarVector apply_j(const FrameStructure& frame, const ScalarVector& x);
Scalar metric(const FrameStructure& frame, const ScalarVector& x, const ScalarVector& y);

// g~(x, y) = g(x, Jy).
RationalMatrix associated_metric(const FrameStructure& frame);

ScalarVector raise_index(const FrameStructure& frame, const ScalarVector& covector);
ScalarVector lower_index(const FrameStructure& frame, const ScalarVector& vector);

// The adapted 4-frame: JX1 = X3, JX2 = X4, JX3 = -X1, JX4 = -X2 with
// g(X1,X1) = g(X2,X2) = -g(X3,X3) = -g(X4,X4) = 1.
FrameStructure paper_frame();

// The two-parameter solvable family on the adapted 4-frame:
//   [X1,X2] = l X1 - l X2    [X1,X3] = m X2 + l X4    [X1,X4] = m X2 + l X3
//   [X2,X3] = m X1 + l X4    [X2,X4] = m X1 + l X3    [X3,X4] = -m X3 + m X4
StructureConstants paper_family_constants(const Scalar& lambda, const Scalar& mu);

}  // namespace nordgeom
