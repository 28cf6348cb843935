#pragma once

#include <array>
#include <optional>
#include <string>

#include "nordgeom/connection.hpp"
#include "nordgeom/frame_algebra.hpp"
#include "nordgeom/tensor.hpp"
#include "nordgeom/verdict.hpp"

namespace nordgeom {

// R(i, j, k, l) = g(R(X_i, X_j) X_k, X_l) with
//   R(x, y) z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z.
// Textbooks differ on this sign; every formula in this library uses it.
struct CurvatureTensor {
  Tensor r;
};

struct RicciData {
  Tensor rho;
  Scalar tau;
  Scalar tau_star;
  Scalar tau_star_star;
};

enum class CurvatureLikeKind { Psi1, Pi1, Pi2 };

struct CurvatureLike {
  CurvatureLikeKind kind;
  Tensor t;
};

// Riemann symmetries T(x,y,z,u) = -T(y,x,z,u) = -T(x,y,u,z) = T(z,u,x,y)
// and the first Bianchi identity, entry-wise.
Verdict check_curvature_symmetries(const Tensor& t);

// Throws InternalInconsistencyError if the symmetry suite fails.
CurvatureTensor curvature_tensor(const GeometrySetup& setup, const ConnectionTable& conn);

// rho(y, z) = g^{ij} T(e_i, y, z, e_j).
Tensor ricci_contraction(const GeometrySetup& setup, const Tensor& t);

// rho, tau = g^{ij} rho_ij, tau* = g^{ij} rho(e_i, J e_j),
// tau** = g^{il} g^{jk} R(e_i, e_j, J e_k, J e_l).
RicciData ricci_and_scalars(const GeometrySetup& setup, const CurvatureTensor& r);

// psi1(S)(x,y,z,u) = g(y,z)S(x,u) - g(x,z)S(y,u) + g(x,u)S(y,z) - g(y,u)S(x,z),
// pi1 = psi1(g) / 2, pi2(x,y,z,u) = g(y,Jz)g(x,Ju) - g(x,Jz)g(y,Ju).
// `s` is required (and must be symmetric) for Psi1 only.
CurvatureLike curvature_like(CurvatureLikeKind kind, const GeometrySetup& setup, const Tensor* s = nullptr);

// T(x, y, z, u) for coefficient vectors.
Scalar evaluate4(const Tensor& t, const ScalarVector& x, const ScalarVector& y, const ScalarVector& z,
                 const ScalarVector& u);

struct SectionalCurvature {
  Scalar numerator;    // R(x, y, y, x)
  Scalar denominator;  // pi1(x, y, y, x)
  // Present when the denominator is a nonzero constant or divides the
  // numerator exactly.
  std::optional<Scalar> value;
};

// Throws DegeneratePlaneError when pi1(x, y, y, x) is the zero Scalar.
SectionalCurvature sectional_curvature(const GeometrySetup& setup, const CurvatureTensor& r, const ScalarVector& x,
                                       const ScalarVector& y);

enum class PlaneType { Holomorphic, TotallyReal, Generic };
std::string to_string(PlaneType type);

// Vectors must have constant entries. Throws DegeneratePlaneError when x
// and y are linearly dependent; isotropic planes are classified normally.
PlaneType plane_type(const GeometrySetup& setup, const ScalarVector& x, const ScalarVector& y);

struct TheoremAResult {
  Verdict verdict;
  // (tau + tau**) / (4 n^2); the holomorphic sectional curvature when the
  // verdict passes.
  Scalar h;
};

// Pointwise constant holomorphic sectional curvature test: the twelve-term
// J-symmetrisation of R must equal 8 H (pi1 + pi2) for every index 4-tuple.
TheoremAResult theorem_a_check(const GeometrySetup& setup, const CurvatureTensor& r, const RicciData& ricci);

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string to_string(CheckStatus status);

// The relations are evaluated with H from the trace formula whenever the
// class is W2 or W3. `constant_holomorphic` records whether the constancy
// hypothesis itself holds.
struct Theorem1Result {
  CheckStatus status = CheckStatus::NotApplicable;
  bool constant_holomorphic = false;
  // Per class: ||nabla J||^2 = +-8 n^2 H and ||nabla J||^2 = +-2 (tau + tau**).
  std::optional<Verdict> w2_norm_vs_h;
  std::optional<Verdict> w2_norm_vs_tau;
  std::optional<Verdict> w3_norm_vs_h;
  std::optional<Verdict> w3_norm_vs_tau;
};

Theorem1Result theorem1_check(const GeometrySetup& setup, const Scalar& norm, const RicciData& ricci,
                              const ClassVerdict& classes, const TheoremAResult& theorem_a);

// W = R - 1/(2(n-1)) { psi1(rho) - tau/(2n-1) pi1 }. Verifies the curvature
// symmetries and that the Ricci contraction of W vanishes. dim >= 4.
Tensor weyl_tensor(const GeometrySetup& setup, const CurvatureTensor& r, const RicciData& ricci);

struct Theorem4Condition {
  std::string name;
  // nullopt in symbolic mode, where the condition is reported as
  // "holds iff lambda^2 = mu^2" through `note`.
  std::optional<bool> holds;
  std::string note;
};

struct Theorem4Report {
  // Input is the two-parameter family on the adapted frame.
  bool family = false;
  bool symbolic = false;
  std::optional<Scalar> lambda;
  std::optional<Scalar> mu;
  // (i) ||nabla J||^2 = 0, (ii) |lambda| = |mu|, (iii) tau = 0, (iv) H = 0,
  // (v) W = 0, (vi) R = psi1(rho) / 2.
  std::array<Theorem4Condition, 6> conditions;
  // Family inputs only: the six conditions agree (numeric) or all vanish
  // exactly on lambda^2 = mu^2 (symbolic).
  std::optional<bool> equivalent;
};

Theorem4Report theorem4_battery(const GeometrySetup& setup);

}  // namespace nordgeom
