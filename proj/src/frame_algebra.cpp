#include "nordgeom/frame_algebra.hpp"

#include <sstream>

namespace nordgeom {

std::string Verdict::describe() const {
  std::ostringstream out;
  out << check << ": " << (pass ? "PASS" : "FAIL");
  if (!pass) {
    if (!witness.empty()) {
      out << " at (";
      for (std::size_t i = 0; i < witness.size(); ++i) out << (i ? "," : "") << witness[i];
      out << ")";
    }
    if (residual) out << " residual " << to_string(*residual);
    if (!detail.empty()) out << " [" << detail << "]";
  }
  return out.str();
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : RationalMatrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw DimensionError("matrix rows must have equal length");
    int j = 0;
    for (int v : row) (*this)(i, j++) = v;
    ++i;
  }
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& entries) {
  RationalMatrix m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.n_; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (n_ != other.n_) throw DimensionError("matrix sizes differ");
  RationalMatrix r(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      Rational s(0);
      for (int k = 0; k < n_; ++k) s += (*this)(i, k) * other(k, j);
      r(i, j) = s;
    }
  }
  return r;
}

RationalMatrix RationalMatrix::operator-() const {
  RationalMatrix r(*this);
  for (auto& v : r.a_) v = -v;
  return r;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix r(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

bool RationalMatrix::is_symmetric() const { return *this == transpose(); }

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  RationalMatrix a(*this);
  RationalMatrix inv = identity(n_);
  for (int col = 0; col < n_; ++col) {
    int pivot = col;
    while (pivot < n_ && a(pivot, col) == 0) ++pivot;
    if (pivot == n_) return std::nullopt;
    if (pivot != col) {
      for (int k = 0; k < n_; ++k) {
        std::swap(a(pivot, k), a(col, k));
        std::swap(inv(pivot, k), inv(col, k));
      }
    }
    const Rational p = a(col, col);
    for (int k = 0; k < n_; ++k) {
      a(col, k) /= p;
      inv(col, k) /= p;
    }
    for (int row = 0; row < n_; ++row) {
      if (row == col || a(row, col) == 0) continue;
      const Rational f = a(row, col);
      for (int k = 0; k < n_; ++k) {
        a(row, k) -= f * a(col, k);
        inv(row, k) -= f * inv(col, k);
      }
    }
  }
  return inv;
}

int RationalMatrix::rank() const {
  RationalMatrix a(*this);
  int rank = 0;
  for (int col = 0; col < n_ && rank < n_; ++col) {
    int pivot = rank;
    while (pivot < n_ && a(pivot, col) == 0) ++pivot;
    if (pivot == n_) continue;
    for (int k = 0; k < n_; ++k) std::swap(a(pivot, k), a(rank, k));
    for (int row = rank + 1; row < n_; ++row) {
      if (a(row, col) == 0) continue;
      const Rational f = a(row, col) / a(rank, col);
      for (int k = 0; k < n_; ++k) a(row, k) -= f * a(rank, k);
    }
    ++rank;
  }
  return rank;
}

std::vector<Rational> RationalMatrix::characteristic_polynomial() const {
  // Faddeev-LeVerrier.
  std::vector<Rational> c(static_cast<std::size_t>(n_ + 1), Rational(0));
  c[static_cast<std::size_t>(n_)] = 1;
  RationalMatrix m(n_);
  for (int k = 1; k <= n_; ++k) {
    RationalMatrix next = (*this) * m;
    for (int i = 0; i < n_; ++i) next(i, i) += c[static_cast<std::size_t>(n_ - k + 1)];
    m = next;
    RationalMatrix am = (*this) * m;
    Rational trace(0);
    for (int i = 0; i < n_; ++i) trace += am(i, i);
    c[static_cast<std::size_t>(n_ - k)] = -trace / k;
  }
  return c;
}

namespace {

int sign_changes(const std::vector<Rational>& coeffs) {
  int changes = 0;
  int last = 0;
  for (const auto& c : coeffs) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Signature signature(const RationalMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw DimensionError("signature requires a symmetric matrix");
  auto c = symmetric.characteristic_polynomial();
  Signature sig;
  std::size_t lowest = 0;
  while (lowest < c.size() && c[lowest] == 0) ++lowest;
  sig.zero = static_cast<int>(lowest);
  std::vector<Rational> trimmed(c.begin() + static_cast<std::ptrdiff_t>(lowest), c.end());
  sig.positive = sign_changes(trimmed);
  for (std::size_t k = 0; k < trimmed.size(); ++k) {
    if (k % 2 == 1) trimmed[k] = -trimmed[k];
  }
  sig.negative = sign_changes(trimmed);
  return sig;
}

StructureConstants::StructureConstants(Tensor c) : c_(std::move(c)) {
  if (c_.rank() != 3) throw DimensionError("structure constants must have rank 3");
}

void StructureConstants::set_bracket(int i, int j, int k, const Scalar& value) {
  if (i == j && !value.is_zero()) throw InputError("[X_i, X_i] must vanish");
  c_(i, j, k) = value;
  c_(j, i, k) = -value;
}

ScalarVector StructureConstants::bracket(int i, int j) const {
  ScalarVector v;
  v.reserve(static_cast<std::size_t>(dim()));
  for (int k = 0; k < dim(); ++k) v.push_back(c_(i, j, k));
  return v;
}

StructureConstants StructureConstants::substituted(const Assignment& assignment) const {
  return StructureConstants(c_.substituted(assignment));
}

Verdict check_antisymmetry(const StructureConstants& c) {
  const int n = c.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Scalar residual = c(i, j, k) + c(j, i, k);
        if (!residual.is_zero()) return Verdict::fail("antisymmetry", {i, j, k}, residual);
      }
    }
  }
  return Verdict::ok("antisymmetry");
}

Verdict check_jacobi(const StructureConstants& c) {
  const int n = c.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int s = j + 1; s < n; ++s) {
        for (int l = 0; l < n; ++l) {
          Scalar sum = Scalar::zero(c.params());
          for (int k = 0; k < n; ++k) {
            sum += c(i, j, k) * c(k, s, l);
            sum += c(j, s, k) * c(k, i, l);
            sum += c(s, i, k) * c(k, j, l);
          }
          if (!sum.is_zero()) return Verdict::fail("jacobi", {i, j, s, l}, sum);
        }
      }
    }
  }
  return Verdict::ok("jacobi");
}

LieAlgebra::LieAlgebra(StructureConstants c) : c_(std::move(c)) {
  if (c_.dim() <= 0 || c_.dim() % 2 != 0) throw DimensionError("frame dimension must be even and positive");
  if (auto v = check_antisymmetry(c_); !v) throw ValidationError(v);
  if (auto v = check_jacobi(c_); !v) throw ValidationError(v);
}

Verdict check_metric(const RationalMatrix& g) {
  for (int i = 0; i < g.size(); ++i) {
    for (int j = i + 1; j < g.size(); ++j) {
      if (g(i, j) != g(j, i)) {
        return Verdict::fail("metric", {i, j}, Scalar(ParamList{}, g(i, j) - g(j, i)), "metric not symmetric");
      }
    }
  }
  if (!g.inverse()) return Verdict::fail("metric", {}, std::nullopt, "metric is singular");
  return Verdict::ok("metric");
}

Verdict check_norden(const RationalMatrix& g, const RationalMatrix& j) {
  if (g.size() != j.size()) throw DimensionError("metric and J sizes differ");
  if (auto v = check_metric(g); !v) return v;
  const int n = g.size();
  const RationalMatrix jj = j * j;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Rational expected = a == b ? Rational(-1) : Rational(0);
      if (jj(a, b) != expected) {
        return Verdict::fail("norden", {a, b}, Scalar(ParamList{}, jj(a, b) - expected), "J^2 != -Id");
      }
    }
  }
  // g(JX_a, JX_b) = sum_pq J[a][p] J[b][q] g[p][q] = (J g J^T)[a][b].
  const RationalMatrix gj = j * g * j.transpose();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (gj(a, b) != -g(a, b)) {
        return Verdict::fail("norden", {a, b}, Scalar(ParamList{}, gj(a, b) + g(a, b)),
                             "g(JX_i, JX_j) != -g(X_i, X_j)");
      }
    }
  }
  return Verdict::ok("norden");
}

FrameStructure::FrameStructure(RationalMatrix g, RationalMatrix j) : g_(std::move(g)), j_(std::move(j)) {
  if (g_.size() <= 0 || g_.size() % 2 != 0) throw DimensionError("frame dimension must be even and positive");
  if (auto v = check_norden(g_, j_); !v) throw ValidationError(v);
  g_inv_ = *g_.inverse();
}

GeometrySetup::GeometrySetup(LieAlgebra algebra, FrameStructure frame)
    : algebra_(std::move(algebra)), frame_(std::move(frame)) {
  if (algebra_.dim() != frame_.dim()) throw DimensionError("algebra and frame dimensions differ");
}

bool GeometrySetup::on_paper_frame() const { return dim() == 4 && frame_ == paper_frame(); }

ScalarVector basis_vector(const ParamList& params, int dim, int i) {
  ScalarVector v(static_cast<std::size_t>(dim), Scalar::zero(params));
  v[static_cast<std::size_t>(i)] = Scalar(params, Rational(1));
  return v;
}

namespace {

void check_length(const ScalarVector& v, int dim) {
  if (static_cast<int>(v.size()) != dim) throw DimensionError("vector length does not match frame dimension");
}

}  // namespace

ScalarVector bracket(const GeometrySetup& setup, const ScalarVector& x, const ScalarVector& y) {
  const int n = setup.dim();
  check_length(x, n);
  check_length(y, n);
  ScalarVector out(static_cast<std::size_t>(n), Scalar::zero(setup.params()));
  for (int i = 0; i < n; ++i) {
    if (x[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (i == j || y[static_cast<std::size_t>(j)].is_zero()) continue;
      const Scalar w = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      for (int k = 0; k < n; ++k) {
        const Scalar& c = setup.algebra()(i, j, k);
        if (!c.is_zero()) out[static_cast<std::size_t>(k)] += w * c;
      }
    }
  }
  return out;
}

ScalarVector apply_j(const FrameStructure& frame, const ScalarVector& x) {
  const int n = frame.dim();
  check_length(x, n);
  ScalarVector out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Scalar s = Scalar::zero(x.front().params());
    for (int i = 0; i < n; ++i) s += x[static_cast<std::size_t>(i)] * frame.j()(i, k);
    out.push_back(std::move(s));
  }
  return out;
}

Scalar metric(const FrameStructure& frame, const ScalarVector& x, const ScalarVector& y) {
  const int n = frame.dim();
  check_length(x, n);
  check_length(y, n);
  Scalar s = Scalar::zero(x.front().params());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (frame.g()(i, j) != 0) s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * frame.g()(i, j);
    }
  }
  return s;
}

RationalMatrix associated_metric(const FrameStructure& frame) {
  const int n = frame.dim();
  RationalMatrix gt(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational s(0);
      for (int k = 0; k < n; ++k) s += frame.j()(j, k) * frame.g()(i, k);
      gt(i, j) = s;
    }
  }
  return gt;
}

namespace {

ScalarVector contract(const RationalMatrix& m, const ScalarVector& v) {
  const int n = m.size();
  check_length(v, n);
  ScalarVector out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Scalar s = Scalar::zero(v.front().params());
    for (int j = 0; j < n; ++j) s += v[static_cast<std::size_t>(j)] * m(i, j);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

ScalarVector raise_index(const FrameStructure& frame, const ScalarVector& covector) {
  return contract(frame.g_inv(), covector);
}

ScalarVector lower_index(const FrameStructure& frame, const ScalarVector& vector) {
  return contract(frame.g(), vector);
}

FrameStructure paper_frame() {
  RationalMatrix g = RationalMatrix::diagonal({Rational(1), Rational(1), Rational(-1), Rational(-1)});
  RationalMatrix j(4);
  j(0, 2) = 1;
  j(1, 3) = 1;
  j(2, 0) = -1;
  j(3, 1) = -1;
  return FrameStructure(std::move(g), std::move(j));
}

StructureConstants paper_family_constants(const Scalar& lambda, const Scalar& mu) {
  if (!(lambda.params() == mu.params())) throw ParamMismatchError("lambda and mu use different parameter lists");
  StructureConstants c(4, lambda.params());
  c.set_bracket(0, 1, 0, lambda);
  c.set_bracket(0, 1, 1, -lambda);
  c.set_bracket(0, 2, 1, mu);
  c.set_bracket(0, 2, 3, lambda);
  c.set_bracket(0, 3, 1, mu);
  c.set_bracket(0, 3, 2, lambda);
  c.set_bracket(1, 2, 0, mu);
  c.set_bracket(1, 2, 3, lambda);
  c.set_bracket(1, 3, 0, mu);
  c.set_bracket(1, 3, 2, lambda);
  c.set_bracket(2, 3, 2, -mu);
  c.set_bracket(2, 3, 3, mu);
  return c;
}

}  // namespace nordgeom
