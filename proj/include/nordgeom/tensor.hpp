#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nordgeom/scalar.hpp"

namespace nordgeom {

// Dense rank-r array of Scalars over frame indices 0..dim-1 (row-major).
// Frame indices are 0-based here; reports and input files use 1-based.
class Tensor {
 public:
  Tensor(int rank, int dim, const ParamList& params);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  const ParamList& params() const { return params_; }
  std::size_t size() const { return data_.size(); }

  template <typename... I>
  Scalar& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <typename... I>
  const Scalar& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }

  Scalar& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const Scalar& at(std::span<const int> idx) const { return data_[offset(idx)]; }
  Scalar& flat(std::size_t k) { return data_[k]; }
  const Scalar& flat(std::size_t k) const { return data_[k]; }

  // Decodes a flat position into its index tuple.
  std::vector<int> index_of(std::size_t flat) const;

  bool is_zero() const;
  std::size_t nonzero_count() const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(const Scalar& factor);
  Tensor& operator*=(const Rational& factor);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const Rational& b) { return a *= b; }
  friend Tensor operator*(const Rational& a, Tensor b) { return b *= a; }
  friend Tensor operator*(const Scalar& a, Tensor b) { return b *= a; }

  friend bool operator==(const Tensor& a, const Tensor& b);

  // Entry-wise substitution of parameter values.
  Tensor substituted(const Assignment& assignment) const;

 private:
  std::size_t offset(std::initializer_list<int> idx) const {
    return offset(std::span<const int>(idx.begin(), idx.size()));
  }
  std::size_t offset(std::span<const int> idx) const;
  void check_shape(const Tensor& other) const;

  int rank_;
  int dim_;
  ParamList params_;
  std::vector<Scalar> data_;
};

// Calls fn(index tuple) for every index tuple of the given rank, in
// lexicographic order.
void for_each_index(int rank, int dim, const std::function<void(std::span<const int>)>& fn);

// "1,2,2,1" style key with 1-based indices.
std::string index_key(std::span<const int> idx);

}  // namespace nordgeom
