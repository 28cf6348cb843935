#include "nordgeom/tensor.hpp"

#include "nordgeom/errors.hpp"

namespace nordgeom {

Tensor::Tensor(int rank, int dim, const ParamList& params) : rank_(rank), dim_(dim), params_(params) {
  if (rank < 0 || dim <= 0) throw DimensionError("invalid tensor shape");
  std::size_t n = 1;
  for (int r = 0; r < rank; ++r) n *= static_cast<std::size_t>(dim);
  data_.assign(n, Scalar::zero(params));
}

std::size_t Tensor::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw DimensionError("tensor index has wrong rank");
  std::size_t k = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw DimensionError("tensor index " + std::to_string(i) + " out of range");
    k = k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return k;
}

std::vector<int> Tensor::index_of(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(rank_));
  for (int r = rank_ - 1; r >= 0; --r) {
    idx[static_cast<std::size_t>(r)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

bool Tensor::is_zero() const {
  for (const auto& s : data_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

std::size_t Tensor::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& s : data_) n += s.is_zero() ? 0 : 1;
  return n;
}

void Tensor::check_shape(const Tensor& other) const {
  if (rank_ != other.rank_ || dim_ != other.dim_) throw DimensionError("tensor shapes differ");
}

Tensor& Tensor::operator+=(const Tensor& other) {
  check_shape(other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  check_shape(other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Tensor& Tensor::operator*=(const Scalar& factor) {
  for (auto& s : data_) s *= factor;
  return *this;
}

Tensor& Tensor::operator*=(const Rational& factor) {
  for (auto& s : data_) s *= factor;
  return *this;
}

bool operator==(const Tensor& a, const Tensor& b) {
  return a.rank_ == b.rank_ && a.dim_ == b.dim_ && a.data_ == b.data_;
}

Tensor Tensor::substituted(const Assignment& assignment) const {
  Tensor out(*this);
  for (auto& s : out.data_) s = substitute(s, assignment);
  return out;
}

void for_each_index(int rank, int dim, const std::function<void(std::span<const int>)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  if (rank == 0) {
    fn(idx);
    return;
  }
  for (;;) {
    fn(idx);
    int r = rank - 1;
    while (r >= 0 && ++idx[static_cast<std::size_t>(r)] == dim) {
      idx[static_cast<std::size_t>(r)] = 0;
      --r;
    }
    if (r < 0) return;
  }
}

std::string index_key(std::span<const int> idx) {
  std::string key;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(idx[i] + 1);
  }
  return key;
}

}  // namespace nordgeom
