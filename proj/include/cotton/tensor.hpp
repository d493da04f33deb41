#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cotton/errors.hpp"

namespace cotton {

enum class Slot { Up, Down };

/// Components of a rank-k tensor at a point in a dim-dimensional chart,
/// stored row-major. T is a scalar or a Jet.
template <class T>
class Tensor {
 public:
  Tensor(std::size_t dim, std::vector<Slot> slots, const T& fill)
      : dim_(dim), slots_(std::move(slots)), data_(ipow(dim, slots_.size()), fill) {}

  Tensor(std::size_t dim, std::vector<Slot> slots, std::vector<T> data)
      : dim_(dim), slots_(std::move(slots)), data_(std::move(data)) {
    if (data_.size() != ipow(dim_, slots_.size())) throw ArityMismatch("tensor data size mismatch");
  }

  /// Fully covariant rank-k tensor.
  static Tensor covariant(std::size_t dim, std::size_t rank, const T& fill) {
    return Tensor(dim, std::vector<Slot>(rank, Slot::Down), fill);
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return slots_.size(); }
  const std::vector<Slot>& slots() const { return slots_; }
  std::size_t size() const { return data_.size(); }
  const std::vector<T>& data() const { return data_; }

  bool fully_covariant() const {
    for (Slot s : slots_) {
      if (s != Slot::Down) return false;
    }
    return true;
  }

  template <class... I>
  T& operator()(I... idx) {
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }

  T& at(std::span<const std::size_t> idx) { return data_[flat(idx)]; }
  const T& at(std::span<const std::size_t> idx) const { return data_[flat(idx)]; }
  T& at_flat(std::size_t k) { return data_[k]; }
  const T& at_flat(std::size_t k) const { return data_[k]; }

  std::vector<std::size_t> unflatten(std::size_t k) const {
    std::vector<std::size_t> idx(rank());
    for (std::size_t s = rank(); s-- > 0;) {
      idx[s] = k % dim_;
      k /= dim_;
    }
    return idx;
  }

  template <class F>
  auto map(F&& f) const -> Tensor<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Tensor<U>(dim_, slots_, std::move(out));
  }

 private:
  static std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
  }

  std::size_t flat(std::span<const std::size_t> idx) const {
    if (idx.size() != rank()) throw ArityMismatch("tensor index has wrong rank");
    std::size_t k = 0;
    for (std::size_t i : idx) {
      if (i >= dim_) throw ArityMismatch("tensor index out of range");
      k = k * dim_ + i;
    }
    return k;
  }
  std::size_t flat(std::initializer_list<std::size_t> idx) const {
    return flat(std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  std::size_t dim_;
  std::vector<Slot> slots_;
  std::vector<T> data_;
};

}  // namespace cotton
