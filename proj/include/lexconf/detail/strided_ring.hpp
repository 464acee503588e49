#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace lexconf::detail {

// FIFO of fixed-width blocks in one contiguous, power-of-two sized buffer.
template <class T>
class StridedRing {
 public:
  explicit StridedRing(std::size_t stride = 1) : stride_(stride) {}

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t stride() const noexcept { return stride_; }

  std::span<T> operator[](std::size_t i) noexcept { return {data_.data() + slot(i) * stride_, stride_}; }
  std::span<const T> operator[](std::size_t i) const noexcept {
    return {data_.data() + slot(i) * stride_, stride_};
  }

  std::span<T> front() noexcept { return (*this)[0]; }
  std::span<const T> front() const noexcept { return (*this)[0]; }
  std::span<T> back() noexcept { return (*this)[size_ - 1]; }

  /// Appends a value-initialised block and returns it.
  std::span<T> push_back() {
    if (size_ == capacity_) grow();
    auto block = (*this)[size_++];
    std::fill(block.begin(), block.end(), T{});
    return block;
  }

  void pop_front() noexcept {
    head_ = (head_ + 1) & (capacity_ - 1);
    --size_;
  }

  void clear() noexcept { head_ = size_ = 0; }

 private:
  std::size_t slot(std::size_t i) const noexcept { return (head_ + i) & (capacity_ - 1); }

  void grow() {
    const std::size_t cap = capacity_ ? capacity_ * 2 : 16;
    std::vector<T> next(cap * stride_);
    for (std::size_t i = 0; i < size_; ++i) {
      auto block = (*this)[i];
      std::copy(block.begin(), block.end(), next.begin() + static_cast<std::ptrdiff_t>(i * stride_));
    }
    data_.swap(next);
    capacity_ = cap;
    head_ = 0;
  }

  std::vector<T> data_;
  std::size_t stride_;
  std::size_t capacity_ = 0;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

}  // namespace lexconf::detail
