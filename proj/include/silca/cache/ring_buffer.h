// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_CACHE_RING_BUFFER_H_
#define SILCA_CACHE_RING_BUFFER_H_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace silca::cache {

// Fixed-capacity FIFO over a circular array. Not synchronized.
template <typename T>
class RingBuffer {
 public:
  explicit RingBuffer(std::size_t capacity) : slots_(capacity) {}

  std::size_t capacity() const { return slots_.size(); }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool full() const { return size_ == slots_.size(); }

  // Returns false (and leaves the buffer untouched) when full.
  bool PushBack(T value) {
    if (full()) return false;
    slots_[(head_ + size_) % slots_.size()] = std::move(value);
    ++size_;
    return true;
  }

  std::optional<T> PopFront() {
    if (empty()) return std::nullopt;
    std::optional<T> out = std::move(slots_[head_]);
    slots_[head_].reset();
    head_ = (head_ + 1) % slots_.size();
    --size_;
    return out;
  }

  // Front-to-back copy.
  std::vector<T> Snapshot() const {
    std::vector<T> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) {
      out.push_back(*slots_[(head_ + i) % slots_.size()]);
    }
    return out;
  }

 private:
  std::vector<std::optional<T>> slots_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

}  // namespace silca::cache

#endif  // SILCA_CACHE_RING_BUFFER_H_
