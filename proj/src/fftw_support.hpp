#pragma once

#include <fftw3.h>

#include <cstddef>
#include <cstring>
#include <utility>

namespace fracwave::detail {

/// RAII wrapper for fftw_malloc'd storage. All buffers allocated this way
/// share the maximal alignment class, so plans created on one buffer may be
/// executed on another of the same geometry via the new-array interface.
template <typename T>
class FftwBuffer {
public:
  FftwBuffer() = default;
  explicit FftwBuffer(std::size_t count) : size_(count) {
    data_ = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    std::memset(data_, 0, sizeof(T) * count);
  }
  FftwBuffer(FftwBuffer&& other) noexcept
      : data_(std::exchange(other.data_, nullptr)), size_(std::exchange(other.size_, 0)) {}
  FftwBuffer& operator=(FftwBuffer&& other) noexcept {
    if (this != &other) {
      reset();
      data_ = std::exchange(other.data_, nullptr);
      size_ = std::exchange(other.size_, 0);
    }
    return *this;
  }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  ~FftwBuffer() { reset(); }

  void reset() {
    if (data_) fftw_free(data_);
    data_ = nullptr;
    size_ = 0;
  }

  T* data() { return data_; }
  const T* data() const { return data_; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  std::size_t size() const { return size_; }

private:
  T* data_ = nullptr;
  std::size_t size_ = 0;
};

class FftwPlan {
public:
  FftwPlan() = default;
  explicit FftwPlan(fftw_plan plan) : plan_(plan) {}
  FftwPlan(FftwPlan&& other) noexcept : plan_(std::exchange(other.plan_, nullptr)) {}
  FftwPlan& operator=(FftwPlan&& other) noexcept {
    if (this != &other) {
      reset();
      plan_ = std::exchange(other.plan_, nullptr);
    }
    return *this;
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  ~FftwPlan() { reset(); }

  void reset() {
    if (plan_) fftw_destroy_plan(plan_);
    plan_ = nullptr;
  }

  fftw_plan get() const { return plan_; }
  explicit operator bool() const { return plan_ != nullptr; }

private:
  fftw_plan plan_ = nullptr;
};

}  // namespace fracwave::detail
