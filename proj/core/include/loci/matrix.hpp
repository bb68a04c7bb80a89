#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace loci {

/// Dense row-major matrix of doubles; one row per observation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t dims) : rows_(rows), dims_(dims), values_(rows * dims, 0.0) {}
  Matrix(std::size_t rows, std::size_t dims, std::vector<double> values)
      : rows_(rows), dims_(dims), values_(std::move(values)) {
    assert(values_.size() == rows_ * dims_);
  }

  std::size_t rows() const { return rows_; }
  std::size_t dims() const { return dims_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * dims_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * dims_ + c]; }

  std::span<const double> row(std::size_t r) const { return {values_.data() + r * dims_, dims_}; }
  std::span<double> row(std::size_t r) { return {values_.data() + r * dims_, dims_}; }

  const std::vector<double>& values() const { return values_; }

  void append_row(std::span<const double> r) {
    assert(r.size() == dims_);
    values_.insert(values_.end(), r.begin(), r.end());
    ++rows_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dims_ = 0;
  std::vector<double> values_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace loci
