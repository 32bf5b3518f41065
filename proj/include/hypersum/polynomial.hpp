#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace hypersum {

/// Dense univariate polynomial; coefficient i multiplies x^i.
template <class T>
class Polynomial {
 public:
  Polynomial() : coeffs_{T(0)} {}
  explicit Polynomial(std::vector<T> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) coeffs_.push_back(T(0));
  }
  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  /// c0 + c1 x
  static Polynomial linear(T c0, T c1) { return Polynomial(std::vector<T>{std::move(c0), std::move(c1)}); }

  const std::vector<T>& coefficients() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const T& operator[](std::size_t i) const { return coeffs_.at(i); }

  /// Highest index with a nonzero coefficient; 0 for the zero polynomial.
  std::size_t degree() const {
    std::size_t d = coeffs_.size() - 1;
    while (d > 0 && coeffs_[d] == T(0)) --d;
    return d;
  }

  T operator()(const T& x) const {
    T acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> out(std::max(a.size(), b.size()), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a.coeffs_[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] + b.coeffs_[i];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<T> out(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const Polynomial& a, const T& c) {
    std::vector<T> out = a.coeffs_;
    for (T& v : out) v = v * c;
    return Polynomial(std::move(out));
  }

 private:
  std::vector<T> coeffs_;
};

}  // namespace hypersum
