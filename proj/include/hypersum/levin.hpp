#pragma once

// Levin u-transform for slowly convergent series.
//
// Hypergeometric terms at unit argument with p = q + 1 behave like
// j^(-1-sigma) * (c0 + c1/j + ...), the remainder model the u-variant is
// built for. Weights ((beta+n+j)/(beta+n+k))^(k-1) grow fast, so the working
// precision should be well above the target accuracy.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hypersum/complex.hpp"
#include "hypersum/rational.hpp"

namespace hypersum {

struct LevinEstimate {
  Complex value;
  /// |T_k - T_{k-1}| at the accepted order.
  double error_estimate;
  std::size_t order;
};

/// Sequence of transforms T_k^(n), k = 1..max_order, of the partial sums of
/// `terms` starting at offset n. `terms[i]` is a_i; partial sums include a_0.
/// Requires every a_i used to be nonzero.
template <class T = Complex>
std::vector<T> levin_u_table(std::span<const T> terms, std::size_t n, std::size_t max_order) {
  std::vector<T> out;
  if (terms.empty() || n >= terms.size()) return out;
  const long prec = terms.front().precision();
  std::vector<T> partial;
  partial.reserve(terms.size());
  T s(prec);
  for (const T& a : terms) {
    s += a;
    partial.push_back(s);
  }
  const Real beta(1.0, prec);
  max_order = std::min(max_order, terms.size() - 1 - n);
  for (std::size_t k = 1; k <= max_order; ++k) {
    T num(prec), den(prec);
    const Real last = beta + Real(static_cast<double>(n + k), prec);
    for (std::size_t j = 0; j <= k; ++j) {
      const std::size_t i = n + j;
      Real weight = pow((beta + Real(static_cast<double>(i), prec)) / last, k - 1) *
                    Real(binomial(k, j), prec);
      if (j % 2 == 1) weight = -weight;
      T omega = terms[i] * (beta + Real(static_cast<double>(i), prec));
      T w = T(weight) / omega;
      num += partial[i] * w;
      den += w;
    }
    out.push_back(num / den);
  }
  return out;
}

/// Finds the first order whose last two successive differences both meet
/// the tolerance, then keeps raising the order while the difference still
/// shrinks. Returns nullopt when no order qualifies.
template <class T = Complex>
std::optional<LevinEstimate> levin_u_sum(std::span<const T> terms, std::size_t n,
                                         std::size_t max_order, double rel_tol, double abs_tol) {
  std::vector<T> table = levin_u_table<T>(terms, n, max_order);
  auto diff = [&](std::size_t k) { return abs(table[k] - table[k - 1]).to_double(); };
  auto ok = [&](std::size_t k) {
    return diff(k) <= std::max(rel_tol * abs(table[k]).to_double(), abs_tol);
  };
  for (std::size_t k = 2; k < table.size(); ++k) {
    if (!(ok(k) && ok(k - 1))) continue;
    while (k + 1 < table.size() && diff(k + 1) < diff(k)) ++k;
    return LevinEstimate{table[k], diff(k), k + 1};
  }
  return std::nullopt;
}

}  // namespace hypersum
