#pragma once

// Exact reference values of the Touchard polynomials
//   T_n(z) = sum_k S(n,k) z^k,   scaled: T_n(z) / n!
// evaluated with adaptive precision so that the alternating sums at z < 0
// are certified despite heavy cancellation.

#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "touchard/numkernel.hpp"

namespace touchard::exact {

using num::BigReal;
using num::PrecisionContext;

inline constexpr int kMaxTriangleOrder = 10000;

// Stirling numbers of the second kind S(n,k) for 0 <= k <= n <= n_max.
class StirlingTriangle {
 public:
  // Error(capacity) unless 0 <= n_max <= 10000.
  static StirlingTriangle build(int n_max);

  int n_max() const noexcept { return static_cast<int>(rows_.size()) - 1; }

  // S(n,k); zero for k > n. Error(capacity) when n is outside the table.
  const mpz_class& operator()(int n, int k) const;
  std::span<const mpz_class> row(int n) const;

 private:
  explicit StirlingTriangle(std::vector<std::vector<mpz_class>> rows) : rows_(std::move(rows)) {}
  std::vector<std::vector<mpz_class>> rows_;
};

struct ExactValue {
  BigReal value;
  // log10 of the largest summand magnitude minus log10 of |value|.
  int cancellation_digits = 0;
  // Two successive evaluations (d and 2d digits) agreed to requested - 10 digits.
  bool verified = false;
  // Working precision of the last evaluation.
  int working_digits = 0;
};

// Produces the argument at a given precision, so escalation can recompute
// arguments such as n*e*xi from scratch instead of padding a rounded value.
using ArgumentFn = std::function<BigReal(const PrecisionContext&)>;

ArgumentFn fixed_argument(const BigReal& z);

ExactValue touchard_exact(int n, const ArgumentFn& z, const StirlingTriangle& triangle, const PrecisionContext& ctx);
ExactValue touchard_exact(int n, const BigReal& z, const StirlingTriangle& triangle, const PrecisionContext& ctx);

// Independent path: T_{m+1}(z) = z * sum_k C(m,k) T_k(z), same escalation policy.
BigReal touchard_recurrence(int n, const ArgumentFn& z, const PrecisionContext& ctx);
BigReal touchard_recurrence(int n, const BigReal& z, const PrecisionContext& ctx);

// T_n(z) / n!, with n! kept exact until the final division.
ExactValue scaled_touchard(int n, const ArgumentFn& z, const StirlingTriangle& triangle, const PrecisionContext& ctx);
ExactValue scaled_touchard(int n, const BigReal& z, const StirlingTriangle& triangle, const PrecisionContext& ctx);

mpz_class factorial(int n);

// x = n * e * xi computed at the requested precision (xi given as a decimal
// literal, so it is exact up to rounding at that precision).
ArgumentFn negated_coalescence_argument(int n, const std::string& xi_literal);

}  // namespace touchard::exact
