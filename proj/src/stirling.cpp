#include "touchard/stirling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "touchard/error.hpp"
#include "touchard/escalation.hpp"

namespace touchard::exact {

namespace {

void check_order(int n, int limit, const char* what) {
  if (n < 0) throw Error(ErrorKind::domain, std::string(what) + ": negative order " + std::to_string(n));
  if (n > limit)
    throw Error(ErrorKind::capacity,
                std::string(what) + ": order " + std::to_string(n) + " exceeds limit " + std::to_string(limit));
}

double log10_abs(const mpz_class& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398120;
}

BigReal horner(std::span<const mpz_class> coeffs, const BigReal& z) {
  BigReal acc(z.context());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= z;
    acc += BigReal(*it, z.context());
  }
  return acc;
}

int cancellation(std::span<const mpz_class> coeffs, const BigReal& z, const BigReal& value, int working_digits) {
  double log_z = z.log10_abs();
  double max_term = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    double t = log10_abs(coeffs[k]) + (k == 0 ? 0.0 : static_cast<double>(k) * log_z);
    max_term = std::max(max_term, t);
  }
  if (value.is_zero()) return working_digits;
  return std::max(0, static_cast<int>(std::floor(max_term - value.log10_abs())));
}

}  // namespace

StirlingTriangle StirlingTriangle::build(int n_max) {
  check_order(n_max, kMaxTriangleOrder, "build_triangle");
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(static_cast<std::size_t>(n_max) + 1);
  rows.push_back({mpz_class(1)});
  for (int n = 1; n <= n_max; ++n) {
    const auto& prev = rows.back();
    std::vector<mpz_class> row(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
      mpz_class v = k < n ? mpz_class(k * prev[static_cast<std::size_t>(k)]) : mpz_class(0);
      v += prev[static_cast<std::size_t>(k - 1)];
      row[static_cast<std::size_t>(k)] = std::move(v);
    }
    rows.push_back(std::move(row));
  }
  return StirlingTriangle(std::move(rows));
}

const mpz_class& StirlingTriangle::operator()(int n, int k) const {
  static const mpz_class zero(0);
  check_order(n, n_max(), "stirling");
  if (k < 0 || k > n) return zero;
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::span<const mpz_class> StirlingTriangle::row(int n) const {
  check_order(n, n_max(), "stirling row");
  return rows_[static_cast<std::size_t>(n)];
}

ArgumentFn fixed_argument(const BigReal& z) {
  return [z](const PrecisionContext& ctx) { return z.at(ctx); };
}

ArgumentFn negated_coalescence_argument(int n, const std::string& xi_literal) {
  return [n, xi_literal](const PrecisionContext& ctx) {
    BigReal x = num::euler_e(ctx) * BigReal(xi_literal, ctx);
    x *= n;
    return -x;
  };
}

namespace {

ExactValue evaluate(int n, const ArgumentFn& z, const StirlingTriangle& triangle, const PrecisionContext& ctx,
                    bool scaled) {
  check_order(n, triangle.n_max(), scaled ? "scaled_touchard" : "touchard_exact");
  auto coeffs = triangle.row(n);
  const mpz_class fact = scaled ? factorial(n) : mpz_class(1);
  auto stable = num::escalate_until_stable(
      [&](const PrecisionContext& level) {
        BigReal v = horner(coeffs, z(level));
        if (scaled) v /= BigReal(fact, level);
        return v;
      },
      ctx, ctx.digits() - 10, "touchard_exact(n=" + std::to_string(n) + ")");
  ExactValue out{stable.value, 0, stable.verified, stable.working_digits};
  BigReal unscaled = scaled ? stable.value * BigReal(fact, ctx) : stable.value;
  out.cancellation_digits = cancellation(coeffs, z(ctx), unscaled, stable.working_digits);
  return out;
}

}  // namespace

ExactValue touchard_exact(int n, const ArgumentFn& z, const StirlingTriangle& triangle, const PrecisionContext& ctx) {
  return evaluate(n, z, triangle, ctx, false);
}

ExactValue touchard_exact(int n, const BigReal& z, const StirlingTriangle& triangle, const PrecisionContext& ctx) {
  return touchard_exact(n, fixed_argument(z), triangle, ctx);
}

namespace {

BigReal recurrence_at(int n, const BigReal& z) {
  const PrecisionContext& ctx = z.context();
  std::vector<BigReal> values;
  values.reserve(static_cast<std::size_t>(n) + 1);
  values.emplace_back(1, ctx);
  std::vector<mpz_class> binom{mpz_class(1)};  // row m of Pascal's triangle
  for (int m = 0; m < n; ++m) {
    BigReal sum(ctx);
    for (int k = 0; k <= m; ++k) sum += BigReal(binom[static_cast<std::size_t>(k)], ctx) * values[static_cast<std::size_t>(k)];
    values.push_back(sum * z);
    std::vector<mpz_class> next(binom.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t k = 1; k < binom.size(); ++k) next[k] = binom[k - 1] + binom[k];
    binom = std::move(next);
  }
  return values.back();
}

}  // namespace

BigReal touchard_recurrence(int n, const ArgumentFn& z, const PrecisionContext& ctx) {
  check_order(n, kMaxTriangleOrder, "touchard_recurrence");
  return num::escalate_until_stable([&](const PrecisionContext& level) { return recurrence_at(n, z(level)); }, ctx,
                                    ctx.digits() - 10, "touchard_recurrence(n=" + std::to_string(n) + ")")
      .value;
}

BigReal touchard_recurrence(int n, const BigReal& z, const PrecisionContext& ctx) {
  return touchard_recurrence(n, fixed_argument(z), ctx);
}

mpz_class factorial(int n) {
  if (n < 0) throw Error(ErrorKind::domain, "factorial of negative integer");
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

ExactValue scaled_touchard(int n, const ArgumentFn& z, const StirlingTriangle& triangle, const PrecisionContext& ctx) {
  return evaluate(n, z, triangle, ctx, true);
}

ExactValue scaled_touchard(int n, const BigReal& z, const StirlingTriangle& triangle, const PrecisionContext& ctx) {
  return scaled_touchard(n, fixed_argument(z), triangle, ctx);
}

}  // namespace touchard::exact
