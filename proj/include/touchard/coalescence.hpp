#pragma once

// Expansion of the scaled Touchard polynomial at the double saddle (mu = 1/e).
//
// With tau = t + 1 the phase near t = -1 is
//   psi(t) - psi(-1) = sum_{k>=3} (1/k - 1/k!) tau^k =: w,
// and inverting w = v^3/6 gives tau = sum_m a_m v^{m+1}. Integrating the two
// branches w = u e^{-/+ pi i} against e^{-n u} term by term yields
//   T^_{n-1}(-x) ~ (-1)^{n-1} e^{x-n}/(3 pi)
//                  * sum_m (-1)^m B_m Gamma((m+1)/3) sin(pi (m+1)/3) / (n/6)^{(m+1)/3}
// with B_m = (-1)^m (m+1) a_m. Everything up to the Gamma factors is exact.

#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "touchard/numkernel.hpp"

namespace touchard::coalescence {

using num::BigReal;
using num::PrecisionContext;

inline constexpr int kDefaultOrder = 12;

// coeffs[k] is the coefficient of tau^k, k = 0..order (zero for k < 3).
struct ForwardSeries {
  std::vector<mpq_class> coeffs;
  int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

// tau = sum_{m=0}^{M} a_m v^{m+1}, v = (6w)^{1/3}.
struct RationalSeries {
  std::vector<mpq_class> coeffs;
  int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

struct BmTable {
  std::vector<mpq_class> B;
  std::vector<bool> contributes;  // false for m = 2 (mod 3)
  int order() const noexcept { return static_cast<int>(B.size()) - 1; }
};

// Error(order) for order < 3.
ForwardSeries forward_series(int order);

// Error(order) unless fwd.order() >= M + 3.
RationalSeries revert_series(const ForwardSeries& fwd, int M);

// Coefficients of v^j (j = 0..rev.order()+3) of w(tau(v)) - v^3/6; all zero
// when the reversion is exact.
std::vector<mpq_class> reversion_residual(const ForwardSeries& fwd, const RationalSeries& rev);

// Throws Error(series_consistency) if any of the published B_0, B_1, B_3,
// B_4, B_6 within the table's order is not reproduced exactly.
BmTable compute_bm(const RationalSeries& rev);

// Published B_m, m in {0, 1, 3, 4, 6}.
const std::vector<std::pair<int, mpq_class>>& published_bm();

// Table of order kDefaultOrder, built once.
const BmTable& default_bm_table();

// sin(pi (m+1)/3) as an exact multiple of sqrt(3)/2: +1, 0 or -1.
int sine_sign(int m) noexcept;

// Truncated expansion m = 0..M. Error(order) if M exceeds the table,
// Error(domain) if n < 2.
BigReal theorem1_eval(int n, int M, const BmTable& table, const PrecisionContext& ctx);
BigReal theorem1_eval(int n, int M, const PrecisionContext& ctx);

// [{"m", "numerator", "denominator", "contributes", "provenance"}...] for m = 0..M.
nlohmann::json bm_table_json(const BmTable& table, int M);

}  // namespace touchard::coalescence
