#pragma once

// Leading term of the classical saddle-point expansions of T^_{n-1}(-x),
// valid away from the coalescence mu = 1/e:
//   0 < mu < 1/e:  e^{x+n/t0} / (sqrt(2 pi (1+t0)) t0^{n-1} n^{1/2})
//   mu > 1/e:      Re[ sqrt(2) e^{x+n/t0} / (sqrt(pi (1+t0)) t0^{n-1} n^{1/2}) ]
// with the leading coefficient c0 = 1.

#include "touchard/numkernel.hpp"

namespace touchard::poincare {

using num::BigComplex;
using num::BigReal;
using num::PrecisionContext;

enum class Regime { below, above };

const char* to_string(Regime regime) noexcept;

struct PoincareResult {
  BigReal value;
  Regime regime;
  BigComplex t0_used;
};

inline constexpr double kExclusionBand = 0.05;
inline constexpr int kMinOrder = 10;

// True when |mu e - 1| <= 0.05, where leading_order refuses to evaluate.
bool in_exclusion_band(const BigReal& mu, const PrecisionContext& ctx);

// Scaled value T^_{n-1}(-x) with x = n / mu. Error(regime) inside the
// exclusion band, Error(domain) for n < 10 or mu <= 0.
PoincareResult leading_order(int n, const BigReal& mu, const PrecisionContext& ctx);

}  // namespace touchard::poincare
