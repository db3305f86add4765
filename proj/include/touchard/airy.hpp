#pragma once

#include "touchard/numkernel.hpp"

namespace touchard::airy {

using num::BigReal;
using num::PrecisionContext;

enum class AiryMethod { maclaurin, asymptotic_pos, asymptotic_neg };

const char* to_string(AiryMethod method) noexcept;

struct AiryValue {
  BigReal ai;
  BigReal ai_prime;
  AiryMethod method;
};

inline constexpr double kDefaultSwitchover = 12.0;
inline constexpr double kMaxArgument = 1e6;

// Ai and Ai' for real |z| <= 1e6. The power series is used up to the
// switchover; beyond it the large-|z| expansions take over, but only where
// their optimally truncated remainder is below the working precision (the
// series, run with enough guard digits, covers the rest).
AiryValue airy(const BigReal& z, const PrecisionContext& ctx, double switchover = kDefaultSwitchover);

// Smallest |z| at which the asymptotic expansions reach ctx.digits.
double asymptotic_threshold(const PrecisionContext& ctx);

// Individual evaluation routes.
AiryValue airy_maclaurin(const BigReal& z, const PrecisionContext& ctx);
AiryValue airy_asymptotic(const BigReal& z, const PrecisionContext& ctx);

struct AiryWithSecond {
  BigReal ai;
  BigReal ai_prime;
  BigReal ai_second;  // from the term-wise differentiated series
};

AiryWithSecond airy_maclaurin_second(const BigReal& z, const PrecisionContext& ctx);

// Ai(0) = 3^(-2/3) / Gamma(2/3) and Ai'(0) = -3^(-1/3) / Gamma(1/3).
BigReal ai_at_zero(const PrecisionContext& ctx);
BigReal ai_prime_at_zero(const PrecisionContext& ctx);

}  // namespace touchard::airy
