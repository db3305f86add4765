#include "touchard/poincare.hpp"

#include <string>

#include "touchard/error.hpp"
#include "touchard/saddle.hpp"

namespace touchard::poincare {

const char* to_string(Regime regime) noexcept { return regime == Regime::below ? "below" : "above"; }

bool in_exclusion_band(const BigReal& mu, const PrecisionContext& ctx) {
  BigReal gap = num::abs(mu.at(ctx) * num::euler_e(ctx) - BigReal(1, ctx));
  return gap.to_double() <= kExclusionBand;
}

PoincareResult leading_order(int n, const BigReal& mu_in, const PrecisionContext& ctx) {
  if (n < kMinOrder) throw Error(ErrorKind::domain, "leading_order needs n >= " + std::to_string(kMinOrder));
  const BigReal mu = mu_in.at(ctx);
  if (mu.sign() <= 0) throw Error(ErrorKind::domain, "mu must be positive");
  if (in_exclusion_band(mu, ctx))
    throw Error(ErrorKind::regime, "mu = " + mu.to_scientific(10) +
                                       " is within 5% of 1/e; use the coalescence or uniform approximations");

  auto saddles = saddle::solve_saddles(saddle::PhaseParams::from_mu(mu), ctx);
  const Regime regime = saddles.kind == saddle::SaddleKind::real_pair ? Regime::below : Regime::above;
  const BigComplex& t0 = saddles.t0;
  const BigReal nn(n, ctx);
  const BigReal x = nn / mu;

  // e^{x + n/t0} / t0^{n-1}, combined in the exponent.
  BigComplex exponent = (nn / t0) + x;
  exponent -= num::log_branched(t0) * BigReal(n - 1, ctx);
  BigComplex numerator = num::exp(exponent);

  const BigReal pi = num::pi(ctx);
  const BigComplex one_plus_t0 = t0 + BigReal(1, ctx);
  BigComplex value(ctx);
  if (regime == Regime::below) {
    value = numerator / (num::sqrt(one_plus_t0 * (2 * pi)) * num::sqrt(nn));
  } else {
    value = numerator * num::sqrt(BigReal(2, ctx)) / (num::sqrt(one_plus_t0 * pi) * num::sqrt(nn));
  }
  return {value.re(), regime, t0};
}

}  // namespace touchard::poincare
