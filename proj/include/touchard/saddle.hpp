#pragma once

// Phase function of the loop integral for the scaled Touchard polynomial,
//   psi(t; mu) = -e^t / mu - log t,   mu = n / x,
// and the saddle points t e^t = -mu in the three regimes around the double
// saddle at t = -1 (mu = 1/e, i.e. xi = 1 with mu = 1/(e xi)).

#include <string>

#include "touchard/numkernel.hpp"

namespace touchard::saddle {

using num::BigComplex;
using num::BigReal;
using num::PrecisionContext;

struct PhaseParams {
  BigReal mu;
  BigReal xi;

  static PhaseParams from_xi(const BigReal& xi);
  static PhaseParams from_mu(const BigReal& mu);
};

enum class SaddleKind { real_pair, double_saddle, conjugate_pair };

const char* to_string(SaddleKind kind) noexcept;

// t0 is the saddle in (-1, 0) for a real pair and the upper-half-plane member
// of a conjugate pair; t1 is the other one.
struct SaddlePair {
  SaddleKind kind;
  BigComplex t0;
  BigComplex t1;
  BigReal residual0;
  BigReal residual1;
};

BigComplex psi(const BigComplex& t, const BigReal& mu, const PrecisionContext& ctx);

struct PsiDerivatives {
  BigComplex d1;
  BigComplex d2;
  BigComplex d3;
  BigComplex d4;
};

PsiDerivatives psi_derivs(const BigComplex& t, const BigReal& mu, const PrecisionContext& ctx);

// psi''(t) = (1 + t) / t^2, valid at saddles only.
BigComplex psi2_at_saddle(const BigComplex& t);

// psi(t) = 1/t - log t, valid at saddles only.
BigComplex psi_at_saddle(const BigComplex& t);

// Real branches of Lambert W on [-1/e, 0): W0 in [-1, 0), W-1 in (-inf, -1].
BigReal lambert_w0(const BigReal& y, const PrecisionContext& ctx);
BigReal lambert_wm1(const BigReal& y, const PrecisionContext& ctx);

// |t e^t + mu|
BigReal saddle_residual(const BigComplex& t, const BigReal& mu);

// |xi - 1| <= 10^-(digits - 15)
bool is_coalescent(const BigReal& xi, const PrecisionContext& ctx);

SaddlePair solve_saddles(const PhaseParams& params, const PrecisionContext& ctx);

}  // namespace touchard::saddle
