#pragma once

// Uniform Airy-type approximation across the saddle coalescence. The cubic
// change of variable psi(t) = u^3/3 - zeta u + beta sends t0, t1 to
// u = +zeta^{1/2}, -zeta^{1/2}; keeping the first two terms of dt/du gives
//   T^_{n-1}(-x) ~ (-1)^{n-1} e^{x + n Re beta}
//                  * (A0 n^{-1/3} Ai(n^{2/3} zeta) - B0 n^{-2/3} Ai'(n^{2/3} zeta)).

#include "touchard/numkernel.hpp"
#include "touchard/saddle.hpp"

namespace touchard::uniform {

using num::BigComplex;
using num::BigReal;
using num::PrecisionContext;

struct ZetaBeta {
  BigReal zeta;
  BigComplex beta;
  // |Im| of the quantity whose 2/3 power gives zeta (zero in exact arithmetic).
  BigReal imag_residue;
};

struct Coefficients {
  BigReal A0;
  BigReal B0;
  // Largest |Im| discarded when forming A0 and B0.
  BigReal imag_residue;
};

struct UniformIngredients {
  BigReal xi;
  BigReal zeta;
  BigComplex beta;
  BigReal A0;
  BigReal B0;
  saddle::SaddlePair saddles;
  BigReal imag_residue;
  bool coalesced;
};

// Error(branch) if the right-hand side before the 2/3 power is not real
// positive (which signals mislabelled saddles).
ZetaBeta compute_zeta_beta(const saddle::SaddlePair& saddles, const PrecisionContext& ctx);

// Error(domain) when |zeta| is inside the coalescence tolerance; use
// coalescence_limit_values there.
Coefficients compute_A0_B0(const saddle::SaddlePair& saddles, const BigReal& zeta, const PrecisionContext& ctx);

struct LimitValues {
  BigReal A0;  // 2^{1/3}
  BigReal B0;  // -(5/6) 2^{2/3}
  BigComplex beta;  // -1 - i pi
};

// Values at xi = 1 from the derivatives of psi at the double saddle.
LimitValues coalescence_limit_values(const PrecisionContext& ctx);

// zeta, beta, A0, B0 for the given xi. Near xi = 1 the computation is
// repeated at doubled precision until zeta, A0 and B0 are stable.
UniformIngredients uniform_ingredients(const BigReal& xi, const PrecisionContext& ctx);

// Checks that A0, B0 approach the limit values on xi = 1 +/- 10^-k, k = 3..6.
// Throws Error(branch) otherwise.
void verify_branch_continuity(const PrecisionContext& ctx);

// Two-term uniform value of T^_{n-1}(-x), x = n e xi. At coalescence this is
// the closed form built from the limit values and Ai(0), Ai'(0).
BigReal theorem2_eval(int n, const BigReal& xi, const PrecisionContext& ctx);

// The same, with the ingredients already computed.
BigReal theorem2_eval(int n, const UniformIngredients& ingredients, const PrecisionContext& ctx);

// The bracketed two-term Airy combination, without the exponential prefactor
// and sign.
BigReal airy_brace(int n, const UniformIngredients& ingredients, const PrecisionContext& ctx);

}  // namespace touchard::uniform
