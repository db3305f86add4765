#include "touchard/uniform.hpp"

#include <string>

#include "touchard/airy.hpp"
#include "touchard/error.hpp"

namespace touchard::uniform {

namespace {

BigReal ten_pow(long exponent, const PrecisionContext& ctx) { return num::pow(BigReal(10, ctx), exponent); }

BigReal max_of(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

// |rhs| must be real positive up to `tol` relative to the scale of psi.
BigReal checked_positive(const BigComplex& rhs, const BigReal& scale, const PrecisionContext& ctx,
                         const char* regime) {
  BigReal tol = ten_pow(-(ctx.digits() - 10), ctx) * max_of(scale, BigReal(1, ctx));
  if (num::abs(rhs.im()) > tol || rhs.re().sign() < 0)
    throw Error(ErrorKind::branch, std::string("zeta extraction (") + regime +
                                       ") expected a real positive value, got " + rhs.re().to_scientific(15) + " + " +
                                       rhs.im().to_scientific(15) + "i");
  return rhs.re();
}

BigReal two_thirds_power(const BigReal& x) {
  return num::pow(x, BigReal(mpq_class(2, 3), x.context()));
}

}  // namespace

ZetaBeta compute_zeta_beta(const saddle::SaddlePair& saddles, const PrecisionContext& ctx) {
  const BigComplex t0 = saddles.t0.at(ctx);
  const BigComplex t1 = saddles.t1.at(ctx);
  const BigComplex psi0 = saddle::psi_at_saddle(t0);
  const BigComplex psi1 = saddle::psi_at_saddle(t1);
  BigComplex beta = (psi0 + psi1) / BigReal(2, ctx);
  const BigReal scale = max_of(psi0.abs(), psi1.abs());

  switch (saddles.kind) {
    case saddle::SaddleKind::double_saddle:
      return {BigReal(ctx), beta, BigReal(ctx)};
    case saddle::SaddleKind::real_pair: {
      // (2/3) zeta^{3/2} = (psi(t1) - psi(t0)) / 2
      BigComplex rhs = (psi1 - psi0) / BigReal(2, ctx);
      BigReal r = checked_positive(rhs, scale, ctx, "real pair");
      return {two_thirds_power(r * 3 / 2), beta, num::abs(rhs.im())};
    }
    case saddle::SaddleKind::conjugate_pair: {
      // (2/3) (-zeta)^{3/2} = (i/2) (psi(t_lower) - psi(t_upper)); t0 is the
      // upper saddle here, so this is (i/2) (psi(t1) - psi(t0)).
      BigComplex diff = psi1 - psi0;
      BigComplex rhs(-diff.im() / 2, diff.re() / 2);
      BigReal r = checked_positive(rhs, scale, ctx, "conjugate pair");
      return {-two_thirds_power(r * 3 / 2), beta, num::abs(rhs.im())};
    }
  }
  throw Error(ErrorKind::branch, "unknown saddle configuration");
}

Coefficients compute_A0_B0(const saddle::SaddlePair& saddles, const BigReal& zeta_in, const PrecisionContext& ctx) {
  const BigReal zeta = zeta_in.at(ctx);
  if (saddles.kind == saddle::SaddleKind::double_saddle || num::abs(zeta) <= ten_pow(-(ctx.digits() - 15), ctx))
    throw Error(ErrorKind::domain, "A0/B0 from the saddle formulas need zeta away from 0; use the coalescence limit");
  const BigReal sqrt2 = num::sqrt(BigReal(2, ctx));
  const BigReal one(1, ctx);

  if (saddles.kind == saddle::SaddleKind::real_pair) {
    if (zeta.sign() < 0) throw Error(ErrorKind::branch, "real saddle pair with negative zeta");
    BigComplex h0 = saddle::psi2_at_saddle(saddles.t0.at(ctx));
    BigComplex h1 = saddle::psi2_at_saddle(saddles.t1.at(ctx));
    BigReal residue = max_of(num::abs(h0.im()), num::abs(h1.im()));
    if (h0.re().sign() <= 0 || h1.re().sign() >= 0)
      throw Error(ErrorKind::branch, "psi'' signs at the real saddles do not match t0 in (-1,0), t1 < -1");
    BigReal p = num::sqrt(one / h0.re());
    BigReal q = num::sqrt(-one / h1.re());
    BigReal quarter = num::pow(zeta, BigReal(mpq_class(1, 4), ctx));
    return {quarter / sqrt2 * (p + q), (p - q) / (sqrt2 * quarter), residue};
  }

  if (zeta.sign() > 0) throw Error(ErrorKind::branch, "conjugate saddle pair with positive zeta");
  // psi'' at the upper saddle (the one mapped to u = -zeta^{1/2}).
  BigComplex h_upper = saddle::psi2_at_saddle(saddles.t0.at(ctx));
  BigComplex r = num::sqrt(BigComplex(BigReal(ctx), one) / h_upper);
  // Branch fixed by continuity with the coalescence value A0 = 2^{1/3} > 0.
  if (r.re().sign() < 0) r = -r;
  BigReal quarter = num::pow(num::abs(zeta), BigReal(mpq_class(1, 4), ctx));
  return {sqrt2 * quarter * r.re(), sqrt2 / quarter * r.im(), BigReal(ctx)};
}

LimitValues coalescence_limit_values(const PrecisionContext& ctx) {
  const BigComplex minus_one(BigReal(-1, ctx));
  const BigReal mu = BigReal(1, ctx) / num::euler_e(ctx);
  auto d = saddle::psi_derivs(minus_one, mu, ctx);
  const BigReal d3 = d.d3.re();
  const BigReal d4 = d.d4.re();
  // t(u) near u = 0: t'(0) = (2/psi''')^{1/3}, t''(0) = -(psi''''/(6 psi''')) (2/psi''')^{2/3}.
  const BigReal c = num::cbrt(BigReal(2, ctx) / d3);
  BigReal A0 = c;
  BigReal B0 = -(d4 / (6 * d3)) * c * c;
  return {A0, B0, saddle::psi_at_saddle(minus_one)};
}

namespace {

UniformIngredients ingredients_at(const BigReal& xi_in, const PrecisionContext& ctx) {
  const BigReal xi = xi_in.at(ctx);
  auto params = saddle::PhaseParams::from_xi(xi);
  auto saddles = saddle::solve_saddles(params, ctx);
  if (saddles.kind == saddle::SaddleKind::double_saddle) {
    auto lim = coalescence_limit_values(ctx);
    return {xi, BigReal(ctx), lim.beta, lim.A0, lim.B0, saddles, BigReal(ctx), true};
  }
  auto zb = compute_zeta_beta(saddles, ctx);
  auto coef = compute_A0_B0(saddles, zb.zeta, ctx);
  return {xi, zb.zeta, zb.beta, coef.A0, coef.B0, saddles, max_of(zb.imag_residue, coef.imag_residue), false};
}

}  // namespace

UniformIngredients uniform_ingredients(const BigReal& xi, const PrecisionContext& ctx) {
  if (xi.sign() <= 0) throw Error(ErrorKind::domain, "xi must be positive");
  UniformIngredients current = ingredients_at(xi, ctx);
  if (current.coalesced) return current;
  const double required = ctx.digits() - 10;
  PrecisionContext level = ctx;
  for (int i = 0; i < ctx.max_escalations(); ++i) {
    level = level.doubled();
    UniformIngredients finer = ingredients_at(xi, level);
    bool stable = num::agreeing_digits(current.zeta, finer.zeta) >= required &&
                  num::agreeing_digits(current.A0, finer.A0) >= required &&
                  num::agreeing_digits(current.B0, finer.B0) >= required;
    if (stable) {
      return {finer.xi.at(ctx), finer.zeta.at(ctx), finer.beta.at(ctx), finer.A0.at(ctx), finer.B0.at(ctx),
              current.saddles, current.imag_residue, false};
    }
    current = std::move(finer);
  }
  throw PrecisionExhausted("uniform ingredients did not stabilize for xi=" + xi.to_scientific(20),
                           current.zeta.serialize(), current.zeta.serialize());
}

void verify_branch_continuity(const PrecisionContext& ctx) {
  auto lim = coalescence_limit_values(ctx);
  for (int side : {+1, -1}) {
    BigReal previous_a(ctx), previous_b(ctx);
    for (int k = 3; k <= 6; ++k) {
      BigReal xi = BigReal(1, ctx) + side * ten_pow(-k, ctx);
      auto ing = ingredients_at(xi, ctx);
      BigReal da = num::abs(ing.A0 - lim.A0);
      BigReal db = num::abs(ing.B0 - lim.B0);
      // Both coefficients are smooth in xi through 1, so the gap shrinks
      // roughly tenfold per rung.
      BigReal bound = ten_pow(-k + 1, ctx);
      bool ok = da < bound && db < bound && (k == 3 || (da < previous_a && db < previous_b));
      if (!ok)
        throw Error(ErrorKind::branch, "A0/B0 do not approach their coalescence values at xi=" + xi.to_scientific(10) +
                                           " (A0=" + ing.A0.to_scientific(12) + ", B0=" + ing.B0.to_scientific(12) +
                                           ")");
      previous_a = da;
      previous_b = db;
    }
  }
}

BigReal airy_brace(int n, const UniformIngredients& ing, const PrecisionContext& ctx) {
  const BigReal nn(n, ctx);
  const BigReal n13 = num::cbrt(nn);
  const BigReal n23 = n13 * n13;
  auto ai = airy::airy(n23 * ing.zeta.at(ctx), ctx);
  return ing.A0.at(ctx) / n13 * ai.ai - ing.B0.at(ctx) / n23 * ai.ai_prime;
}

BigReal theorem2_eval(int n, const UniformIngredients& ing, const PrecisionContext& ctx) {
  if (n < 2) throw Error(ErrorKind::domain, "theorem2_eval needs n >= 2");
  const BigReal x = num::euler_e(ctx) * ing.xi.at(ctx) * n;
  BigReal value = num::exp(x + ing.beta.re().at(ctx) * n) * airy_brace(n, ing, ctx);
  if ((n - 1) % 2 != 0) value = -value;
  return value;
}

BigReal theorem2_eval(int n, const BigReal& xi, const PrecisionContext& ctx) {
  if (n < 2) throw Error(ErrorKind::domain, "theorem2_eval needs n >= 2");
  return theorem2_eval(n, uniform_ingredients(xi, ctx), ctx);
}

}  // namespace touchard::uniform
