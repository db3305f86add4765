#include "touchard/airy.hpp"

#include <cmath>
#include <vector>

#include "touchard/error.hpp"

namespace touchard::airy {

namespace {

void check_range(const BigReal& z) {
  if (!(num::abs(z) <= BigReal(static_cast<long>(kMaxArgument), z.context())))
    throw Error(ErrorKind::range, "Airy argument outside |z| <= 1e6: " + z.to_scientific(12));
}

// Decimal digits lost to cancellation in the power series: the partial sums
// grow like exp(2/3 |z|^{3/2}) while Ai stays O(1) or decays like
// exp(-2/3 z^{3/2}).
int series_guard_digits(double z) {
  double zeta = 2.0 / 3.0 * std::pow(std::fabs(z), 1.5);
  double lost = (z > 0 ? 2.0 : 1.0) * zeta / std::log(10.0);
  return static_cast<int>(std::ceil(lost)) + 10;
}

AiryWithSecond series(const BigReal& z_in, const PrecisionContext& ctx, bool want_second) {
  double zd = z_in.to_double();
  PrecisionContext work = ctx.with_digits(ctx.digits() + series_guard_digits(zd));
  const BigReal z = z_in.at(work);
  const BigReal eps = num::pow(BigReal(10, work), -static_cast<long>(work.digits() + 2));

  // f = sum a_k z^{3k}, g = sum b_k z^{3k+1}; Ai = c1 f - c2 g.
  BigReal f(1, work), fp(work), fpp(work);
  BigReal g = z, gp(1, work), gpp(work);
  BigReal a(1, work);   // a_k z^{3k}
  BigReal b = z;        // b_k z^{3k+1}
  // Derivative terms are assembled from z^{3k-1}, z^{3k-2} powers directly to
  // avoid dividing by z at the origin.
  BigReal pow_3k_m1(work), pow_3k_m2(work);  // z^{3k-1}, z^{3k-2}
  BigReal pow_3k(1, work);                   // z^{3k}
  BigReal coef_a(1, work), coef_b(1, work);  // a_k, b_k without the powers
  BigReal scale(1, work);

  for (long k = 1;; ++k) {
    coef_a /= (3 * k - 1) * (3 * k);
    coef_b /= (3 * k) * (3 * k + 1);
    pow_3k_m2 = pow_3k * z;       // z^{3(k-1)+1} = z^{3k-2}
    pow_3k_m1 = pow_3k_m2 * z;    // z^{3k-1}
    pow_3k = pow_3k_m1 * z;       // z^{3k}
    a = coef_a * pow_3k;
    b = coef_b * pow_3k * z;
    BigReal fa = coef_a * (3 * k) * pow_3k_m1;
    BigReal gb = coef_b * (3 * k + 1) * pow_3k;
    f += a;
    g += b;
    fp += fa;
    gp += gb;
    if (want_second) {
      fpp += coef_a * ((3 * k) * (3 * k - 1)) * pow_3k_m2;
      gpp += coef_b * ((3 * k + 1) * (3 * k)) * pow_3k_m1;
    }
    BigReal mag = num::abs(a) + num::abs(b) + num::abs(fa) + num::abs(gb);
    if (scale < mag) scale = mag;
    // Terms decrease once 9k^2 > |z|^3.
    if (9.0 * static_cast<double>(k) * static_cast<double>(k) > std::fabs(zd * zd * zd) + 1.0 &&
        mag <= eps * scale)
      break;
  }

  const BigReal c1 = ai_at_zero(work);
  const BigReal c2 = -ai_prime_at_zero(work);
  AiryWithSecond out{(c1 * f - c2 * g).at(ctx), (c1 * fp - c2 * gp).at(ctx), BigReal(ctx)};
  if (want_second) out.ai_second = (c1 * fpp - c2 * gpp).at(ctx);
  return out;
}

AiryValue asymptotic(const BigReal& z_in, const PrecisionContext& ctx) {
  const PrecisionContext work = ctx.with_digits(ctx.digits() + 5);
  const BigReal z = z_in.at(work);
  const bool positive = z.sign() > 0;
  const BigReal x = num::abs(z);
  const BigReal zeta = 2 * num::pow(x, BigReal("1.5", work)) / 3;
  const BigReal quarter = num::pow(x, BigReal("0.25", work));
  const BigReal sqrt_pi = num::sqrt(num::pi(work));

  // u_k / zeta^k and v_k / zeta^k of the large-argument expansions.
  // Terms u_k / zeta^k shrink while (roughly) k < 2 zeta; keep adding until
  // the next term would be larger than the current one.
  std::vector<BigReal> u_terms{BigReal(1, work)};
  std::vector<BigReal> v_terms{BigReal(1, work)};
  BigReal u(1, work);
  const BigReal eps = num::pow(BigReal(10, work), -static_cast<long>(work.digits() + 2));
  for (long k = 1; k < 100000; ++k) {
    u *= BigReal((6 * k - 5) * (6 * k - 3), work) * (6 * k - 1);
    u /= BigReal((2 * k - 1) * 216, work) * k;
    u /= zeta;
    BigReal v = -u * (6 * k + 1) / (6 * k - 1);
    if (num::abs(u) >= num::abs(u_terms.back()) && k > 1) break;
    u_terms.push_back(u);
    v_terms.push_back(v);
    if (num::abs(u) <= eps) break;
  }

  if (positive) {
    BigReal su(work), sv(work);
    for (std::size_t k = 0; k < u_terms.size(); ++k) {
      if (k % 2 == 0) {
        su += u_terms[k];
        sv += v_terms[k];
      } else {
        su -= u_terms[k];
        sv -= v_terms[k];
      }
    }
    BigReal decay = num::exp(-zeta) / (2 * sqrt_pi);
    return {(decay / quarter * su).at(ctx), (-(decay * quarter * sv)).at(ctx), AiryMethod::asymptotic_pos};
  }

  // Oscillatory side: even/odd parts of the same series.
  BigReal ue(work), uo(work), ve(work), vo(work);
  for (std::size_t k = 0; k < u_terms.size(); ++k) {
    bool neg = (k / 2) % 2 == 1;
    if (k % 2 == 0) {
      ue += neg ? -u_terms[k] : u_terms[k];
      ve += neg ? -v_terms[k] : v_terms[k];
    } else {
      uo += neg ? -u_terms[k] : u_terms[k];
      vo += neg ? -v_terms[k] : v_terms[k];
    }
  }
  BigReal phase = zeta - num::pi(work) / 4;
  BigReal c = num::cos(phase), s = num::sin(phase);
  BigReal ai = (c * ue + s * uo) / (sqrt_pi * quarter);
  BigReal aip = quarter * (s * ve - c * vo) / sqrt_pi;
  return {ai.at(ctx), aip.at(ctx), AiryMethod::asymptotic_neg};
}

}  // namespace

const char* to_string(AiryMethod method) noexcept {
  switch (method) {
    case AiryMethod::maclaurin: return "maclaurin";
    case AiryMethod::asymptotic_pos: return "asymptotic_pos";
    case AiryMethod::asymptotic_neg: return "asymptotic_neg";
  }
  return "unknown";
}

BigReal ai_at_zero(const PrecisionContext& ctx) {
  BigReal three(3, ctx);
  return num::pow(three, BigReal(mpq_class(-2, 3), ctx)) / num::gamma(BigReal(mpq_class(2, 3), ctx));
}

BigReal ai_prime_at_zero(const PrecisionContext& ctx) {
  BigReal three(3, ctx);
  return -(num::pow(three, BigReal(mpq_class(-1, 3), ctx)) / num::gamma(BigReal(mpq_class(1, 3), ctx)));
}

double asymptotic_threshold(const PrecisionContext& ctx) {
  // Smallest remainder ~ exp(-2 zeta); need 2 zeta / ln 10 >= digits + 5.
  double zeta = 0.5 * (ctx.digits() + 5) * std::log(10.0);
  return std::pow(1.5 * zeta, 2.0 / 3.0);
}

AiryValue airy_maclaurin(const BigReal& z, const PrecisionContext& ctx) {
  check_range(z);
  auto s = series(z, ctx, false);
  return {s.ai, s.ai_prime, AiryMethod::maclaurin};
}

AiryWithSecond airy_maclaurin_second(const BigReal& z, const PrecisionContext& ctx) {
  check_range(z);
  return series(z, ctx, true);
}

AiryValue airy_asymptotic(const BigReal& z, const PrecisionContext& ctx) {
  check_range(z);
  if (z.is_zero()) throw Error(ErrorKind::domain, "asymptotic Airy expansion at z = 0");
  return asymptotic(z, ctx);
}

AiryValue airy(const BigReal& z, const PrecisionContext& ctx, double switchover) {
  check_range(z);
  double mag = std::fabs(z.to_double());
  if (mag > switchover && mag >= asymptotic_threshold(ctx)) return asymptotic(z, ctx);
  return airy_maclaurin(z, ctx);
}

}  // namespace touchard::airy
