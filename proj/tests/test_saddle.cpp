#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "touchard/error.hpp"
#include "touchard/saddle.hpp"

using namespace touchard;
using num::BigComplex;
using num::BigReal;
using num::PrecisionContext;
using saddle::PhaseParams;
using saddle::SaddleKind;

namespace {

BigReal ten_pow(long e, const PrecisionContext& ctx) { return num::pow(BigReal(10, ctx), e); }

BigReal inv_e(const PrecisionContext& ctx) { return BigReal(1, ctx) / num::euler_e(ctx); }

}  // namespace

TEST_CASE("psi at t = -1") {
  auto ctx = num::mk_context(50);
  BigComplex minus_one(BigReal(-1, ctx));
  auto p = saddle::psi(minus_one, inv_e(ctx), ctx);
  CHECK(num::agreeing_digits(p.re(), BigReal(-1, ctx)) >= 45);
  CHECK(num::agreeing_digits(p.im(), -num::pi(ctx)) >= 45);
  auto q = saddle::psi(minus_one, BigReal(1, ctx), ctx);
  CHECK(num::agreeing_digits(q.re(), -inv_e(ctx)) >= 45);
  CHECK(num::agreeing_digits(q.im(), -num::pi(ctx)) >= 45);
}

TEST_CASE("psi under conjugation") {
  auto ctx = num::mk_context(50);
  BigReal mu("0.7", ctx);
  for (const char* re : {"-2.5", "-0.3", "0.8"}) {
    for (const char* im : {"0.2", "1.7", "4"}) {
      BigComplex t(BigReal(re, ctx), BigReal(im, ctx));
      auto a = saddle::psi(t, mu, ctx);
      auto b = saddle::psi(t.conj(), mu, ctx);
      CHECK(num::agreeing_digits(a.re(), b.re()) >= 45);
      CHECK(num::abs(a.im() + b.im() + 2 * num::pi(ctx)) < ten_pow(-45, ctx));
    }
  }
}

TEST_CASE("psi rejects the branch cut") {
  auto ctx = num::mk_context(40);
  CHECK_THROWS_AS(saddle::psi(BigComplex(BigReal(2, ctx)), BigReal(1, ctx), ctx), Error);
  CHECK_THROWS_AS(saddle::psi(BigComplex(ctx), BigReal(1, ctx), ctx), Error);
  CHECK_THROWS_AS(saddle::psi_derivs(BigComplex(ctx), BigReal(1, ctx), ctx), Error);
}

TEST_CASE("derivatives at the double saddle") {
  auto ctx = num::mk_context(50);
  auto d = saddle::psi_derivs(BigComplex(BigReal(-1, ctx)), inv_e(ctx), ctx);
  CHECK(num::abs(d.d1.re()) < ten_pow(-45, ctx));
  CHECK(num::abs(d.d2.re()) < ten_pow(-45, ctx));
  CHECK(num::agreeing_digits(d.d3.re(), BigReal(1, ctx)) >= 45);
  CHECK(num::agreeing_digits(d.d4.re(), BigReal(5, ctx)) >= 45);
}

TEST_CASE("derivatives against a finite-difference check in double") {
  auto ctx = num::mk_context(40);
  BigReal mu("0.45", ctx);
  std::complex<double> t(-0.6, 0.9);
  BigComplex tb(BigReal("-0.6", ctx), BigReal("0.9", ctx));
  auto d = saddle::psi_derivs(tb, mu, ctx);
  auto f = [](std::complex<double> z) { return -std::exp(z) / 0.45 - std::log(z); };
  const double h = 1e-4;
  auto fd1 = (f(t + h) - f(t - h)) / (2 * h);
  auto fd2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
  CHECK(std::abs(std::complex<double>(d.d1.re().to_double(), d.d1.im().to_double()) - fd1) < 1e-6);
  CHECK(std::abs(std::complex<double>(d.d2.re().to_double(), d.d2.im().to_double()) - fd2) < 1e-5);
}

TEST_CASE("simplified psi'' matches the general form at a saddle") {
  auto ctx = num::mk_context(60);
  BigReal mu("0.2", ctx);
  BigComplex t0(saddle::lambert_w0(-mu, ctx));
  auto general = saddle::psi_derivs(t0, mu, ctx).d2;
  auto simplified = saddle::psi2_at_saddle(t0);
  CHECK(num::agreeing_digits(general.re(), simplified.re()) >= 52);
}

TEST_CASE("Lambert W against bisection") {
  auto ctx = num::mk_context(50);
  BigReal y("-0.2", ctx);
  BigReal w0 = saddle::lambert_w0(y, ctx);
  BigReal wm1 = saddle::lambert_wm1(y, ctx);
  CHECK(std::fabs(w0.to_double() - static_cast<double>(oracle::lambert_bisect(-0.2L, -1, 0))) < 1e-15);
  CHECK(std::fabs(wm1.to_double() - static_cast<double>(oracle::lambert_bisect(-0.2L, -10, -1))) < 1e-14);
  CHECK(std::fabs(w0.to_double() + 0.2591711018) < 1e-10);
  CHECK(std::fabs(wm1.to_double() + 2.5426413577) < 1e-10);
  for (const BigReal& w : {w0, wm1}) CHECK(num::abs(w * num::exp(w) - y) < ten_pow(-42, ctx));
}

TEST_CASE("Lambert W at the branch point and outside the domain") {
  auto ctx = num::mk_context(50);
  BigReal y = -inv_e(ctx);
  CHECK(num::abs(saddle::lambert_w0(y, ctx) + BigReal(1, ctx)) < ten_pow(-20, ctx));
  CHECK(num::abs(saddle::lambert_wm1(y, ctx) + BigReal(1, ctx)) < ten_pow(-20, ctx));
  CHECK_THROWS_AS(saddle::lambert_w0(BigReal("0.1", ctx), ctx), Error);
  CHECK_THROWS_AS(saddle::lambert_wm1(BigReal("-0.5", ctx), ctx), Error);
  CHECK_THROWS_AS(saddle::lambert_w0(BigReal(0, ctx), ctx), Error);
}

TEST_CASE("W branch ordering") {
  auto ctx = num::mk_context(40);
  for (const char* ys : {"-0.3678", "-0.3", "-0.1", "-0.01", "-1e-6"}) {
    BigReal y(ys, ctx);
    CHECK(saddle::lambert_wm1(y, ctx) < -1);
    CHECK(saddle::lambert_w0(y, ctx) > -1);
  }
}

TEST_CASE("saddle classification in the three regimes") {
  auto ctx = num::mk_context(50);
  auto d = saddle::solve_saddles(PhaseParams::from_xi(BigReal(1, ctx)), ctx);
  CHECK(d.kind == SaddleKind::double_saddle);
  CHECK(d.t0 == BigComplex(BigReal(-1, ctx)));
  CHECK(d.t1 == BigComplex(BigReal(-1, ctx)));

  BigReal mu("0.2", ctx);
  auto r = saddle::solve_saddles(PhaseParams::from_mu(mu), ctx);
  CHECK(r.kind == SaddleKind::real_pair);
  CHECK(num::agreeing_digits(r.t0.re(), saddle::lambert_w0(-mu, ctx)) >= 45);
  CHECK(num::agreeing_digits(r.t1.re(), saddle::lambert_wm1(-mu, ctx)) >= 45);
  CHECK(r.t0.im().is_zero());
  CHECK(r.t1.im().is_zero());
  CHECK(r.t0.re() > -1);
  CHECK(r.t0.re() < 0);
  CHECK(r.t1.re() < -1);

  auto c = saddle::solve_saddles(PhaseParams::from_xi(BigReal("0.8", ctx)), ctx);
  CHECK(c.kind == SaddleKind::conjugate_pair);
  CHECK(c.t0.im() > 0);
  CHECK(c.t1 == c.t0.conj());
  CHECK(c.residual0 < BigReal("1e-30", ctx));
  CHECK(c.residual1 < BigReal("1e-30", ctx));
}

TEST_CASE("phase parameters satisfy mu e xi = 1") {
  auto ctx = num::mk_context(60);
  for (const char* xs : {"0.5", "0.8", "1", "1.4", "3"}) {
    auto p = PhaseParams::from_xi(BigReal(xs, ctx));
    CHECK(num::agreeing_digits(p.mu * num::euler_e(ctx) * p.xi, BigReal(1, ctx)) >= 55);
  }
  CHECK(saddle::is_coalescent(BigReal(1, ctx), ctx));
  CHECK_FALSE(saddle::is_coalescent(BigReal("1.0000001", ctx), ctx));
}

TEST_CASE("residual certificates across regimes") {
  for (int digits : {40, 120}) {
    auto ctx = num::mk_context(digits);
    for (const char* xs : {"0.3", "0.5", "0.8", "0.95", "0.999", "1", "1.001", "1.05", "1.4", "3", "10"}) {
      auto params = PhaseParams::from_xi(BigReal(xs, ctx));
      auto s = saddle::solve_saddles(params, ctx);
      BigReal bound = ten_pow(-(digits - 10), ctx) * params.mu;
      CHECK(s.residual0 < bound);
      CHECK(s.residual1 < bound);
      CHECK(saddle::saddle_residual(s.t0, params.mu) < bound);
    }
  }
}

TEST_CASE("saddles approach -1 like sqrt|xi - 1|") {
  auto ctx = num::mk_context(60);
  for (int side : {+1, -1}) {
    for (int k = 2; k <= 6; ++k) {
      BigReal xi = BigReal(1, ctx) + side * num::pow(BigReal(10, ctx), -k);
      auto s = saddle::solve_saddles(PhaseParams::from_xi(xi), ctx);
      double model = std::sqrt(2 * std::fabs(1 / xi.to_double() - 1));
      for (const auto* t : {&s.t0, &s.t1}) {
        double gap = (*t + BigReal(1, ctx)).abs().to_double();
        CHECK(gap < 2 * model);
        CHECK(gap > model / 2);
      }
    }
  }
}

TEST_CASE("conjugate pair branch identity") {
  auto ctx = num::mk_context(60);
  for (const char* xs : {"0.3", "0.8", "0.9", "0.99"}) {
    auto s = saddle::solve_saddles(PhaseParams::from_xi(BigReal(xs, ctx)), ctx);
    auto sum = saddle::psi_at_saddle(s.t0) + saddle::psi_at_saddle(s.t1);
    CHECK(num::abs(sum.im() + 2 * num::pi(ctx)) < ten_pow(-(60 - 8), ctx));
  }
}
