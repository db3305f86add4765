#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "touchard/error.hpp"
#include "touchard/escalation.hpp"
#include "touchard/numkernel.hpp"

using namespace touchard;
using num::BigComplex;
using num::BigReal;
using num::PrecisionContext;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::domain;
}

bool bit_identical(const BigReal& a, const BigReal& b) {
  return a.context() == b.context() && (a == b || (!a.is_finite() && !b.is_finite()));
}

}  // namespace

TEST_CASE("context creation honours the 30 digit floor") {
  CHECK(num::mk_context(30).digits() == 30);
  CHECK(num::mk_context(120).digits() == 120);
  CHECK(kind_of([] { num::mk_context(10); }) == ErrorKind::invalid_precision);
  CHECK(kind_of([] { PrecisionContext(40, 0); }) == ErrorKind::invalid_precision);
}

TEST_CASE("values report the digits of their context") {
  auto ctx = num::mk_context(45);
  BigReal a(3, ctx);
  CHECK(num::exp(a).digits() == 45);
  CHECK(num::gamma(a).digits() == 45);
  CHECK(num::log_branched(BigComplex(a)).digits() == 45);
}

TEST_CASE("environment default precision") {
  unsetenv("TOUCHARD_DIGITS");
  CHECK(PrecisionContext::from_env().digits() == num::kDefaultDigits);
  setenv("TOUCHARD_DIGITS", "64", 1);
  CHECK(PrecisionContext::from_env().digits() == 64);
  setenv("TOUCHARD_DIGITS", "12", 1);
  CHECK(kind_of([] { PrecisionContext::from_env(); }) == ErrorKind::invalid_precision);
  setenv("TOUCHARD_DIGITS", "lots", 1);
  CHECK_THROWS_AS(PrecisionContext::from_env(), Error);
  unsetenv("TOUCHARD_DIGITS");
}

TEST_CASE("elementary: exp(0) and log of -1") {
  auto ctx = num::mk_context(50);
  BigComplex zero(ctx);
  auto e0 = num::elementary(num::ElementaryFn::exp, zero, ctx);
  CHECK(e0.re() == 1);
  CHECK(e0.im().is_zero());
  auto l = num::elementary(num::ElementaryFn::log_branched, BigComplex(BigReal(-1, ctx)), ctx);
  CHECK(l.re().is_zero());
  CHECK(num::agreeing_digits(l.im(), num::pi(ctx)) >= 45);
}

TEST_CASE("sqrt(2) at 50 digits against integer Newton at 100 digits") {
  auto ctx = num::mk_context(50);
  auto r = num::elementary(num::ElementaryFn::sqrt, BigComplex(BigReal(2, ctx)), ctx);
  std::string reference = oracle::sqrt2_digits(100);
  std::string expected = reference.substr(0, 1) + "." + reference.substr(1, 44);
  CHECK(r.re().to_scientific(46).substr(0, 46) == expected);
  CHECK(r.im().is_zero());
}

TEST_CASE("elementary domain errors") {
  auto ctx = num::mk_context(40);
  BigComplex zero(ctx);
  CHECK(kind_of([&] { num::elementary(num::ElementaryFn::log_branched, zero, ctx); }) == ErrorKind::domain);
  CHECK(kind_of([&] { num::elementary(num::ElementaryFn::pow_real, zero, ctx, BigReal(-1, ctx)); }) ==
        ErrorKind::domain);
  CHECK(num::elementary(num::ElementaryFn::pow_real, zero, ctx, BigReal(2, ctx)).is_zero());
}

TEST_CASE("elementary functions agree with double precision references") {
  auto ctx = num::mk_context(40);
  BigComplex z(BigReal("0.3", ctx), BigReal("-1.7", ctx));
  const std::complex<double> zd(0.3, -1.7);
  auto close = [](const BigComplex& a, std::complex<double> b) {
    return std::abs(std::complex<double>(a.re().to_double(), a.im().to_double()) - b) < 1e-13 * (1 + std::abs(b));
  };
  CHECK(close(num::elementary(num::ElementaryFn::exp, z, ctx), std::exp(zd)));
  CHECK(close(num::elementary(num::ElementaryFn::sqrt, z, ctx), std::sqrt(zd)));
  CHECK(close(num::elementary(num::ElementaryFn::sin, z, ctx), std::sin(zd)));
  CHECK(close(num::elementary(num::ElementaryFn::cos, z, ctx), std::cos(zd)));
  CHECK(close(num::elementary(num::ElementaryFn::cbrt, z, ctx), std::pow(zd, 1.0 / 3)));
  CHECK(close(num::elementary(num::ElementaryFn::pow_real, z, ctx, BigReal("2.5", ctx)), std::pow(zd, 2.5)));
  // Lower half plane: the branch adds 2 pi to the principal logarithm.
  CHECK(close(num::elementary(num::ElementaryFn::log_branched, z, ctx),
              std::log(zd) + std::complex<double>(0, 2 * std::numbers::pi)));
}

TEST_CASE("log branch keeps Im in (0, 2pi) off the cut") {
  auto ctx = num::mk_context(40);
  const BigReal two_pi = 2 * num::pi(ctx);
  for (double re : {-3.0, -1.0, -1e-3, 0.0, 1e-3, 2.0}) {
    for (double im : {-5.0, -1e-6, 1e-6, 0.5, 4.0}) {
      BigComplex t(BigReal(std::to_string(re), ctx), BigReal(std::to_string(im), ctx));
      BigReal arg = num::log_branched(t).im();
      CHECK(arg > 0);
      CHECK(arg < two_pi);
      CHECK((im > 0) == (arg < num::pi(ctx)));
    }
  }
  // continuity across the negative real axis
  BigComplex above(BigReal(-2, ctx), BigReal("1e-30", ctx));
  BigComplex below(BigReal(-2, ctx), BigReal("-1e-30", ctx));
  CHECK(num::abs(num::log_branched(above).im() - num::log_branched(below).im()) < BigReal("1e-29", ctx));
}

TEST_CASE("gamma special values") {
  auto ctx = num::mk_context(60);
  CHECK(num::agreeing_digits(num::gamma(BigReal(1, ctx)), BigReal(1, ctx)) >= 55);
  CHECK(num::agreeing_digits(num::gamma(BigReal(mpq_class(1, 2), ctx)), num::sqrt(num::pi(ctx))) >= 55);
  long double reference = oracle::gamma_one_third();
  CHECK(std::fabs(num::gamma(BigReal(mpq_class(1, 3), ctx)).to_double() - static_cast<double>(reference)) < 1e-10);
  CHECK(num::gamma(BigReal(mpq_class(1, 3), ctx)).to_scientific(11) == "2.6789385347e+00");
  CHECK(kind_of([&] { num::gamma(BigReal(0, ctx)); }) == ErrorKind::domain);
  CHECK(kind_of([&] { num::gamma(BigReal(-2, ctx)); }) == ErrorKind::domain);
}

TEST_CASE("gamma functional equation at 60 digits") {
  auto ctx = num::mk_context(60);
  for (auto q : {mpq_class(1, 3), mpq_class(1, 2), mpq_class(2, 3), mpq_class(4, 3), mpq_class(7, 3)}) {
    BigReal x(q, ctx);
    BigReal lhs = num::gamma(x + BigReal(1, ctx));
    BigReal rel = num::abs(lhs - x * num::gamma(x)) / lhs;
    CHECK(rel < num::pow(BigReal(10, ctx), -52L));
  }
}

TEST_CASE("determinism: repeated evaluations are bit-identical") {
  auto ctx = num::mk_context(80);
  BigComplex z(BigReal("-0.75", ctx), BigReal("1.25", ctx));
  for (auto fn : {num::ElementaryFn::exp, num::ElementaryFn::log_branched, num::ElementaryFn::sqrt,
                  num::ElementaryFn::cbrt, num::ElementaryFn::sin, num::ElementaryFn::cos}) {
    auto a = num::elementary(fn, z, ctx);
    auto b = num::elementary(fn, z, ctx);
    CHECK(bit_identical(a.re(), b.re()));
    CHECK(bit_identical(a.im(), b.im()));
  }
  CHECK(bit_identical(num::gamma(BigReal(mpq_class(2, 3), ctx)), num::gamma(BigReal(mpq_class(2, 3), ctx))));
}

TEST_CASE("precision monotonicity: d and 2d agree to d - 5 digits") {
  for (int d : {30, 50, 90}) {
    auto lo = num::mk_context(d);
    auto hi = lo.doubled();
    auto at = [](const PrecisionContext& c) { return BigComplex(BigReal("0.4", c), BigReal("2.2", c)); };
    for (auto fn : {num::ElementaryFn::exp, num::ElementaryFn::log_branched, num::ElementaryFn::sqrt,
                    num::ElementaryFn::sin}) {
      auto a = num::elementary(fn, at(lo), lo);
      auto b = num::elementary(fn, at(hi), hi);
      CHECK(num::agreeing_digits(a.re(), b.re()) >= d - 5);
      CHECK(num::agreeing_digits(a.im(), b.im()) >= d - 5);
    }
    CHECK(num::agreeing_digits(num::gamma(BigReal(mpq_class(5, 3), lo)), num::gamma(BigReal(mpq_class(5, 3), hi))) >=
          d - 5);
  }
}

TEST_CASE("serialization round trip") {
  auto ctx = num::mk_context(30);
  BigReal parsed = BigReal::parse("-1.234567890123456789e+02@30");
  CHECK(parsed.digits() == 30);
  CHECK(parsed.to_scientific(19) == "-1.234567890123456789e+02");
  for (int d : {30, 64, 150}) {
    auto c = num::mk_context(d);
    BigReal x = num::exp(BigReal(mpq_class(-7, 3), c)) * num::pi(c);
    BigReal back = BigReal::parse(x.serialize());
    CHECK(back.digits() == d);
    CHECK(num::agreeing_digits(x, back) >= d - 2);
    BigComplex z(x, -x / 3);
    BigComplex zb = BigComplex::parse(z.serialize());
    CHECK(num::agreeing_digits(zb.re(), z.re()) >= d - 2);
    CHECK(num::agreeing_digits(zb.im(), z.im()) >= d - 2);
  }
  CHECK_THROWS_AS(BigReal::parse("1.5e3"), Error);
  CHECK_THROWS_AS(BigReal("1.2.3", ctx), Error);
}

TEST_CASE("complex conjugation and modulus") {
  auto ctx = num::mk_context(40);
  BigComplex z(BigReal("1.5", ctx), BigReal("-2.25", ctx));
  CHECK(z.conj().conj() == z);
  CHECK(z.norm() == z.re() * z.re() + z.im() * z.im());
  CHECK(num::agreeing_digits(z.abs() * z.abs(), z.norm()) >= 38);
}

TEST_CASE("escalation returns on agreement and reports exhaustion") {
  auto ctx = PrecisionContext(30, 2);
  auto stable = num::escalate_until_stable([](const PrecisionContext& c) { return num::pi(c); }, ctx, 20, "pi");
  CHECK(stable.verified);
  CHECK(stable.value.digits() == 30);
  CHECK(stable.working_digits == 60);
  // A value that changes by 1% at every level never stabilises.
  auto drifting = [](const PrecisionContext& c) { return BigReal(1, c) + BigReal(mpq_class(c.digits(), 100), c); };
  try {
    num::escalate_until_stable(drifting, ctx, 20, "drift");
    FAIL("expected exhaustion");
  } catch (const PrecisionExhausted& e) {
    CHECK(e.kind() == ErrorKind::precision_exhausted);
    CHECK_FALSE(e.previous_estimate().empty());
    CHECK_FALSE(e.last_estimate().empty());
    CHECK(exit_code(e.kind()) == 3);
  }
}

TEST_CASE("exit codes by error kind") {
  CHECK(exit_code(ErrorKind::domain) == 2);
  CHECK(exit_code(ErrorKind::range) == 2);
  CHECK(exit_code(ErrorKind::invalid_precision) == 2);
  CHECK(exit_code(ErrorKind::precision_exhausted) == 3);
  CHECK(exit_code(ErrorKind::branch) == 4);
  CHECK(exit_code(ErrorKind::series_consistency) == 4);
}
