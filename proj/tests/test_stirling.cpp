#include "doctest.h"
#include "oracles.hpp"
#include "touchard/error.hpp"
#include "touchard/stirling.hpp"

using namespace touchard;
using exact::StirlingTriangle;
using num::BigReal;
using num::PrecisionContext;

TEST_CASE("triangle matches brute-force partition counts") {
  auto tri = StirlingTriangle::build(9);
  CHECK(tri(4, 2) == 7);
  for (int n = 0; n <= 9; ++n) {
    auto counts = oracle::partitions_by_blocks(n);
    for (int k = 0; k <= n; ++k) CHECK(tri(n, k) == counts[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("triangle boundary values and recurrence") {
  auto tri = StirlingTriangle::build(200);
  CHECK(tri(0, 0) == 1);
  for (int n = 1; n <= 200; ++n) {
    CHECK(tri(n, 0) == 0);
    CHECK(tri(n, 1) == 1);
    CHECK(tri(n, n) == 1);
    for (int k = 1; k <= n - 1; ++k) REQUIRE(tri(n, k) == k * tri(n - 1, k) + tri(n - 1, k - 1));
  }
  CHECK(tri.row(5).size() == 6);
}

TEST_CASE("triangle capacity") {
  CHECK_THROWS_AS(StirlingTriangle::build(10001), Error);
  CHECK_THROWS_AS(StirlingTriangle::build(-1), Error);
  try {
    StirlingTriangle::build(10001);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capacity);
  }
}

TEST_CASE("small exact values") {
  auto ctx = num::mk_context(40);
  auto tri = StirlingTriangle::build(10);
  const BigReal minus_one(-1, ctx);
  CHECK(exact::touchard_exact(2, minus_one, tri, ctx).value.is_zero());
  CHECK(exact::touchard_exact(3, minus_one, tri, ctx).value == 1);
  CHECK(exact::touchard_exact(0, BigReal("3.7", ctx), tri, ctx).value == 1);
  CHECK(exact::touchard_recurrence(1, minus_one, ctx) == -1);
  CHECK(exact::touchard_recurrence(2, minus_one, ctx).is_zero());
  auto bell5 = oracle::partitions_by_blocks(5);
  long b5 = 0;
  for (long c : bell5) b5 += c;
  CHECK(b5 == 52);
  CHECK(exact::touchard_recurrence(5, BigReal(1, ctx), ctx) == b5);
  CHECK(exact::scaled_touchard(0, minus_one, tri, ctx).value == 1);
  CHECK(exact::scaled_touchard(2, minus_one, tri, ctx).value.is_zero());
  CHECK_THROWS_AS(exact::touchard_exact(11, minus_one, tri, ctx), Error);
}

TEST_CASE("scaled value at the coalescence point n = 50 carries the (-1)^{n-1} sign") {
  auto ctx = num::mk_context(60);
  auto tri = StirlingTriangle::build(50);
  auto v = exact::scaled_touchard(49, exact::negated_coalescence_argument(50, "1"), tri, ctx);
  CHECK(v.value.is_finite());
  CHECK(v.value.sign() == -1);
}

TEST_CASE("exact sum and recurrence agree for n <= 60") {
  auto ctx = num::mk_context(40);
  auto tri = StirlingTriangle::build(60);
  for (int n = 0; n <= 60; ++n) {
    for (int which = 0; which < 3; ++which) {
      exact::ArgumentFn z = which == 0   ? exact::fixed_argument(BigReal(-1, ctx))
                            : which == 1 ? exact::fixed_argument(BigReal(-5, ctx))
                                         : exact::negated_coalescence_argument(n, "1");
      auto a = exact::touchard_exact(n, z, tri, ctx);
      BigReal b = exact::touchard_recurrence(n, z, ctx);
      if (a.value.is_zero()) {
        CHECK(num::abs(b) < BigReal("1e-25", ctx));
      } else {
        CHECK(num::agreeing_digits(a.value, b) >= ctx.digits() - 10);
      }
    }
  }
}

TEST_CASE("row sums equal T_n(1) exactly") {
  auto ctx = num::mk_context(100);
  auto tri = StirlingTriangle::build(60);
  for (int n = 0; n <= 60; ++n) {
    mpz_class sum = 0;
    for (const auto& s : tri.row(n)) sum += s;
    CHECK(exact::touchard_exact(n, BigReal(1, ctx), tri, ctx).value == BigReal(sum, ctx));
    auto scaled = exact::scaled_touchard(n, BigReal(1, ctx), tri, ctx).value;
    CHECK(num::agreeing_digits(scaled * BigReal(exact::factorial(n), ctx), BigReal(sum, ctx)) >= 95);
  }
}

TEST_CASE("sign law near coalescence") {
  auto ctx = num::mk_context(40);
  auto tri = StirlingTriangle::build(121);
  for (int n = 10; n <= 121; ++n) {
    auto v = exact::scaled_touchard(n - 1, exact::negated_coalescence_argument(n, "1"), tri, ctx);
    REQUIRE(v.value.sign() == ((n - 1) % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("cancellation report for n = 121") {
  auto ctx = num::mk_context(60);
  auto tri = StirlingTriangle::build(121);
  auto v = exact::touchard_exact(121, exact::negated_coalescence_argument(121, "1"), tri, ctx);
  CHECK(v.cancellation_digits > 0);
  CHECK(v.verified);
  CHECK(v.working_digits > ctx.digits());
}

TEST_CASE("escalation cap yields precision-exhausted with both estimates") {
  PrecisionContext ctx(30, 1);
  auto tri = StirlingTriangle::build(121);
  try {
    exact::touchard_exact(121, exact::negated_coalescence_argument(121, "1"), tri, ctx);
    FAIL("expected precision exhaustion");
  } catch (const PrecisionExhausted& e) {
    CHECK(e.kind() == ErrorKind::precision_exhausted);
    CHECK_FALSE(e.previous_estimate().empty());
    CHECK_FALSE(e.last_estimate().empty());
  }
}

TEST_CASE("factorials are exact") {
  CHECK(exact::factorial(0) == 1);
  CHECK(exact::factorial(20) == mpz_class("2432902008176640000"));
}
