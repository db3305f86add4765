#pragma once

// Arbitrary-precision real/complex scalars on top of MPFR. Every value carries
// the PrecisionContext it was produced under; binary operations run at the
// wider of the two operand contexts.

#include <mpfr.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace touchard::num {

inline constexpr int kMinDigits = 30;
inline constexpr int kDefaultDigits = 120;
inline constexpr int kDefaultMaxEscalations = 4;

class PrecisionContext {
 public:
  // Throws Error(invalid_precision) for digits < 30 or max_escalations < 1.
  explicit PrecisionContext(int digits, int max_escalations = kDefaultMaxEscalations);

  int digits() const noexcept { return digits_; }
  int max_escalations() const noexcept { return max_escalations_; }

  // Binary precision used for MPFR: decimal digits plus a few guard bits.
  mpfr_prec_t bits() const noexcept;

  PrecisionContext with_digits(int digits) const { return PrecisionContext(digits, max_escalations_); }
  PrecisionContext doubled() const { return with_digits(2 * digits_); }

  // Reads TOUCHARD_DIGITS; falls back to 120 when unset.
  static PrecisionContext from_env();

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int digits_;
  int max_escalations_;
};

PrecisionContext mk_context(int digits);

class BigReal {
 public:
  explicit BigReal(const PrecisionContext& ctx);
  BigReal(long value, const PrecisionContext& ctx);
  BigReal(const mpz_class& value, const PrecisionContext& ctx);
  BigReal(const mpq_class& value, const PrecisionContext& ctx);
  // Decimal literal such as "0.8" or "-1.25e3", rounded once at ctx precision.
  BigReal(std::string_view literal, const PrecisionContext& ctx);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  const PrecisionContext& context() const noexcept { return ctx_; }
  int digits() const noexcept { return ctx_.digits(); }

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr raw() noexcept { return value_; }

  // Re-rounds into another context (extension pads with zeros).
  BigReal at(const PrecisionContext& ctx) const;

  int sign() const noexcept { return mpfr_sgn(value_); }
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  // Approximate log10|x|, valid far beyond double range; -inf for zero.
  double log10_abs() const noexcept;

  // Scientific notation with `sig` significant digits, e.g. "1.4142e+00".
  std::string to_scientific(int sig) const;
  // Lossless textual form "<mantissa>e<exp>@<digits>".
  std::string serialize() const;
  static BigReal parse(std::string_view text);

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }
  friend BigReal operator*(BigReal lhs, long rhs) { return lhs *= rhs; }
  friend BigReal operator*(long lhs, BigReal rhs) { return rhs *= lhs; }
  friend BigReal operator/(BigReal lhs, long rhs) { return lhs /= rhs; }

  friend bool operator==(const BigReal& a, const BigReal& b) noexcept { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) noexcept;
  friend std::partial_ordering operator<=>(const BigReal& a, long b) noexcept;
  friend bool operator==(const BigReal& a, long b) noexcept { return mpfr_cmp_si(a.value_, b) == 0; }

 private:
  void widen_to(const PrecisionContext& other);

  PrecisionContext ctx_;
  mpfr_t value_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal cbrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);  // x > 0
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal pow(const BigReal& base, const BigReal& exponent);  // base > 0, or base == 0 with exponent > 0
BigReal pow(const BigReal& base, long exponent);

BigReal pi(const PrecisionContext& ctx);
BigReal euler_e(const PrecisionContext& ctx);

// Gamma function for x > 0; Error(domain) otherwise.
BigReal gamma(const BigReal& x);

// Number of leading significant decimal digits on which a and b agree,
// i.e. -log10(|a-b|/max(|a|,|b|)); returns a large value when equal.
double agreeing_digits(const BigReal& a, const BigReal& b);

// |approx - exact| / |exact|.
BigReal relative_error(const BigReal& approx, const BigReal& exact);

class BigComplex {
 public:
  explicit BigComplex(const PrecisionContext& ctx) : re_(ctx), im_(ctx) {}
  explicit BigComplex(BigReal re) : re_(re), im_(re.context()) {}
  BigComplex(BigReal re, BigReal im);

  const BigReal& re() const noexcept { return re_; }
  const BigReal& im() const noexcept { return im_; }
  const PrecisionContext& context() const noexcept { return re_.digits() >= im_.digits() ? re_.context() : im_.context(); }
  int digits() const noexcept { return context().digits(); }

  BigComplex at(const PrecisionContext& ctx) const { return {re_.at(ctx), im_.at(ctx)}; }

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }

  BigComplex conj() const { return {re_, -im_}; }
  BigReal norm() const;  // re^2 + im^2
  BigReal abs() const;

  std::string serialize() const;
  static BigComplex parse(std::string_view text);

  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);
  BigComplex& operator*=(const BigReal& rhs);
  BigComplex& operator/=(const BigReal& rhs);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) noexcept { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  BigReal re_;
  BigReal im_;
};

BigComplex operator/(const BigReal& a, const BigComplex& b);
BigComplex operator+(const BigComplex& a, const BigReal& b);
BigComplex operator-(const BigComplex& a, const BigReal& b);

// Argument in [0, 2pi): the branch cut runs along the positive real axis.
BigReal arg_branched(const BigComplex& z);

BigComplex exp(const BigComplex& z);
// log with Im in (0, 2pi); positive reals get the upper-edge value (Im = 0).
// Error(domain) for z == 0.
BigComplex log_branched(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);  // principal
BigComplex cbrt(const BigComplex& z);  // principal
BigComplex pow_real(const BigComplex& z, const BigReal& exponent);  // principal
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);

enum class ElementaryFn { exp, log_branched, sqrt, cbrt, pow_real, sin, cos };

// Dispatches one of the elementary functions at ctx precision. `exponent` is
// required for pow_real and ignored otherwise.
BigComplex elementary(ElementaryFn fn, const BigComplex& z, const PrecisionContext& ctx,
                      const std::optional<BigReal>& exponent = std::nullopt);

}  // namespace touchard::num
