#include "touchard/numkernel.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "touchard/error.hpp"

namespace touchard::num {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

const PrecisionContext& wider(const PrecisionContext& a, const PrecisionContext& b) {
  return a.digits() >= b.digits() ? a : b;
}

std::string format_scientific(mpfr_srcptr x, int sig) {
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) < 0 ? "-inf" : "inf";
  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(sig), x, kRnd);
  std::string digits(raw);
  mpfr_free_str(raw);

  std::string out;
  if (!digits.empty() && digits.front() == '-') {
    out.push_back('-');
    digits.erase(0, 1);
  }
  long exponent = mpfr_zero_p(x) ? 0 : static_cast<long>(e10) - 1;
  out.push_back(digits.front());
  if (digits.size() > 1) {
    out.push_back('.');
    out.append(digits, 1, std::string::npos);
  }
  out.push_back('e');
  out.push_back(exponent < 0 ? '-' : '+');
  std::string mag = std::to_string(exponent < 0 ? -exponent : exponent);
  if (mag.size() < 2) mag.insert(0, "0");
  out += mag;
  return out;
}

}  // namespace

PrecisionContext::PrecisionContext(int digits, int max_escalations)
    : digits_(digits), max_escalations_(max_escalations) {
  if (digits < kMinDigits)
    throw Error(ErrorKind::invalid_precision,
                "working precision must be at least " + std::to_string(kMinDigits) + " digits, got " +
                    std::to_string(digits));
  if (max_escalations < 1)
    throw Error(ErrorKind::invalid_precision, "max_escalations must be positive");
}

mpfr_prec_t PrecisionContext::bits() const noexcept {
  return static_cast<mpfr_prec_t>(std::ceil(digits_ * 3.321928094887362)) + 16;
}

PrecisionContext PrecisionContext::from_env() {
  const char* env = std::getenv("TOUCHARD_DIGITS");
  if (env == nullptr || *env == '\0') return PrecisionContext(kDefaultDigits);
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value > std::numeric_limits<int>::max())
    throw Error(ErrorKind::invalid_precision, std::string("TOUCHARD_DIGITS is not an integer: ") + env);
  return PrecisionContext(static_cast<int>(value));
}

PrecisionContext mk_context(int digits) { return PrecisionContext(digits); }

// ---------------------------------------------------------------------------
// BigReal

BigReal::BigReal(const PrecisionContext& ctx) : ctx_(ctx) {
  mpfr_init2(value_, ctx_.bits());
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, const PrecisionContext& ctx) : ctx_(ctx) {
  mpfr_init2(value_, ctx_.bits());
  mpfr_set_si(value_, value, kRnd);
}

BigReal::BigReal(const mpz_class& value, const PrecisionContext& ctx) : ctx_(ctx) {
  mpfr_init2(value_, ctx_.bits());
  mpfr_set_z(value_, value.get_mpz_t(), kRnd);
}

BigReal::BigReal(const mpq_class& value, const PrecisionContext& ctx) : ctx_(ctx) {
  mpfr_init2(value_, ctx_.bits());
  mpfr_set_q(value_, value.get_mpq_t(), kRnd);
}

BigReal::BigReal(std::string_view literal, const PrecisionContext& ctx) : ctx_(ctx) {
  mpfr_init2(value_, ctx_.bits());
  std::string text(literal);
  char* end = nullptr;
  if (!text.empty()) mpfr_strtofr(value_, text.c_str(), &end, 10, kRnd);
  if (text.empty() || end != text.c_str() + text.size()) {
    mpfr_clear(value_);
    throw Error(ErrorKind::domain, "not a decimal number: '" + text + "'");
  }
}

BigReal::BigReal(const BigReal& other) : ctx_(other.ctx_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRnd);
}

BigReal::BigReal(BigReal&& other) noexcept : ctx_(other.ctx_) {
  // MPFR has no move; swap with a fresh minimal-precision value.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    ctx_ = other.ctx_;
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRnd);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) {
    ctx_ = other.ctx_;
    mpfr_swap(value_, other.value_);
  }
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::at(const PrecisionContext& ctx) const {
  BigReal out(ctx);
  mpfr_set(out.value_, value_, kRnd);
  return out;
}

void BigReal::widen_to(const PrecisionContext& other) {
  if (other.digits() > ctx_.digits()) {
    mpfr_prec_round(value_, other.bits(), kRnd);
    ctx_ = other;
  }
}

double BigReal::log10_abs() const noexcept {
  if (mpfr_zero_p(value_)) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpfr_get_d_2exp(&exp2, value_, kRnd);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398120;
}

std::string BigReal::to_scientific(int sig) const { return format_scientific(value_, sig); }

std::string BigReal::serialize() const {
  return format_scientific(value_, ctx_.digits()) + "@" + std::to_string(ctx_.digits());
}

BigReal BigReal::parse(std::string_view text) {
  auto at_pos = text.rfind('@');
  if (at_pos == std::string_view::npos)
    throw Error(ErrorKind::domain, "serialized real lacks '@digits' suffix: '" + std::string(text) + "'");
  std::string digits_text(text.substr(at_pos + 1));
  char* end = nullptr;
  long digits = std::strtol(digits_text.c_str(), &end, 10);
  if (digits_text.empty() || *end != '\0')
    throw Error(ErrorKind::domain, "bad digit count in '" + std::string(text) + "'");
  return BigReal(text.substr(0, at_pos), PrecisionContext(static_cast<int>(digits)));
}

BigReal BigReal::operator-() const {
  BigReal out(*this);
  mpfr_neg(out.value_, out.value_, kRnd);
  return out;
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  widen_to(rhs.ctx_);
  mpfr_add(value_, value_, rhs.value_, kRnd);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  widen_to(rhs.ctx_);
  mpfr_sub(value_, value_, rhs.value_, kRnd);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  widen_to(rhs.ctx_);
  mpfr_mul(value_, value_, rhs.value_, kRnd);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  widen_to(rhs.ctx_);
  mpfr_div(value_, value_, rhs.value_, kRnd);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRnd);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, kRnd);
  return *this;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigReal& a, long b) noexcept {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

// ---------------------------------------------------------------------------
// Real functions

namespace {

template <typename Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal out(x.context());
  fn(out.raw(), x.get(), kRnd);
  return out;
}

}  // namespace

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw Error(ErrorKind::domain, "sqrt of negative real");
  return unary(x, mpfr_sqrt);
}

BigReal cbrt(const BigReal& x) { return unary(x, mpfr_cbrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }

BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw Error(ErrorKind::domain, "log of non-positive real");
  return unary(x, mpfr_log);
}

BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal out(y.digits() >= x.digits() ? y.context() : x.context());
  mpfr_atan2(out.raw(), y.get(), x.get(), kRnd);
  return out;
}

BigReal pow(const BigReal& base, const BigReal& exponent) {
  if (base.sign() < 0) throw Error(ErrorKind::domain, "real power of negative base");
  if (base.is_zero() && exponent.sign() < 0) throw Error(ErrorKind::domain, "zero base with negative exponent");
  BigReal out(wider(base.context(), exponent.context()));
  mpfr_pow(out.raw(), base.get(), exponent.get(), kRnd);
  return out;
}

BigReal pow(const BigReal& base, long exponent) {
  if (base.is_zero() && exponent < 0) throw Error(ErrorKind::domain, "zero base with negative exponent");
  BigReal out(base.context());
  mpfr_pow_si(out.raw(), base.get(), exponent, kRnd);
  return out;
}

BigReal pi(const PrecisionContext& ctx) {
  BigReal out(ctx);
  mpfr_const_pi(out.raw(), kRnd);
  return out;
}

BigReal euler_e(const PrecisionContext& ctx) {
  BigReal one(1, ctx);
  return exp(one);
}

BigReal gamma(const BigReal& x) {
  if (x.sign() <= 0) throw Error(ErrorKind::domain, "gamma requires a positive argument");
  return unary(x, mpfr_gamma);
}

double agreeing_digits(const BigReal& a, const BigReal& b) {
  if (a == b) return 1e9;
  BigReal diff = abs(a - b);
  BigReal scale = abs(a) > abs(b) ? abs(a) : abs(b);
  if (scale.is_zero()) return 1e9;
  return scale.log10_abs() - diff.log10_abs();
}

BigReal relative_error(const BigReal& approx, const BigReal& exact) {
  if (exact.is_zero()) throw Error(ErrorKind::domain, "relative error against a zero reference");
  return abs(approx - exact) / abs(exact);
}

// ---------------------------------------------------------------------------
// BigComplex

BigComplex::BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}

BigReal BigComplex::norm() const { return re_ * re_ + im_ * im_; }

BigReal BigComplex::abs() const {
  BigReal out(context());
  mpfr_hypot(out.raw(), re_.get(), im_.get(), kRnd);
  return out;
}

std::string BigComplex::serialize() const { return re_.serialize() + ";" + im_.serialize(); }

BigComplex BigComplex::parse(std::string_view text) {
  auto sep = text.find(';');
  if (sep == std::string_view::npos)
    throw Error(ErrorKind::domain, "serialized complex must be '<re>;<im>': '" + std::string(text) + "'");
  return {BigReal::parse(text.substr(0, sep)), BigReal::parse(text.substr(sep + 1))};
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigReal re = re_ * rhs.re_ - im_ * rhs.im_;
  BigReal im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::domain, "complex division by zero");
  BigReal den = rhs.norm();
  BigReal re = (re_ * rhs.re_ + im_ * rhs.im_) / den;
  BigReal im = (im_ * rhs.re_ - re_ * rhs.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigReal& rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

BigComplex operator/(const BigReal& a, const BigComplex& b) { return BigComplex(a) / b; }
BigComplex operator+(const BigComplex& a, const BigReal& b) { return {a.re() + b, a.im()}; }
BigComplex operator-(const BigComplex& a, const BigReal& b) { return {a.re() - b, a.im()}; }

BigReal arg_branched(const BigComplex& z) {
  BigReal a = atan2(z.im(), z.re());
  if (a.sign() < 0) a += 2 * pi(a.context());
  return a;
}

namespace {

// Principal log, Im in (-pi, pi].
BigComplex log_principal(const BigComplex& z) {
  if (z.is_zero()) throw Error(ErrorKind::domain, "log of zero");
  BigReal mod = log(z.norm()) / 2;
  return {mod, atan2(z.im(), z.re())};
}

}  // namespace

BigComplex exp(const BigComplex& z) {
  BigReal scale = exp(z.re());
  return {scale * cos(z.im()), scale * sin(z.im())};
}

BigComplex log_branched(const BigComplex& z) {
  if (z.is_zero()) throw Error(ErrorKind::domain, "log_branched of zero");
  BigReal mod = log(z.norm()) / 2;
  return {mod, arg_branched(z)};
}

BigComplex sqrt(const BigComplex& z) {
  const PrecisionContext& ctx = z.context();
  if (z.is_zero()) return BigComplex(ctx);
  BigReal r = z.abs();
  if (z.re().sign() >= 0) {
    BigReal s = sqrt((r + z.re()) / 2);
    return {s, z.im() / (2 * s)};
  }
  BigReal t = sqrt((r - z.re()) / 2);
  BigReal re = abs(z.im()) / (2 * t);
  return {re, mpfr_signbit(z.im().get()) ? -t : t};
}

BigComplex cbrt(const BigComplex& z) {
  if (z.is_zero()) return BigComplex(z.context());
  if (z.is_real() && z.re().sign() > 0) return BigComplex(cbrt(z.re()));
  BigComplex l = log_principal(z);
  return exp(BigComplex(l.re() / 3, l.im() / 3));
}

BigComplex pow_real(const BigComplex& z, const BigReal& exponent) {
  if (z.is_zero()) {
    if (exponent.sign() < 0) throw Error(ErrorKind::domain, "zero base with negative exponent");
    if (exponent.is_zero()) return BigComplex(BigReal(1, z.context()));
    return BigComplex(z.context());
  }
  if (z.is_real() && z.re().sign() > 0) return BigComplex(pow(z.re(), exponent));
  BigComplex l = log_principal(z);
  return exp(l * exponent);
}

BigComplex sin(const BigComplex& z) {
  BigReal ch(z.context()), sh(z.context());
  mpfr_sinh_cosh(sh.raw(), ch.raw(), z.im().get(), kRnd);
  return {sin(z.re()) * ch, cos(z.re()) * sh};
}

BigComplex cos(const BigComplex& z) {
  BigReal ch(z.context()), sh(z.context());
  mpfr_sinh_cosh(sh.raw(), ch.raw(), z.im().get(), kRnd);
  return {cos(z.re()) * ch, -(sin(z.re()) * sh)};
}

BigComplex elementary(ElementaryFn fn, const BigComplex& z, const PrecisionContext& ctx,
                      const std::optional<BigReal>& exponent) {
  BigComplex arg = z.at(ctx);
  switch (fn) {
    case ElementaryFn::exp: return exp(arg);
    case ElementaryFn::log_branched: return log_branched(arg);
    case ElementaryFn::sqrt: return sqrt(arg);
    case ElementaryFn::cbrt: return cbrt(arg);
    case ElementaryFn::pow_real:
      if (!exponent) throw Error(ErrorKind::domain, "pow_real requires an exponent");
      return pow_real(arg, exponent->at(ctx));
    case ElementaryFn::sin: return sin(arg);
    case ElementaryFn::cos: return cos(arg);
  }
  throw Error(ErrorKind::domain, "unknown elementary function");
}

}  // namespace touchard::num
