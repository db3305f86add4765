#include "touchard/saddle.hpp"

#include <sstream>
#include <vector>

#include "touchard/error.hpp"

namespace touchard::saddle {

namespace {

constexpr int kMaxNewtonIterations = 200;

BigReal ten_pow(long exponent, const PrecisionContext& ctx) { return num::pow(BigReal(10, ctx), exponent); }

BigComplex from_real(const BigReal& x) { return BigComplex(x); }

// Halley iteration on w e^w = y from the given seed.
BigReal halley_lambert(BigReal w, const BigReal& y, const PrecisionContext& ctx) {
  const BigReal tol = ten_pow(-ctx.digits(), ctx);
  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    BigReal ew = num::exp(w);
    BigReal f = w * ew - y;
    if (f.is_zero()) return w;
    BigReal wp1 = w + BigReal(1, ctx);
    if (wp1.is_zero()) return w;
    BigReal denom = ew * wp1 - (w + BigReal(2, ctx)) * f / (2 * wp1);
    BigReal step = f / denom;
    w -= step;
    if (num::abs(step) <= tol * num::abs(w)) return w;
  }
  throw Error(ErrorKind::solver, "Lambert W Halley iteration did not converge for y=" + y.to_scientific(20));
}

// p = sqrt(2(e y + 1)); the branch-point expansion is W = -1 +/- p - p^2/3 +/- 11 p^3/72.
struct BranchPoint {
  bool at_branch_point;
  BigReal p;
};

BranchPoint branch_distance(const BigReal& y, const PrecisionContext& ctx) {
  if (y.sign() >= 0) throw Error(ErrorKind::domain, "Lambert W real branches need y in [-1/e, 0)");
  BigReal p2 = 2 * (num::euler_e(ctx) * y + BigReal(1, ctx));
  BigReal tol = ten_pow(-(ctx.digits() - 5), ctx);
  if (p2.sign() < 0) {
    if (num::abs(p2) > tol) throw Error(ErrorKind::domain, "Lambert W argument below -1/e: " + y.to_scientific(20));
    return {true, BigReal(ctx)};
  }
  if (p2 <= tol * tol) return {true, BigReal(ctx)};
  return {false, num::sqrt(p2)};
}

BigReal branch_seed(const BigReal& p, int sign, const PrecisionContext& ctx) {
  BigReal p2 = p * p;
  BigReal w = BigReal(-1, ctx) + sign * p - p2 / 3;
  w += sign * (11 * p2 * p / 72);
  return w;
}

}  // namespace

const char* to_string(SaddleKind kind) noexcept {
  switch (kind) {
    case SaddleKind::real_pair: return "real_pair";
    case SaddleKind::double_saddle: return "double";
    case SaddleKind::conjugate_pair: return "conjugate_pair";
  }
  return "unknown";
}

PhaseParams PhaseParams::from_xi(const BigReal& xi) {
  if (xi.sign() <= 0) throw Error(ErrorKind::domain, "xi must be positive");
  BigReal mu = BigReal(1, xi.context()) / (num::euler_e(xi.context()) * xi);
  return {mu, xi};
}

PhaseParams PhaseParams::from_mu(const BigReal& mu) {
  if (mu.sign() <= 0) throw Error(ErrorKind::domain, "mu must be positive");
  BigReal xi = BigReal(1, mu.context()) / (num::euler_e(mu.context()) * mu);
  return {mu, xi};
}

BigComplex psi(const BigComplex& t, const BigReal& mu, const PrecisionContext& ctx) {
  BigComplex tt = t.at(ctx);
  if (tt.im().is_zero() && tt.re().sign() >= 0)
    throw Error(ErrorKind::domain, "psi evaluated on the branch cut [0, inf)");
  BigComplex e = num::exp(tt) / mu.at(ctx);
  return -e - num::log_branched(tt);
}

PsiDerivatives psi_derivs(const BigComplex& t, const BigReal& mu, const PrecisionContext& ctx) {
  BigComplex tt = t.at(ctx);
  if (tt.is_zero()) throw Error(ErrorKind::domain, "psi derivatives at t = 0");
  BigComplex e = num::exp(tt) / mu.at(ctx);
  BigComplex inv = BigReal(1, ctx) / tt;
  BigComplex inv2 = inv * inv;
  BigComplex inv3 = inv2 * inv;
  BigComplex inv4 = inv3 * inv;
  return {
      -e - inv,
      inv2 - e,
      -e - inv3 * BigReal(2, ctx),
      inv4 * BigReal(6, ctx) - e,
  };
}

BigComplex psi2_at_saddle(const BigComplex& t) {
  return (t + BigReal(1, t.context())) / (t * t);
}

BigComplex psi_at_saddle(const BigComplex& t) {
  return BigReal(1, t.context()) / t - num::log_branched(t);
}

BigReal lambert_w0(const BigReal& y, const PrecisionContext& ctx) {
  BigReal yy = y.at(ctx);
  auto bp = branch_distance(yy, ctx);
  if (bp.at_branch_point) return BigReal(-1, ctx);
  // Near zero the Taylor seed y - y^2 is better than the branch-point one.
  BigReal seed = bp.p < BigReal(1, ctx) ? branch_seed(bp.p, +1, ctx) : yy - yy * yy;
  return halley_lambert(seed, yy, ctx);
}

BigReal lambert_wm1(const BigReal& y, const PrecisionContext& ctx) {
  BigReal yy = y.at(ctx);
  auto bp = branch_distance(yy, ctx);
  if (bp.at_branch_point) return BigReal(-1, ctx);
  BigReal seed(ctx);
  if (bp.p < BigReal(1, ctx)) {
    seed = branch_seed(bp.p, -1, ctx);
  } else {
    BigReal l1 = num::log(-yy);
    seed = l1 - num::log(-l1);
  }
  return halley_lambert(seed, yy, ctx);
}

BigReal saddle_residual(const BigComplex& t, const BigReal& mu) {
  return (t * num::exp(t) + mu).abs();
}

bool is_coalescent(const BigReal& xi, const PrecisionContext& ctx) {
  BigReal gap = num::abs(xi.at(ctx) - BigReal(1, ctx));
  return gap <= ten_pow(-(ctx.digits() - 15), ctx);
}

namespace {

struct NewtonOutcome {
  bool converged;
  BigComplex root;
  std::vector<std::string> trace;
};

NewtonOutcome complex_newton(BigComplex t, const BigReal& mu, const PrecisionContext& ctx) {
  const BigReal tol = ten_pow(-ctx.digits(), ctx);
  NewtonOutcome out{false, t, {}};
  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    BigComplex et = num::exp(t);
    BigComplex f = t * et + mu;
    BigComplex fp = et * (t + BigReal(1, ctx));
    if (fp.is_zero()) break;
    BigComplex step = f / fp;
    t -= step;
    if (out.trace.size() < 12) out.trace.push_back(t.re().to_scientific(12) + (t.im().sign() < 0 ? "" : "+") +
                                                   t.im().to_scientific(12) + "i");
    if (step.abs() <= tol * t.abs()) {
      out.converged = true;
      break;
    }
  }
  out.root = t;
  return out;
}

// Principal-branch root: upper-half-plane member with Im in (0, pi).
bool is_dominant_upper(const BigComplex& t, const PrecisionContext& ctx) {
  return t.im().sign() > 0 && t.im() < num::pi(ctx);
}

[[noreturn]] void newton_failure(const NewtonOutcome& outcome, const BigReal& mu) {
  std::ostringstream msg;
  msg << "complex Newton for t e^t = -mu did not converge (mu=" << mu.to_scientific(20) << "); trace:";
  for (const auto& s : outcome.trace) msg << ' ' << s;
  throw Error(ErrorKind::solver, msg.str());
}

BigComplex conjugate_saddle(const PhaseParams& params, const PrecisionContext& ctx) {
  const BigReal mu = params.mu.at(ctx);
  const BigReal xi = params.xi.at(ctx);
  const BigReal one(1, ctx);
  // Local model of the double root: (t+1)^2 ~ 2(1 - 1/xi).
  BigReal height = num::sqrt(2 * (one / xi - one));
  auto outcome = complex_newton(BigComplex(BigReal(-1, ctx), height), mu, ctx);
  if (outcome.converged && is_dominant_upper(outcome.root, ctx)) return outcome.root;

  // Far from coalescence the quadratic seed can land in another basin; walk
  // mu up from just above 1/e, reusing each root as the next seed.
  const BigReal mu_start = one / num::euler_e(ctx) * BigReal("1.01", ctx);
  constexpr int kSteps = 64;
  BigReal ratio = num::pow(mu / mu_start, BigReal(1, ctx) / BigReal(kSteps, ctx));
  BigReal m = mu_start;
  BigReal h0 = num::sqrt(2 * (one - one / (num::euler_e(ctx) * m)));
  BigComplex t(BigReal(-1, ctx), h0);
  for (int i = 0; i <= kSteps; ++i) {
    const BigReal& target = i == kSteps ? mu : m;
    outcome = complex_newton(t, target, ctx);
    if (!outcome.converged) newton_failure(outcome, target);
    t = outcome.root;
    m *= ratio;
  }
  if (!is_dominant_upper(t, ctx)) newton_failure(outcome, mu);
  return t;
}

void certify(const BigComplex& t, const BigReal& residual, const BigReal& mu, const PrecisionContext& ctx) {
  if (residual >= ten_pow(-(ctx.digits() - 10), ctx) * mu)
    throw Error(ErrorKind::solver, "saddle residual certificate failed at t=" + t.re().to_scientific(20) + "+" +
                                       t.im().to_scientific(20) + "i: " + residual.to_scientific(6));
}

}  // namespace

SaddlePair solve_saddles(const PhaseParams& params, const PrecisionContext& ctx) {
  const BigReal mu = params.mu.at(ctx);
  if (mu.sign() <= 0) throw Error(ErrorKind::domain, "mu must be positive");

  if (is_coalescent(params.xi, ctx)) {
    BigComplex t = from_real(BigReal(-1, ctx));
    BigReal r = saddle_residual(t, mu);
    certify(t, r, mu, ctx);
    return {SaddleKind::double_saddle, t, t, r, r};
  }

  if (params.xi > BigReal(1, ctx)) {
    BigComplex t0 = from_real(lambert_w0(-mu, ctx));
    BigComplex t1 = from_real(lambert_wm1(-mu, ctx));
    BigReal r0 = saddle_residual(t0, mu);
    BigReal r1 = saddle_residual(t1, mu);
    certify(t0, r0, mu, ctx);
    certify(t1, r1, mu, ctx);
    return {SaddleKind::real_pair, t0, t1, r0, r1};
  }

  BigComplex t0 = conjugate_saddle(params, ctx);
  BigComplex t1 = t0.conj();
  BigReal r0 = saddle_residual(t0, mu);
  BigReal r1 = saddle_residual(t1, mu);
  certify(t0, r0, mu, ctx);
  certify(t1, r1, mu, ctx);
  return {SaddleKind::conjugate_pair, t0, t1, r0, r1};
}

}  // namespace touchard::saddle
