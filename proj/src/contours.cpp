#include "touchard/contours.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "touchard/error.hpp"

namespace touchard::contours {

namespace {

constexpr double kMinStep = 1e-13;
constexpr double kPositionTolerance = 1e-10;
constexpr double kOriginRadius = 1e-3;
constexpr double kSaddleRadius = 1e-4;
constexpr int kMaxSteps = 200000;

struct Tracer {
  BigReal mu;
  PrecisionContext ctx;

  BigComplex derivative(const BigComplex& t) const {
    return -(num::exp(t) / mu) - BigReal(1, ctx) / t;
  }

  // Unit-speed steepest flow; sign -1 descends, +1 ascends.
  BigComplex field(const BigComplex& t, int sign) const {
    BigComplex d = derivative(t);
    BigReal mag = d.abs();
    if (mag.is_zero()) throw Error(ErrorKind::step, "steepest-path flow evaluated at a saddle");
    return d.conj() * (BigReal(sign, ctx) / mag);
  }

  BigComplex rk4(const BigComplex& t, const BigReal& h, int sign) const {
    const BigReal half = h / 2;
    BigComplex k1 = field(t, sign);
    BigComplex k2 = field(t + k1 * half, sign);
    BigComplex k3 = field(t + k2 * half, sign);
    BigComplex k4 = field(t + k3 * h, sign);
    BigComplex incr = k1 + (k2 + k3) * BigReal(2, ctx) + k4;
    return t + incr * (h / 6);
  }

  BigReal im_psi(const BigComplex& t) const { return saddle::psi(t, mu, ctx).im(); }

  // One Newton step back onto Im psi = level along grad Im psi = i conj(psi').
  BigComplex project(const BigComplex& t, const BigReal& level) const {
    BigComplex d = derivative(t);
    BigReal norm = d.norm();
    if (norm.is_zero()) return t;
    BigComplex grad(d.im(), d.re());
    return t - grad * ((im_psi(t) - level) / norm);
  }
};

BigReal from_double(double v, const PrecisionContext& ctx) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return BigReal(buf, ctx);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string format_point(const BigComplex& t) {
  return t.re().to_scientific(8) + (t.im().sign() < 0 ? " - " : " + ") + num::abs(t.im()).to_scientific(8) + "i";
}

bool on_cut(const BigComplex& t) { return t.im().is_zero() && t.re().sign() >= 0; }

bool crosses_cut(const BigComplex& from, const BigComplex& to) {
  if (on_cut(to)) return true;
  if (to.re().sign() <= 0 && from.re().sign() <= 0) return false;
  return from.im().sign() != 0 && to.im().sign() != 0 && from.im().sign() != to.im().sign();
}

BigComplex polar(double radius, const BigReal& angle, const PrecisionContext& ctx) {
  BigReal r = from_double(radius, ctx);
  return {r * num::cos(angle), r * num::sin(angle)};
}

// Moves the launch angle so that Im psi at distance `radius` equals the
// saddle value exactly (Newton in the angle).
BigReal refine_launch(const Tracer& tr, const BigComplex& saddle_point, const BigReal& im_ref, BigReal angle,
                      double radius) {
  const BigReal r = from_double(radius, tr.ctx);
  const BigReal tol = num::pow(BigReal(10, tr.ctx), -static_cast<long>(tr.ctx.digits() - 5));
  for (int iter = 0; iter < 50; ++iter) {
    BigComplex dir(num::cos(angle), num::sin(angle));
    BigComplex p = saddle_point + dir * r;
    BigReal g = tr.im_psi(p) - im_ref;
    if (num::abs(g) <= tol) break;
    // d/dangle Im psi(p) = Im(psi'(p) * i r dir) = r Re(psi'(p) dir)
    BigReal gp = (tr.derivative(p) * dir).re() * r;
    if (gp.is_zero()) break;
    angle -= g / gp;
  }
  return angle;
}

ContourPolyline trace_one(const Tracer& tr, const BigComplex& saddle_point, const std::vector<BigComplex>& others,
                          PathKind kind, const BigReal& angle0, const ContourOptions& opt) {
  const int sign = kind == PathKind::descent ? -1 : +1;
  const BigReal im_ref = tr.im_psi(saddle_point);
  const BigReal angle = refine_launch(tr, saddle_point, im_ref, angle0, opt.launch_radius);

  ContourPolyline out{saddle_point, kind, angle0.to_double(), {}, 0.0, "max_len"};
  out.points.emplace_back(saddle_point.re().to_double(), saddle_point.im().to_double());

  BigComplex t = saddle_point + polar(opt.launch_radius, angle, tr.ctx);
  out.points.emplace_back(t.re().to_double(), t.im().to_double());
  double drift = std::fabs((tr.im_psi(t) - im_ref).to_double());
  double length = opt.launch_radius;
  double h = opt.launch_radius;

  for (int steps = 0; steps < kMaxSteps; ++steps) {
    if (length >= opt.max_len) {
      out.stop_reason = "max_len";
      break;
    }
    const double re = t.re().to_double();
    const double mod = t.abs().to_double();
    if (re >= opt.re_max) {
      out.stop_reason = "re_max";
      break;
    }
    if (mod >= opt.abs_max) {
      out.stop_reason = "abs_max";
      break;
    }
    if (mod <= kOriginRadius) {
      out.stop_reason = "origin";
      break;
    }
    double nearest_other = std::numeric_limits<double>::infinity();
    for (const auto& other : others) nearest_other = std::min(nearest_other, (t - other).abs().to_double());
    if (nearest_other < kSaddleRadius) {
      out.stop_reason = "saddle";
      break;
    }

    // The unit-speed field flips across the origin and across a saddle, so
    // never step more than halfway towards either.
    const double h_step = std::min({h, 0.5 * mod, 0.5 * nearest_other});
    const BigReal hb = from_double(h_step, tr.ctx);
    BigComplex full = tr.rk4(t, hb, sign);
    BigComplex mid = tr.rk4(t, hb / 2, sign);
    BigComplex fine = tr.rk4(mid, hb / 2, sign);
    if (crosses_cut(t, fine)) {
      out.stop_reason = "branch_cut";
      break;
    }
    double err = (full - fine).abs().to_double();
    double d = std::fabs((tr.im_psi(fine) - im_ref).to_double());
    if (err > kPositionTolerance || d > opt.drift_tolerance) {
      h /= 2;
      if (h < kMinStep)
        throw Error(ErrorKind::step, "steepest-path integration stalled near t = " + format_point(t) +
                                         " (position error " + format_double(err) + ", Im psi drift " +
                                         format_double(d) + "); refine --step");
      continue;
    }
    if ((fine - t).abs().to_double() < 0.5 * h_step) {
      out.stop_reason = "stagnation";
      break;
    }
    t = tr.project(fine, im_ref);
    length += h_step;
    drift = std::max(drift, std::fabs((tr.im_psi(t) - im_ref).to_double()));
    out.points.emplace_back(t.re().to_double(), t.im().to_double());
    if (err < kPositionTolerance / 64) h = std::min(2 * h, opt.step);
  }

  out.im_psi_drift = drift;
  if (drift >= kMaxDrift)
    throw Error(ErrorKind::step, "polyline drift " + format_double(drift) + " exceeds 1e-8; refine --step");
  return out;
}

}  // namespace

const char* to_string(PathKind kind) noexcept { return kind == PathKind::descent ? "descent" : "ascent"; }

std::vector<ContourPolyline> trace_contours(const BigReal& xi, const ContourOptions& options,
                                            const PrecisionContext& ctx) {
  if (!(options.step > 0)) throw Error(ErrorKind::step, "step must be positive");
  if (!(options.max_len > 0)) throw Error(ErrorKind::step, "max_len must be positive");
  auto params = saddle::PhaseParams::from_xi(xi.at(ctx));
  auto saddles = saddle::solve_saddles(params, ctx);
  Tracer tr{params.mu.at(ctx), ctx};
  const BigReal pi = num::pi(ctx);

  std::vector<ContourPolyline> out;
  if (saddles.kind == saddle::SaddleKind::double_saddle) {
    // psi ~ psi(-1) + psi'''/6 (t+1)^3: descent where psi''' (t+1)^3 < 0.
    auto d = saddle::psi_derivs(saddles.t0, tr.mu, ctx);
    BigReal phase = num::arg_branched(d.d3);
    for (int k : {0, 1, -1}) {
      BigReal a = (pi - phase) / 3 + 2 * pi * k / 3;
      out.push_back(trace_one(tr, saddles.t0, {}, PathKind::descent, a, options));
    }
    for (int k : {0, 1, -1}) {
      BigReal a = -phase / 3 + 2 * pi * k / 3;
      out.push_back(trace_one(tr, saddles.t0, {}, PathKind::ascent, a, options));
    }
    return out;
  }

  for (const auto& [s, other] : {std::pair{&saddles.t0, &saddles.t1}, std::pair{&saddles.t1, &saddles.t0}}) {
    // psi ~ psi(s) + psi''/2 (t-s)^2
    auto d = saddle::psi_derivs(*s, tr.mu, ctx);
    BigReal phase = num::arg_branched(d.d2);
    for (int k : {0, 1}) out.push_back(trace_one(tr, *s, {*other}, PathKind::descent, (pi - phase) / 2 + pi * k, options));
    for (int k : {0, 1}) out.push_back(trace_one(tr, *s, {*other}, PathKind::ascent, -phase / 2 + pi * k, options));
  }
  return out;
}

nlohmann::json contours_json(const std::vector<ContourPolyline>& polylines) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : polylines) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [re, im] : p.points) pts.push_back({re, im});
    out.push_back({{"saddle", {p.saddle.re().to_double(), p.saddle.im().to_double()}},
                   {"kind", to_string(p.kind)},
                   {"launch_angle", p.launch_angle},
                   {"im_psi_drift", p.im_psi_drift},
                   {"stop_reason", p.stop_reason},
                   {"points", pts}});
  }
  return out;
}

std::string contours_csv(const std::vector<ContourPolyline>& polylines) {
  std::ostringstream os;
  os << "polyline,kind,saddle_re,saddle_im,launch_angle,re,im\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < polylines.size(); ++i) {
    const auto& p = polylines[i];
    for (const auto& [re, im] : p.points)
      os << i << ',' << to_string(p.kind) << ',' << p.saddle.re().to_double() << ',' << p.saddle.im().to_double()
         << ',' << p.launch_angle << ',' << re << ',' << im << '\n';
  }
  return os.str();
}

}  // namespace touchard::contours
