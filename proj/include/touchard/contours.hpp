#pragma once

// Steepest descent and ascent paths of psi(t; mu) through its saddles,
// traced as polylines along which Im psi is constant.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "touchard/numkernel.hpp"
#include "touchard/saddle.hpp"

namespace touchard::contours {

using num::BigComplex;
using num::BigReal;
using num::PrecisionContext;

enum class PathKind { descent, ascent };

const char* to_string(PathKind kind) noexcept;

struct ContourPolyline {
  BigComplex saddle;
  PathKind kind;
  double launch_angle;  // arg(t - saddle) of the local steepest direction
  std::vector<std::pair<double, double>> points;
  double im_psi_drift;  // max |Im psi(p) - Im psi(saddle)| over the points
  std::string stop_reason;
};

struct ContourOptions {
  double step = 0.05;       // largest arc-length step
  double max_len = 30.0;    // arc length per polyline
  double re_max = 10.0;     // stop once Re t exceeds this
  double abs_max = 40.0;    // stop once |t| exceeds this
  double launch_radius = 1e-9;
  double drift_tolerance = 1e-10;  // per-point bound enforced by the step control
};

inline constexpr double kMaxDrift = 1e-8;

// Traces two descent and two ascent paths from each simple saddle, or three
// of each from the double saddle at xi = 1. Throws Error(step) if the step
// control cannot hold the drift bound, or if a finished polyline drifts by
// 1e-8 or more.
std::vector<ContourPolyline> trace_contours(const BigReal& xi, const ContourOptions& options,
                                            const PrecisionContext& ctx);

nlohmann::json contours_json(const std::vector<ContourPolyline>& polylines);
std::string contours_csv(const std::vector<ContourPolyline>& polylines);

}  // namespace touchard::contours
