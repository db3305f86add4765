#include "touchard/coalescence.hpp"

#include <string>

#include "touchard/error.hpp"
#include "touchard/stirling.hpp"

namespace touchard::coalescence {

namespace {

using Poly = std::vector<mpq_class>;

// Product truncated to degree `order`.
Poly multiply(const Poly& a, const Poly& b, int order) {
  Poly out(static_cast<std::size_t>(order) + 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// sum_{k>=3} c_k v^{k-3} s(v)^k, truncated to degree `order`.
Poly reduced_forward(const ForwardSeries& fwd, const Poly& s, int order) {
  Poly out(static_cast<std::size_t>(order) + 1, mpq_class(0));
  Poly power = multiply(multiply(s, s, order), s, order);  // s^3
  for (int k = 3; k <= fwd.order() && k - 3 <= order; ++k) {
    const mpq_class& c = fwd.coeffs[static_cast<std::size_t>(k)];
    for (int j = 0; j + (k - 3) <= order; ++j)
      out[static_cast<std::size_t>(j + k - 3)] += c * power[static_cast<std::size_t>(j)];
    power = multiply(power, s, order);
  }
  return out;
}

}  // namespace

ForwardSeries forward_series(int order) {
  if (order < 3) throw Error(ErrorKind::order, "forward series needs order >= 3");
  ForwardSeries out;
  out.coeffs.assign(static_cast<std::size_t>(order) + 1, mpq_class(0));
  for (int k = 3; k <= order; ++k) {
    mpq_class c = mpq_class(1, k) - mpq_class(1) / mpq_class(exact::factorial(k));
    c.canonicalize();
    out.coeffs[static_cast<std::size_t>(k)] = c;
  }
  return out;
}

RationalSeries revert_series(const ForwardSeries& fwd, int M) {
  if (M < 0) throw Error(ErrorKind::order, "reversion order must be non-negative");
  if (fwd.order() < M + 3)
    throw Error(ErrorKind::order, "reversion to order " + std::to_string(M) + " needs forward order >= " +
                                      std::to_string(M + 3) + ", got " + std::to_string(fwd.order()));
  // tau = v s(v); the defining equation reduces to
  //   sum_k c_k v^{k-3} s^k = 1/6.
  // With a_0 = 1 the coefficient of v^m is linear in a_m with slope 3 c_3 = 1/2.
  Poly s{mpq_class(1)};
  for (int m = 1; m <= M; ++m) {
    s.push_back(mpq_class(0));
    Poly f = reduced_forward(fwd, s, m);
    mpq_class slope = 3 * fwd.coeffs[3];
    mpq_class a = -f[static_cast<std::size_t>(m)] / slope;
    a.canonicalize();
    s.back() = a;
  }
  return RationalSeries{s};
}

std::vector<mpq_class> reversion_residual(const ForwardSeries& fwd, const RationalSeries& rev) {
  int order = rev.order();
  Poly f = reduced_forward(fwd, rev.coeffs, order);
  f[0] -= mpq_class(1, 6);
  // Shift back by v^3: w(tau(v)) - v^3/6 = v^3 (f - 1/6).
  Poly out(3, mpq_class(0));
  out.insert(out.end(), f.begin(), f.end());
  for (auto& c : out) c.canonicalize();
  return out;
}

const std::vector<std::pair<int, mpq_class>>& published_bm() {
  static const std::vector<std::pair<int, mpq_class>> table = {
      {0, mpq_class(1)},
      {1, mpq_class(5, 6)},
      {3, mpq_class(1463, 6480)},
      {4, mpq_class(126827, 1088640)},
      {6, mpq_class(4732223, 167961600)},
  };
  return table;
}

BmTable compute_bm(const RationalSeries& rev) {
  BmTable out;
  for (int m = 0; m <= rev.order(); ++m) {
    mpq_class b = (m % 2 == 0 ? 1 : -1) * (m + 1) * rev.coeffs[static_cast<std::size_t>(m)];
    b.canonicalize();
    out.B.push_back(b);
    out.contributes.push_back(m % 3 != 2);
  }
  for (const auto& [m, expected] : published_bm()) {
    if (m > out.order()) continue;
    if (out.B[static_cast<std::size_t>(m)] != expected)
      throw Error(ErrorKind::series_consistency, "B_" + std::to_string(m) + " = " +
                                                     out.B[static_cast<std::size_t>(m)].get_str() +
                                                     " does not match published " + expected.get_str());
  }
  return out;
}

const BmTable& default_bm_table() {
  static const BmTable table = compute_bm(revert_series(forward_series(kDefaultOrder + 3), kDefaultOrder));
  return table;
}

int sine_sign(int m) noexcept {
  switch ((m + 1) % 6) {
    case 1:
    case 2: return 1;
    case 4:
    case 5: return -1;
    default: return 0;
  }
}

BigReal theorem1_eval(int n, int M, const BmTable& table, const PrecisionContext& ctx) {
  if (n < 2) throw Error(ErrorKind::domain, "theorem1_eval needs n >= 2");
  if (M < 0 || M > table.order())
    throw Error(ErrorKind::order, "truncation index " + std::to_string(M) + " outside the B_m table (order " +
                                      std::to_string(table.order()) + ")");
  const BigReal e = num::euler_e(ctx);
  const BigReal x = e * n;
  const BigReal half_sqrt3 = num::sqrt(BigReal(3, ctx)) / 2;
  const BigReal n_over_6 = BigReal(mpq_class(n, 6), ctx);

  BigReal sum(ctx);
  for (int m = 0; m <= M; ++m) {
    int sine = sine_sign(m);
    if (sine == 0) continue;
    BigReal third(mpq_class(m + 1, 3), ctx);
    BigReal term = BigReal(table.B[static_cast<std::size_t>(m)], ctx) * num::gamma(third) * half_sqrt3;
    term /= num::pow(n_over_6, third);
    if ((m % 2 == 0) != (sine > 0)) term = -term;
    sum += term;
  }
  BigReal prefactor = num::exp(x - BigReal(n, ctx)) / (3 * num::pi(ctx));
  if ((n - 1) % 2 != 0) prefactor = -prefactor;
  return prefactor * sum;
}

BigReal theorem1_eval(int n, int M, const PrecisionContext& ctx) {
  return theorem1_eval(n, M, default_bm_table(), ctx);
}

nlohmann::json bm_table_json(const BmTable& table, int M) {
  if (M < 0 || M > table.order())
    throw Error(ErrorKind::order, "requested B_m up to " + std::to_string(M) + ", table holds " +
                                      std::to_string(table.order()));
  nlohmann::json out = nlohmann::json::array();
  for (int m = 0; m <= M; ++m) {
    const mpq_class& b = table.B[static_cast<std::size_t>(m)];
    bool published = false;
    for (const auto& entry : published_bm()) published = published || entry.first == m;
    out.push_back({{"m", m},
                   {"numerator", b.get_num().get_str()},
                   {"denominator", b.get_den().get_str()},
                   {"contributes", static_cast<bool>(table.contributes[static_cast<std::size_t>(m)])},
                   {"provenance", published ? "published" : "derived"}});
  }
  return out;
}

}  // namespace touchard::coalescence
