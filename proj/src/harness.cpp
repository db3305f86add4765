#include "touchard/harness.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <future>
#include <optional>
#include <sstream>

#include "touchard/coalescence.hpp"
#include "touchard/error.hpp"
#include "touchard/poincare.hpp"
#include "touchard/saddle.hpp"
#include "touchard/stirling.hpp"
#include "touchard/uniform.hpp"

namespace touchard::harness {

namespace {

constexpr int kValueDigits = 20;
constexpr int kRelErrDigits = 4;
constexpr int kReportDigits = 30;
constexpr int kMaxBmOrder = 40;

// Runs the jobs concurrently when MPFR keeps its caches thread-local, and
// returns results in submission order either way.
template <typename T>
std::vector<T> run_ordered(std::vector<std::function<T()>> jobs) {
  const auto policy = mpfr_buildopt_tls_p() ? std::launch::async : std::launch::deferred;
  std::vector<std::future<T>> futures;
  futures.reserve(jobs.size());
  for (auto& job : jobs) futures.push_back(std::async(policy, std::move(job)));
  std::vector<T> out;
  out.reserve(futures.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

ErrorRow make_row(int n, std::string param, const BigReal& exact, BigReal approx) {
  BigReal rel = num::relative_error(approx, exact);
  return {n, std::move(param), exact, std::move(approx), std::move(rel)};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& text, const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw Error(ErrorKind::domain, std::string("bad ") + what + " '" + text + "'");
  return value;
}

nlohmann::json error_entry(const Error& e) { return {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}; }

nlohmann::json complex_json(const num::BigComplex& z) {
  return {{"re", z.re().to_scientific(kValueDigits)}, {"im", z.im().to_scientific(kValueDigits)}};
}

int last_digit_exponent(double printed) {
  // Exponent of the printed leading digit, read from the printed form itself.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", printed);
  return std::atoi(std::strchr(buf, 'e') + 1) - (kRelErrDigits - 1);
}

}  // namespace

std::vector<ErrorRow> cmd_table1(const std::vector<int>& n_list, const std::vector<int>& m_list,
                                 const PrecisionContext& ctx) {
  int n_max = 0;
  for (int n : n_list) {
    if (n < 2) throw Error(ErrorKind::domain, "table1 needs n >= 2, got " + std::to_string(n));
    n_max = std::max(n_max, n);
  }
  const auto triangle = exact::StirlingTriangle::build(n_max);
  const auto& table = coalescence::default_bm_table();
  for (int m : m_list)
    if (m < 0 || m > table.order())
      throw Error(ErrorKind::order, "truncation index " + std::to_string(m) + " outside 0.." +
                                        std::to_string(table.order()));

  std::vector<std::function<std::vector<ErrorRow>()>> jobs;
  for (int n : n_list) {
    jobs.push_back([n, &m_list, &triangle, &table, ctx] {
      auto exact_value = exact::scaled_touchard(n - 1, exact::negated_coalescence_argument(n, "1"), triangle, ctx);
      std::vector<ErrorRow> rows;
      for (int m : m_list)
        rows.push_back(make_row(n, std::to_string(m), exact_value.value, coalescence::theorem1_eval(n, m, table, ctx)));
      return rows;
    });
  }
  std::vector<ErrorRow> out;
  for (auto& group : run_ordered(std::move(jobs)))
    for (auto& row : group) out.push_back(std::move(row));
  return out;
}

std::vector<ErrorRow> cmd_table2(const std::vector<std::string>& xi_list, const std::vector<int>& n_list,
                                 const PrecisionContext& ctx) {
  int n_max = 0;
  for (int n : n_list) {
    if (n < 2) throw Error(ErrorKind::domain, "table2 needs n >= 2, got " + std::to_string(n));
    n_max = std::max(n_max, n);
  }
  for (const auto& xi : xi_list)
    if (BigReal(xi, ctx).sign() <= 0) throw Error(ErrorKind::domain, "xi must be positive, got " + xi);
  uniform::verify_branch_continuity(ctx);
  const auto triangle = exact::StirlingTriangle::build(n_max);

  std::vector<std::function<std::vector<ErrorRow>()>> jobs;
  for (const auto& xi : xi_list) {
    jobs.push_back([xi, &n_list, &triangle, ctx] {
      auto ingredients = uniform::uniform_ingredients(BigReal(xi, ctx), ctx);
      std::vector<ErrorRow> rows;
      for (int n : n_list) {
        auto exact_value = exact::scaled_touchard(n - 1, exact::negated_coalescence_argument(n, xi), triangle, ctx);
        rows.push_back(make_row(n, xi, exact_value.value, uniform::theorem2_eval(n, ingredients, ctx)));
      }
      return rows;
    });
  }
  std::vector<ErrorRow> out;
  for (auto& group : run_ordered(std::move(jobs)))
    for (auto& row : group) out.push_back(std::move(row));
  return out;
}

std::string to_csv(const std::vector<ErrorRow>& rows) {
  std::ostringstream os;
  os << "n,param,exact,approx,rel_err\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.param << ',' << r.exact.to_scientific(kValueDigits) << ','
       << r.approx.to_scientific(kValueDigits) << ',' << r.rel_err.to_scientific(kRelErrDigits) << '\n';
  return os.str();
}

std::vector<ErrorRow> parse_csv(const std::string& text, const PrecisionContext& ctx) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "n,param,exact,approx,rel_err")
    throw Error(ErrorKind::domain, "CSV header must be 'n,param,exact,approx,rel_err'");
  std::vector<ErrorRow> out;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 5) throw Error(ErrorKind::domain, "CSV line " + std::to_string(line_no) + " needs 5 fields");
    ErrorRow row = make_row(parse_int(f[0], "n"), f[1], BigReal(f[2], ctx), BigReal(f[3], ctx));
    BigReal stored(f[4], ctx);
    // The stored value carries 4 digits; allow one unit in the last of them.
    BigReal tolerance = num::abs(stored) * BigReal(mpq_class(1, 500), ctx);
    if (num::abs(stored - row.rel_err) > tolerance)
      throw Error(ErrorKind::domain, "CSV line " + std::to_string(line_no) + ": stored rel_err " + f[4] +
                                         " disagrees with recomputed " + row.rel_err.to_scientific(kRelErrDigits));
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::json cmd_eval(const EvalPoint& point, const PrecisionContext& ctx) {
  const int n = point.n;
  if (n < 2) throw Error(ErrorKind::domain, "eval needs n >= 2");
  const BigReal given(point.literal, ctx);
  if (given.sign() <= 0) throw Error(ErrorKind::domain, point.literal_is_x ? "x must be positive" : "xi must be positive");
  const BigReal ne = num::euler_e(ctx) * n;
  const BigReal xi = point.literal_is_x ? given / ne : given;
  const BigReal x = point.literal_is_x ? given : given * ne;

  exact::ArgumentFn argument;
  if (point.literal_is_x) {
    std::string literal = point.literal;
    argument = [literal](const PrecisionContext& c) { return -BigReal(literal, c); };
  } else {
    argument = exact::negated_coalescence_argument(n, point.literal);
  }

  nlohmann::json report{{"n", n}, {"xi", xi.to_scientific(kValueDigits)}, {"x", x.to_scientific(kValueDigits)},
                        {"digits", ctx.digits()}};

  std::optional<BigReal> exact_value;
  try {
    auto triangle = exact::StirlingTriangle::build(n);
    auto ev = exact::scaled_touchard(n - 1, argument, triangle, ctx);
    report["exact"] = {{"value", ev.value.to_scientific(kReportDigits)},
                       {"cancellation_digits", ev.cancellation_digits},
                       {"working_digits", ev.working_digits}};
    exact_value = ev.value;
  } catch (const Error& e) {
    report["exact"] = error_entry(e);
  }

  auto method_entry = [&](const std::function<BigReal()>& compute) -> nlohmann::json {
    try {
      BigReal value = compute();
      nlohmann::json entry{{"value", value.to_scientific(kReportDigits)}};
      if (exact_value) entry["rel_err"] = num::relative_error(value, *exact_value).to_scientific(kRelErrDigits);
      return entry;
    } catch (const Error& e) {
      return error_entry(e);
    }
  };

  if (num::abs(xi - BigReal(1, ctx)) < BigReal(mpq_class(1, 50), ctx)) {
    const int M = coalescence::kDefaultOrder >= 6 ? 6 : coalescence::kDefaultOrder;
    // The expansion is built at x = n e; the exponential prefactor uses the
    // actual x.
    auto entry = method_entry([&] { return coalescence::theorem1_eval(n, M, ctx) * num::exp(x - ne); });
    entry["M"] = M;
    report["theorem1"] = entry;
  }

  std::optional<uniform::UniformIngredients> ingredients;
  try {
    ingredients = uniform::uniform_ingredients(xi, ctx);
  } catch (const Error& e) {
    report["theorem2"] = error_entry(e);
  }
  if (ingredients) report["theorem2"] = method_entry([&] { return uniform::theorem2_eval(n, *ingredients, ctx); });

  const BigReal mu = BigReal(n, ctx) / x;
  if (!poincare::in_exclusion_band(mu, ctx)) {
    std::string regime;
    auto entry = method_entry([&] {
      auto r = poincare::leading_order(n, mu, ctx);
      regime = poincare::to_string(r.regime);
      return r.value;
    });
    if (!regime.empty()) entry["regime"] = regime;
    report["poincare"] = entry;
  }

  try {
    nlohmann::json diag;
    if (ingredients) {
      const auto& s = ingredients->saddles;
      diag = {{"kind", saddle::to_string(s.kind)},
              {"t0", complex_json(s.t0)},
              {"t1", complex_json(s.t1)},
              {"zeta", ingredients->zeta.to_scientific(kValueDigits)},
              {"re_beta", ingredients->beta.re().to_scientific(kValueDigits)},
              {"A0", ingredients->A0.to_scientific(kValueDigits)},
              {"B0", ingredients->B0.to_scientific(kValueDigits)}};
    } else {
      auto s = saddle::solve_saddles(saddle::PhaseParams::from_xi(xi), ctx);
      diag = {{"kind", saddle::to_string(s.kind)}, {"t0", complex_json(s.t0)}, {"t1", complex_json(s.t1)}};
    }
    report["saddles"] = diag;
  } catch (const Error& e) {
    report["saddles"] = error_entry(e);
  }
  return report;
}

nlohmann::json cmd_bm(int M) {
  if (M < 0) throw Error(ErrorKind::order, "M must be non-negative");
  if (M > kMaxBmOrder)
    throw Error(ErrorKind::capacity, "B_m export is limited to M <= " + std::to_string(kMaxBmOrder));
  const auto& table = coalescence::default_bm_table();
  if (M <= table.order()) return coalescence::bm_table_json(table, M);
  auto larger = coalescence::compute_bm(coalescence::revert_series(coalescence::forward_series(M + 3), M));
  return coalescence::bm_table_json(larger, M);
}

const std::vector<PrintedCell>& printed_table1() {
  static const std::vector<PrintedCell> cells = {
      {50, "0", 2.514e-1},  {80, "0", 2.095e-1},  {121, "0", 1.788e-1},
      {50, "1", 8.558e-3},  {80, "1", 5.390e-3},  {121, "1", 3.585e-3},
      {50, "3", 2.744e-3},  {80, "3", 1.437e-3},  {121, "3", 8.144e-4},
      {50, "4", 1.638e-4},  {80, "4", 6.490e-5},  {121, "4", 2.868e-5},
      {50, "6", 6.184e-5},  {80, "6", 2.029e-5},  {121, "6", 7.616e-6},
  };
  return cells;
}

const std::vector<PrintedCell>& printed_table2() {
  static const std::vector<PrintedCell> cells = {
      {81, "0.80", 5.243e-3}, {100, "0.80", 8.179e-3}, {81, "0.90", 7.413e-3}, {100, "0.90", 3.322e-3},
      {81, "0.95", 5.545e-3}, {100, "0.95", 4.540e-3}, {81, "0.99", 5.356e-3}, {100, "0.99", 4.355e-3},
      {81, "1.00", 5.324e-3}, {100, "1.00", 4.326e-3}, {81, "1.01", 5.300e-3}, {100, "1.01", 4.301e-3},
      {81, "1.05", 5.204e-3}, {100, "1.05", 4.222e-3}, {81, "1.10", 5.122e-3}, {100, "1.10", 4.153e-3},
      {81, "1.20", 5.010e-3}, {100, "1.20", 4.060e-3}, {81, "1.40", 4.878e-3}, {100, "1.40", 3.951e-3},
  };
  return cells;
}

long printed_ulp_offset(const BigReal& rel_err, double printed) {
  const double ulp = std::pow(10.0, last_digit_exponent(printed));
  return std::lround(rel_err.to_double() / ulp) - std::lround(printed / ulp);
}

bool matches_printed(const BigReal& rel_err, double printed) {
  return std::labs(printed_ulp_offset(rel_err, printed)) <= 1;
}

}  // namespace touchard::harness
