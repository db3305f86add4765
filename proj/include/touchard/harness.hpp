#pragma once

// Error tables, point reports and coefficient export behind the command-line
// tool.

#include <string>
#include <vector>

#include "json.hpp"
#include "touchard/numkernel.hpp"

namespace touchard::harness {

using num::BigReal;
using num::PrecisionContext;

struct ErrorRow {
  int n;
  std::string param;  // truncation index m or the xi literal
  BigReal exact;
  BigReal approx;
  BigReal rel_err;
};

inline const std::vector<int> kTable1N = {50, 80, 121};
inline const std::vector<int> kTable1M = {0, 1, 3, 4, 6};
inline const std::vector<std::string> kTable2Xi = {"0.80", "0.90", "0.95", "0.99", "1.00",
                                                   "1.01", "1.05", "1.10", "1.20", "1.40"};
inline const std::vector<int> kTable2N = {81, 100};

// Rows ordered n-major, then m. Exact values of T^_{n-1}(-n e).
std::vector<ErrorRow> cmd_table1(const std::vector<int>& n_list, const std::vector<int>& m_list,
                                 const PrecisionContext& ctx);

// Rows ordered xi-major, then n. Checks A0/B0 continuity through xi = 1 first.
std::vector<ErrorRow> cmd_table2(const std::vector<std::string>& xi_list, const std::vector<int>& n_list,
                                 const PrecisionContext& ctx);

// Header "n,param,exact,approx,rel_err"; 20 significant digits for the
// values, 4 for rel_err.
std::string to_csv(const std::vector<ErrorRow>& rows);

// Reads to_csv output back. Error(domain) on malformed input or when a
// stored rel_err disagrees with the one recomputed from exact and approx.
std::vector<ErrorRow> parse_csv(const std::string& text, const PrecisionContext& ctx);

struct EvalPoint {
  int n;
  std::string literal;
  bool literal_is_x = false;  // literal gives x itself rather than xi = x / (n e)
};

// Exact value and every applicable approximation of T^_{n-1}(-x), each with
// its relative error; failures are reported per entry.
nlohmann::json cmd_eval(const EvalPoint& point, const PrecisionContext& ctx);

nlohmann::json cmd_bm(int M);

struct PrintedCell {
  int n;
  std::string param;
  double rel_err;
};

const std::vector<PrintedCell>& printed_table1();
const std::vector<PrintedCell>& printed_table2();

// True when rel_err rounded to the printed 4 significant digits lies within
// one unit of the last printed digit.
bool matches_printed(const BigReal& rel_err, double printed);

// Signed difference in units of the last printed digit.
long printed_ulp_offset(const BigReal& rel_err, double printed);

}  // namespace touchard::harness
