#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "touchard/contours.hpp"
#include "touchard/error.hpp"
#include "touchard/harness.hpp"

namespace {

using touchard::num::PrecisionContext;

PrecisionContext context_for(const std::optional<int>& digits) {
  return digits ? PrecisionContext(*digits) : PrecisionContext::from_env();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw touchard::Error(touchard::ErrorKind::domain, "cannot open '" + out_path + "' for writing");
  os << text;
  if (!os) throw touchard::Error(touchard::ErrorKind::domain, "write to '" + out_path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Touchard polynomials at negative arguments: exact values and asymptotic approximations"};
  app.require_subcommand(1);

  std::optional<int> digits;
  std::string out_path;

  auto* t1 = app.add_subcommand("table1", "relative errors of the coalescence expansion at x = n e");
  std::vector<int> t1_n = touchard::harness::kTable1N;
  std::vector<int> t1_m = touchard::harness::kTable1M;
  t1->add_option("--n", t1_n, "orders n")->delimiter(',');
  t1->add_option("--m", t1_m, "truncation indices m")->delimiter(',');
  t1->add_option("--digits", digits, "working precision in decimal digits");
  t1->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* t2 = app.add_subcommand("table2", "relative errors of the uniform Airy approximation");
  std::vector<std::string> t2_xi = touchard::harness::kTable2Xi;
  std::vector<int> t2_n = touchard::harness::kTable2N;
  t2->add_option("--xi", t2_xi, "coalescence parameters")->delimiter(',');
  t2->add_option("--n", t2_n, "orders n")->delimiter(',');
  t2->add_option("--digits", digits, "working precision in decimal digits");
  t2->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* ev = app.add_subcommand("eval", "all methods side by side at one point");
  int ev_n = 0;
  std::string ev_xi, ev_x;
  ev->add_option("--n", ev_n, "order n (evaluates T^_{n-1})")->required();
  auto* xi_opt = ev->add_option("--xi", ev_xi, "coalescence parameter, x = n e xi");
  auto* x_opt = ev->add_option("--x", ev_x, "argument x directly");
  xi_opt->excludes(x_opt);
  ev->add_option("--digits", digits, "working precision in decimal digits");

  auto* co = app.add_subcommand("contours", "steepest descent and ascent paths through the saddles");
  std::string co_xi;
  touchard::contours::ContourOptions co_opt;
  std::string co_format = "json";
  co->add_option("--xi", co_xi, "coalescence parameter")->required();
  co->add_option("--step", co_opt.step, "largest arc-length step");
  co->add_option("--max-len", co_opt.max_len, "arc length per path");
  co->add_option("--format", co_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  co->add_option("--digits", digits, "working precision in decimal digits");
  co->add_option("--out", out_path, "write output here instead of stdout");

  auto* bm = app.add_subcommand("bm", "export the B_m coefficients as exact rationals");
  int bm_max = 6;
  bm->add_option("--max", bm_max, "largest m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    namespace h = touchard::harness;
    if (*t1) {
      emit(h::to_csv(h::cmd_table1(t1_n, t1_m, context_for(digits))), out_path);
    } else if (*t2) {
      emit(h::to_csv(h::cmd_table2(t2_xi, t2_n, context_for(digits))), out_path);
    } else if (*ev) {
      if (ev_xi.empty() == ev_x.empty())
        throw touchard::Error(touchard::ErrorKind::domain, "eval needs exactly one of --xi or --x");
      h::EvalPoint point{ev_n, ev_x.empty() ? ev_xi : ev_x, !ev_x.empty()};
      std::cout << h::cmd_eval(point, context_for(digits)).dump(2) << '\n';
    } else if (*co) {
      auto ctx = context_for(digits);
      auto lines = touchard::contours::trace_contours(touchard::num::BigReal(co_xi, ctx), co_opt, ctx);
      emit(co_format == "csv" ? touchard::contours::contours_csv(lines)
                              : touchard::contours::contours_json(lines).dump(2) + "\n",
           out_path);
    } else if (*bm) {
      std::cout << h::cmd_bm(bm_max).dump(2) << '\n';
    }
  } catch (const touchard::Error& e) {
    std::cerr << "touchard: " << e.what() << '\n';
    return touchard::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "touchard: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
