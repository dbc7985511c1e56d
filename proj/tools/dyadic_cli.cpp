// dyadic: command-line front end for the dyadic Haar toolkit.
//
// Exit status: 0 success, 1 a checked invariant failed, 2 usage or input error.

#include "dyadic/energy.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/harness.hpp"
#include "dyadic/io.hpp"
#include "dyadic/parallel.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

void emit(const dyadic::Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  using namespace dyadic;

  CLI::App app{"Dyadic Haar multipliers, fractional Laplacian and l2-valued kernel toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  std::string format = "json";
  app.add_option("--threads", threads, "OpenMP thread count (default: runtime choice)");
  app.add_option("--format", format, "Output format for tabular results")->check(CLI::IsMember({"json", "csv"}));

  std::string x_text, y_text;

  auto* delta_cmd = app.add_subcommand("delta", "Dyadic distance delta(x, y); points as n/2^q");
  delta_cmd->add_option("x", x_text)->required();
  delta_cmd->add_option("y", y_text)->required();

  auto* classify_cmd = app.add_subcommand("classify", "Butterfly class Gamma_k and level set Lambda_j of (x, y)");
  classify_cmd->add_option("x", x_text)->required();
  classify_cmd->add_option("y", y_text)->required();

  auto* kernel_cmd = app.add_subcommand("kernel", "Exact kernel column K(x, y)");
  kernel_cmd->add_option("x", x_text)->required();
  kernel_cmd->add_option("y", y_text)->required();
  std::optional<std::uint64_t> component;
  kernel_cmd->add_option("--component", component, "Only component i");

  auto* apply_cmd = app.add_subcommand("apply", "Apply a Haar-diagonal operator to an expansion");
  std::string op, in_path, m_path;
  double s = 0.5;
  std::optional<std::uint64_t> index;
  apply_cmd->add_option("--op", op)
      ->required()
      ->check(CLI::IsMember({"laplacian", "inverse", "partial", "directional", "gradient", "multiplier", "project"}));
  apply_cmd->add_option("--s", s, "Order in (0, 1)");
  apply_cmd->add_option("--i", index, "Component for partial / project");
  apply_cmd->add_option("--m", m_path, "Multiplier JSON for directional / multiplier");
  apply_cmd->add_option("input", in_path, "HaarExpansion JSON")->required();

  auto* energy_cmd = app.add_subcommand("energy", "Integral, spectral and gradient energies");
  energy_cmd->add_option("--s", s)->required();
  energy_cmd->add_option("input", in_path)->required();

  auto* pairing_cmd = app.add_subcommand("pairing", "Compare <T phi, psi> with the kernel double integral");
  std::string psi_path;
  double tolerance = 1e-8;
  pairing_cmd->add_option("phi", in_path, "HaarExpansion JSON")->required();
  pairing_cmd->add_option("psi", psi_path, "GradientField JSON")->required();
  pairing_cmd->add_option("--tol", tolerance, "Relative tolerance");

  auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo L^p ratio sweep of |grad u| against D^s u");
  SweepConfig sweep;
  sweep_cmd->add_option("--s", sweep.s)->required();
  sweep_cmd->add_option("--p", sweep.p_list, "Comma-separated exponents, each > 1")->delimiter(',')->required();
  sweep_cmd->add_option("--trials", sweep.trials)->required();
  sweep_cmd->add_option("--seed", sweep.seed)->required();
  sweep_cmd->add_option("--coeffs", sweep.shape.coeff_count);
  sweep_cmd->add_option("--jlo", sweep.shape.level_lo);
  sweep_cmd->add_option("--jhi", sweep.shape.level_hi);
  sweep_cmd->add_option("--posmax", sweep.shape.position_max);

  auto* cz_cmd = app.add_subcommand("cz", "Randomised size and regularity checks of the kernel");
  CzConfig cz;
  cz_cmd->add_option("--trials", cz.trials);
  cz_cmd->add_option("--seed", cz.seed);

  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
  std::string suite;
  SuiteOptions suite_options;
  verify_cmd->add_option("suite", suite, "metric|haar|multiplier|kernel|operators|energy|cz|sweep|all")->required();
  verify_cmd->add_option("--seed", suite_options.seed);

  auto* synth_cmd = app.add_subcommand("synth", "Realise an expansion as a step function (CSV)");
  std::optional<std::int64_t> grid, window;
  synth_cmd->add_option("input", in_path)->required();
  synth_cmd->add_option("--grid", grid, "Grid level J");
  synth_cmd->add_option("--window", window, "Window exponent M");

  auto* analyze_cmd = app.add_subcommand("analyze", "Haar coefficients of a step function (CSV)");
  std::int64_t coarse = 0;
  analyze_cmd->add_option("input", in_path)->required();
  analyze_cmd->add_option("--jmin", coarse, "Coarsest level kept")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  set_threads(threads);

  try {
    if (*delta_cmd) {
      const auto x = DyadicPoint::parse(x_text);
      const auto y = DyadicPoint::parse(y_text);
      emit({{"x", x.str()}, {"y", y.str()}, {"delta", delta(x, y).str()}});
    } else if (*classify_cmd) {
      const auto x = DyadicPoint::parse(x_text);
      const auto y = DyadicPoint::parse(y_text);
      const auto label = classify(x, y);
      emit({{"x", x.str()},
            {"y", y.str()},
            {"class", label.class_index},
            {"level", label.level_index},
            {"interval", to_json(min_common_interval(x, y))}});
    } else if (*kernel_cmd) {
      const auto x = DyadicPoint::parse(x_text);
      const auto y = DyadicPoint::parse(y_text);
      if (component) {
        const auto v = kernel_component(*component, x, y);
        emit({{"i", *component}, {"value", v.str()}, {"approx", v.to_double()}, {"delta", delta(x, y).str()}});
      } else {
        emit(to_json(kernel_vector(x, y)));
      }
    } else if (*apply_cmd) {
      const auto f = expansion_from_json(read_json_file(in_path));
      const auto need_index = [&] {
        if (!index) throw ParseError("--op " + op + " needs --i");
        return *index;
      };
      const auto need_multiplier = [&] {
        if (m_path.empty()) throw ParseError("--op " + op + " needs --m");
        return multiplier_from_json(read_json_file(m_path));
      };
      if (op == "laplacian") {
        emit(to_json(frac_laplacian(f, FractionalOrder(s))));
      } else if (op == "inverse") {
        emit(to_json(inv_frac_laplacian(f, FractionalOrder(s))));
      } else if (op == "partial") {
        emit(to_json(partial(f, FractionalOrder(s), need_index())));
      } else if (op == "directional") {
        emit(to_json(directional(f, FractionalOrder(s), need_multiplier())));
      } else if (op == "gradient") {
        emit(to_json(gradient(f, FractionalOrder(s))));
      } else if (op == "multiplier") {
        emit(to_json(apply_multiplier(f, need_multiplier())));
      } else {
        emit(to_json(project(f, need_index())));
      }
    } else if (*energy_cmd) {
      emit(to_json(energy_report(expansion_from_json(read_json_file(in_path)), FractionalOrder(s))));
    } else if (*pairing_cmd) {
      const auto phi = expansion_from_json(read_json_file(in_path));
      const auto psi = gradient_from_json(read_json_file(psi_path));
      const auto r = cz_pairing(phi, psi);
      auto j = to_json(r);
      const bool ok = std::abs(r.lhs - r.rhs) <= tolerance * std::max(std::abs(r.lhs), 1.0);
      j["passed"] = ok;
      emit(j);
      return ok ? 0 : kExitFailed;
    } else if (*sweep_cmd) {
      const auto report = ratio_sweep(sweep);
      if (format == "csv") {
        write_csv(std::cout, report);
      } else {
        emit(to_json(report));
      }
    } else if (*cz_cmd) {
      const auto report = check_cz_hypotheses(cz);
      emit(to_json(report));
      return report.passed() ? 0 : kExitFailed;
    } else if (*verify_cmd) {
      const auto report = run_suite(suite, suite_options);
      if (format == "csv") {
        std::cout << "check,passed,worst\n";
        for (const auto& c : report.checks) std::cout << '"' << c.name << "\"," << c.passed << ',' << c.worst << '\n';
      } else {
        emit(to_json(report));
      }
      return report.passed() ? 0 : kExitFailed;
    } else if (*synth_cmd) {
      const auto f = expansion_from_json(read_json_file(in_path));
      const auto step = grid || window ? synthesize(f, grid.value_or(f.empty() ? 0 : f.max_level() + 1),
                                                    window.value_or(f.required_window()))
                                       : synthesize(f);
      write_csv(std::cout, step);
    } else if (*analyze_cmd) {
      std::ifstream in(in_path);
      if (!in) throw ParseError("cannot open " + in_path);
      const auto result = analyze(read_csv(in), coarse);
      auto j = to_json(result.expansion);
      j["residual"] = result.residual;
      emit(j);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
