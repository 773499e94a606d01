// spintrio: command-line front end for the three-qubit chain library.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure, 3 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spintrio/critical.hpp"
#include "spintrio/entanglement.hpp"
#include "spintrio/spectrum.hpp"
#include "spintrio/states.hpp"
#include "spintrio/sweep.hpp"

namespace {

using namespace spintrio;

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct Common {
  double x = 0.0;
  double y = 0.0;
  double T = 0.0;
  std::string out;
  bool json = false;
  bool oracle = false;

  Backend backend() const {
    return oracle ? Backend::numeric : Backend::analytic;
  }
  ModelParams params() const { return {x, y}; }
};

void add_common(CLI::App* app, Common& c, bool with_t) {
  app->add_option("--x", c.x, "anisotropy parameter x")->capture_default_str();
  app->add_option("--y", c.y, "reduced field y")->capture_default_str();
  if (with_t)
    app->add_option("--T", c.T, "temperature (0 = ground state)")
        ->capture_default_str();
  app->add_option("--out", c.out, "write to this file instead of stdout");
  app->add_flag("--json", c.json, "emit JSON instead of CSV");
  app->add_flag("--oracle", c.oracle,
                "use the numeric Jacobi backend instead of closed forms");
}

// Writes `body` to stdout or to `path`.
template <typename Writer>
void emit(const std::string& path, Writer&& body) {
  if (path.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing", path);
  body(f);
  f.close();
  if (!f) throw IoError("write failed", path);
}

void emit_table(const Common& c, const Table& t) {
  emit(c.out, [&](std::ostream& os) {
    if (c.json)
      write_json(os, t);
    else
      write_csv(os, t);
  });
}

double value_or_nan(const std::optional<CriticalPoint>& cp) {
  return cp ? cp->value : std::numeric_limits<double>::quiet_NaN();
}

void append_report(Table& t, const EntanglementReport& rep) {
  const char* sites[] = {"A", "C", "B"};
  for (const char* n : {"C_AC", "C_BC", "C_AB"}) t.header.push_back(n);
  for (const char* s : sites) t.header.push_back(std::string("tau1_") + s);
  for (const char* s : sites) t.header.push_back(std::string("tau2_") + s);
  for (const char* s : sites) t.header.push_back(std::string("residual_") + s);
  t.header.push_back("pure");
  auto& row = t.rows.back();
  row.insert(row.end(), {rep.c_ac, rep.c_bc, rep.c_ab});
  row.insert(row.end(), rep.tau1.begin(), rep.tau1.end());
  row.insert(row.end(), rep.tau2.begin(), rep.tau2.end());
  row.insert(row.end(), rep.residual.begin(), rep.residual.end());
  row.push_back(rep.pure ? 1.0 : 0.0);
}

int cmd_spectrum(const Common& c) {
  const Levels levels = levels_for(c.params(), c.backend());
  Table t;
  t.header = {"label", "energy", "sz_total"};
  for (int k = 0; k < kDim; ++k) t.header.push_back("a" + std::to_string(k));
  for (const auto& l : levels) {
    std::vector<double> row{static_cast<double>(l.label), l.energy, l.sz_total};
    for (int k = 0; k < kDim; ++k) row.push_back(l.vector(k));
    t.rows.push_back(std::move(row));
  }
  emit_table(c, t);
  return 0;
}

int cmd_ground(const Common& c) {
  const Levels levels = levels_for(c.params(), c.backend());
  const auto g = ground_state(levels);
  Table t;
  t.header = {"x", "y", "E0", "degeneracy"};
  t.rows.push_back({c.x, c.y, g.energy, static_cast<double>(g.degeneracy)});
  append_report(t, report(g.rho));
  emit_table(c, t);
  return 0;
}

int cmd_thermal(const Common& c) {
  if (!(c.T > 0.0) || !std::isfinite(c.T))
    throw UsageError("thermal needs --T > 0");
  const Levels levels = levels_for(c.params(), c.backend());
  const auto th = thermal_state(levels, c.T);
  Table t;
  t.header = {"x", "y", "T", "lnZ", "Z", "U"};
  t.rows.push_back({c.x, c.y, c.T, th.log_partition,
                    std::exp(th.log_partition), internal_energy(levels, c.T)});
  append_report(t, report(th.rho));
  emit_table(c, t);
  return 0;
}

int cmd_critical(const Common& c) {
  if (c.y < 0.0) throw UsageError("critical needs --y >= 0");
  const ModelParams p = c.params();
  Table t;
  t.header = {"x",     "y",       "x_c",  "y_c",  "y_c_psi5_psi8",
              "E_sep", "T_E",     "T_C1", "T_C2"};
  t.rows.push_back({c.x, c.y, value_or_nan(locate_qpt_x(c.y)),
                    value_or_nan(locate_qpt_y(c.x)),
                    psi5_psi8_crossing_field(c.x), separable_energy(p).value,
                    value_or_nan(gap_temperature(p)),
                    value_or_nan(threshold_temperature(p, Pair::AC)),
                    value_or_nan(threshold_temperature(p, Pair::AB))});
  emit_table(c, t);
  return 0;
}

std::vector<Quantity> parse_quantities(const std::string& list) {
  std::vector<Quantity> qs;
  std::istringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) qs.push_back(parse_quantity(item));
  return qs;
}

int cmd_sweep(const Common& c, const std::string& var, double from, double to,
              int steps, const std::string& quantities, bool check) {
  SweepSpec spec;
  spec.variable = parse_variable(var);
  spec.from = from;
  spec.to = to;
  spec.steps = steps;
  spec.x = c.x;
  spec.y = c.y;
  spec.T = c.T;
  spec.quantities = parse_quantities(quantities);
  spec.backend = c.backend();
  spec.cross_check = check;
  const auto rows = run_sweep(spec);
  emit_table(c, sweep_table(spec, rows));
  return 0;
}

int cmd_figures(const std::string& outdir) {
  for (const auto& f : write_figures(outdir))
    std::cout << f.csv.string() << "\n" << f.script.string() << "\n";
  return 0;
}

int cmd_validate(const Common& c, const std::string& grid, bool inject) {
  ValidationOptions opt;
  if (grid == "dense")
    opt.dense = true;
  else if (grid != "default")
    throw UsageError("unknown grid '" + grid + "' (expected default or dense)");
  opt.inject_offdiag_sign_error = inject;
  const auto rep = validate(opt);

  emit(c.out, [&](std::ostream& os) {
    if (c.json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rep.results)
        arr.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"checks", r.checks},
                       {"worst", r.worst},
                       {"detail", r.detail}});
      os << nlohmann::json{{"passed", rep.passed()}, {"invariants", arr}}
                .dump(2)
         << "\n";
      return;
    }
    for (const auto& r : rep.results) {
      os << (r.passed ? "PASS " : "FAIL ") << r.name << "  checks=" << r.checks
         << "  worst=" << format_number(r.worst);
      if (!r.passed) os << "  " << r.detail;
      os << "\n";
    }
    os << (rep.passed() ? "validate: all invariants hold\n"
                        : "validate: FAILED\n");
  });
  return rep.passed() ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, entanglement and critical points of the three-qubit "
               "anisotropic Heisenberg chain"};
  app.require_subcommand(1);

  Common common;

  auto* spectrum = app.add_subcommand("spectrum", "all eight levels");
  add_common(spectrum, common, false);

  auto* ground = app.add_subcommand("ground", "ground-state entanglement");
  add_common(ground, common, false);

  auto* thermal = app.add_subcommand("thermal", "thermal-state entanglement");
  add_common(thermal, common, true);

  auto* critical = app.add_subcommand(
      "critical", "transition points and characteristic temperatures");
  add_common(critical, common, false);

  auto* sweep = app.add_subcommand("sweep", "one-parameter sweep");
  add_common(sweep, common, true);
  std::string var;
  double from = 0.0, to = 0.0;
  int steps = 0;
  std::string quantities = "energies,C_AC,C_BC,C_AB";
  bool check = false;
  sweep->add_option("--var", var, "swept variable: x, y or T")->required();
  sweep->add_option("--from", from, "first abscissa")->required();
  sweep->add_option("--to", to, "last abscissa")->required();
  sweep->add_option("--steps", steps, "number of points (>= 2)")->required();
  sweep->add_option("--quantities", quantities,
                    "comma list of energies,C_AC,C_BC,C_AB,tau1,residual,U,Z")
      ->capture_default_str();
  sweep->add_flag("--check", check,
                  "cross-check every row against the closed forms");

  auto* figures = app.add_subcommand("figures", "write figure CSVs and plot scripts");
  std::string figdir;
  figures->add_option("--out", figdir, "output directory")->required();

  auto* validation = app.add_subcommand("validate", "run the invariant suite");
  add_common(validation, common, false);
  std::string grid = "default";
  bool inject = false;
  validation->add_option("--grid", grid, "default or dense")
      ->capture_default_str();
  validation
      ->add_flag("--inject-sign-error", inject,
                 "negative control: corrupt the closed-form coherence sign")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(common);
    if (*ground) return cmd_ground(common);
    if (*thermal) return cmd_thermal(common);
    if (*critical) return cmd_critical(common);
    if (*sweep)
      return cmd_sweep(common, var, from, to, steps, quantities, check);
    if (*figures) return cmd_figures(figdir);
    if (*validation) return cmd_validate(common, grid, inject);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
