#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "spintrio/critical.hpp"
#include "spintrio/sweep.hpp"

namespace spintrio {

namespace {

std::string label_of(const char* prefix, double v) {
  std::ostringstream s;
  s << prefix << v;
  return s.str();
}

// Table with an abscissa column and one column per generator.
struct Column {
  std::string name;
  std::function<double(double)> f;
};

Table tabulate(const std::string& var, double from, double to, int steps,
               const std::vector<Column>& cols) {
  Table t;
  t.header.push_back(var);
  for (const auto& c : cols) t.header.push_back(c.name);
  for (int i = 0; i < steps; ++i) {
    const double v = abscissa(from, to, steps, i);
    std::vector<double> row{v};
    for (const auto& c : cols) row.push_back(c.f(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// Appends the concurrence columns of a sweep to `t` (same abscissae).
void append_sweep(Table& t, SweepSpec spec, Quantity q,
                  const std::string& name) {
  spec.quantities = {q};
  const auto rows = run_sweep(spec);
  t.header.push_back(name);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double v = 0.0;
    switch (q) {
      case Quantity::C_AC: v = rows[i].C_AC; break;
      case Quantity::C_BC: v = rows[i].C_BC; break;
      case Quantity::C_AB: v = rows[i].C_AB; break;
      default: break;
    }
    t.rows[i].push_back(v);
  }
}

Table abscissa_only(const std::string& var, double from, double to,
                    int steps) {
  return tabulate(var, from, to, steps, {});
}

SweepSpec sweep_of(Variable v, double from, double to, int steps, double x,
                   double y, double T) {
  SweepSpec s;
  s.variable = v;
  s.from = from;
  s.to = to;
  s.steps = steps;
  s.x = x;
  s.y = y;
  s.T = T;
  return s;
}

double energy_of(int label, double x, double y) {
  return analytic_energy(label, ModelParams{x, y});
}

double or_zero(const std::optional<CriticalPoint>& cp) {
  return cp ? cp->value : 0.0;
}

constexpr int kXSteps = 601;

}  // namespace

Table figure_table(int number) {
  switch (number) {
    case 2:
      return tabulate("x", -4.0, 2.0, kXSteps,
                      {{"E1_E8", [](double x) { return energy_of(1, x, 0.0); }},
                       {"E3_E5", [](double x) { return energy_of(3, x, 0.0); }}});
    case 3: {
      Table t = abscissa_only("x", -3.0, 3.0, kXSteps);
      const auto s = sweep_of(Variable::x, -3.0, 3.0, kXSteps, 0, 0.0, 0.0);
      append_sweep(t, s, Quantity::C_AC, "C_AC");
      append_sweep(t, s, Quantity::C_AB, "C_AB");
      return t;
    }
    case 4:
      return tabulate("x", -3.0, 3.0, kXSteps,
                      {{"E8", [](double x) { return energy_of(8, x, 0.5); }},
                       {"E5", [](double x) { return energy_of(5, x, 0.5); }}});
    case 5:
      return tabulate("y", 0.0, 3.0, kXSteps,
                      {{"E8", [](double y) { return energy_of(8, 0.5, y); }},
                       {"E5", [](double y) { return energy_of(5, 0.5, y); }},
                       {"E3", [](double y) { return energy_of(3, 0.5, y); }},
                       {"E1", [](double y) { return energy_of(1, 0.5, y); }}});
    case 6: {
      Table t = abscissa_only("x", -3.0, 3.0, kXSteps);
      const auto s = sweep_of(Variable::x, -3.0, 3.0, kXSteps, 0, 0.5, 0.0);
      append_sweep(t, s, Quantity::C_AC, "C_AC");
      append_sweep(t, s, Quantity::C_AB, "C_AB");
      return t;
    }
    case 7: {
      Table t = abscissa_only("y", 0.005, 3.0, 600);
      const auto s = sweep_of(Variable::y, 0.005, 3.0, 600, 0.5, 0, 0.0);
      append_sweep(t, s, Quantity::C_AC, "C_AC");
      append_sweep(t, s, Quantity::C_AB, "C_AB");
      return t;
    }
    case 8:
    case 11: {
      const double y = number == 8 ? 0.0 : 0.5;
      const std::vector<double> t_ac =
          number == 8 ? std::vector<double>{0.0, 0.5, 1.5}
                      : std::vector<double>{0.0, 0.5, 2.0};
      const std::vector<double> t_ab =
          number == 8 ? std::vector<double>{0.0, 0.1, 0.3}
                      : std::vector<double>{0.0, 0.5};
      Table t = abscissa_only("x", -3.0, 3.0, kXSteps);
      for (double T : t_ac)
        append_sweep(t, sweep_of(Variable::x, -3.0, 3.0, kXSteps, 0, y, T),
                     Quantity::C_AC, label_of("C_AC_T", T));
      for (double T : t_ab)
        append_sweep(t, sweep_of(Variable::x, -3.0, 3.0, kXSteps, 0, y, T),
                     Quantity::C_AB, label_of("C_AB_T", T));
      return t;
    }
    case 9:
    case 12: {
      const double y = number == 9 ? 0.0 : 0.5;
      const std::vector<double> xs = number == 9
                                         ? std::vector<double>{-1.5, -1.0, -0.55}
                                         : std::vector<double>{-1.5, -1.0, -0.5};
      constexpr int steps = 400;
      Table t = abscissa_only("T", 0.005, 2.0, steps);
      for (Quantity q : {Quantity::C_AC, Quantity::C_AB})
        for (double x : xs)
          append_sweep(t, sweep_of(Variable::T, 0.005, 2.0, steps, x, y, 0),
                       q,
                       label_of(q == Quantity::C_AC ? "C_AC_x" : "C_AB_x", x));
      return t;
    }
    case 10: {
      std::vector<Column> cols;
      for (double y : {0.1, 0.5, 1.0})
        cols.push_back({label_of("TC1_y", y), [y](double x) {
                          return or_zero(threshold_temperature({x, y}, Pair::AC));
                        }});
      for (double y : {0.1, 0.5, 1.0})
        cols.push_back({label_of("TC2_y", y), [y](double x) {
                          return or_zero(threshold_temperature({x, y}, Pair::AB));
                        }});
      return tabulate("x", -3.0, 3.0, 241, cols);
    }
    case 13: {
      std::vector<Column> cols;
      for (double y : {0.0, 0.1, 0.5, 1.0})
        cols.push_back({label_of("TE_y", y), [y](double x) {
                          return or_zero(gap_temperature({x, y}));
                        }});
      return tabulate("x", -3.0, 3.0, 121, cols);
    }
  }
  throw UsageError("no figure " + std::to_string(number) + " (valid: 2..13)");
}

namespace {

struct PlotInfo {
  const char* xlabel;
  const char* ylabel;
  const char* title;
};

PlotInfo plot_info(int number) {
  switch (number) {
    case 2: return {"x", "energy", "two lowest levels, y = 0"};
    case 3: return {"x", "concurrence", "ground-state C_AC and C_AB, y = 0"};
    case 4: return {"x", "energy", "E8 and E5, y = 0.5"};
    case 5: return {"y", "energy", "lowest levels, x = 0.5"};
    case 6: return {"x", "concurrence", "ground-state C_AC and C_AB, y = 0.5"};
    case 7: return {"y", "concurrence", "ground-state C_AC and C_AB, x = 0.5"};
    case 8: return {"x", "concurrence", "thermal C_AC and C_AB, y = 0"};
    case 9: return {"T", "concurrence", "thermal C_AC and C_AB, y = 0"};
    case 10: return {"x", "threshold temperature", "T_C(1) and T_C(2)"};
    case 11: return {"x", "concurrence", "thermal C_AC and C_AB, y = 0.5"};
    case 12: return {"T", "concurrence", "thermal C_AC and C_AB, y = 0.5"};
    case 13: return {"x", "T_E", "entanglement gap temperature"};
  }
  return {"", "", ""};
}

std::string plot_script(int number, const std::string& csv_name,
                        const Table& t) {
  const auto info = plot_info(number);
  std::ostringstream s;
  s << "# gnuplot script; reads " << csv_name << " only\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel '" << info.xlabel << "'\n"
    << "set ylabel '" << info.ylabel << "'\n"
    << "set title '" << info.title << "'\n"
    << "plot ";
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    s << (c > 1 ? ", \\\n     " : "") << "'" << csv_name << "' using 1:"
      << c + 1 << " with lines";
  }
  s << "\n";
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  out << body;
  out.close();
  if (!out) throw IoError("write failed", path);
}

}  // namespace

std::vector<FigureFile> write_figures(const std::filesystem::path& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec || !std::filesystem::is_directory(outdir))
    throw IoError("cannot create output directory", outdir);

  std::vector<FigureFile> files;
  for (int n = 2; n <= 13; ++n) {
    char name[8];
    std::snprintf(name, sizeof name, "fig%02d", n);
    const Table t = figure_table(n);
    FigureFile f{name, outdir / (std::string(name) + ".csv"),
                 outdir / (std::string(name) + ".gp")};
    std::ostringstream csv;
    write_csv(csv, t);
    write_file(f.csv, csv.str());
    write_file(f.script, plot_script(n, f.csv.filename().string(), t));
    files.push_back(std::move(f));
  }
  return files;
}

}  // namespace spintrio
