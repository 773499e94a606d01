#include "spintrio/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "spintrio/critical.hpp"
#include "spintrio/entanglement.hpp"
#include "spintrio/states.hpp"

namespace spintrio {

Variable parse_variable(const std::string& s) {
  if (s == "x") return Variable::x;
  if (s == "y") return Variable::y;
  if (s == "T") return Variable::T;
  throw UsageError("unknown sweep variable '" + s + "' (expected x, y or T)");
}

const char* variable_name(Variable v) {
  switch (v) {
    case Variable::x: return "x";
    case Variable::y: return "y";
    case Variable::T: return "T";
  }
  return "?";
}

Quantity parse_quantity(const std::string& s) {
  if (s == "energies") return Quantity::energies;
  if (s == "C_AC") return Quantity::C_AC;
  if (s == "C_BC") return Quantity::C_BC;
  if (s == "C_AB") return Quantity::C_AB;
  if (s == "tau1") return Quantity::tau1;
  if (s == "residual") return Quantity::residual;
  if (s == "U") return Quantity::U;
  if (s == "Z") return Quantity::Z;
  throw UsageError("unknown quantity '" + s + "'");
}

void check_spec(const SweepSpec& spec) {
  if (spec.steps < 2) throw UsageError("sweep needs at least 2 steps");
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to) ||
      !(spec.from < spec.to))
    throw UsageError("sweep range must satisfy from < to");
  if (!std::isfinite(spec.x) || !std::isfinite(spec.y) ||
      !std::isfinite(spec.T))
    throw UsageError("fixed parameters must be finite");
  if (spec.variable == Variable::T && !(spec.from > 0.0))
    throw UsageError("temperature sweeps need T > 0 throughout");
  if (spec.variable != Variable::T && spec.T < 0.0)
    throw UsageError("fixed temperature must be >= 0 (0 = ground state)");
  if (spec.quantities.empty()) throw UsageError("no quantities requested");
}

double abscissa(double from, double to, int steps, int i) {
  return from + ((to - from) * i) / (steps - 1);
}

namespace {

void compare(const char* what, double a, double b, const ModelParams& p,
             double T) {
  if (std::abs(a - b) > kSweepCrossCheckTol) {
    std::ostringstream msg;
    msg << "cross-check failed for " << what << " at x=" << p.x
        << " y=" << p.y << " T=" << T << ": " << a << " vs " << b;
    throw ConsistencyError(msg.str());
  }
}

}  // namespace

SweepRow compute_row(const ModelParams& p, double T, Backend backend,
                     bool cross_check) {
  const Levels levels = levels_for(p, backend);
  const auto ground = ground_state(levels);

  SweepRow row;
  row.x = p.x;
  row.y = p.y;
  row.T = T;
  row.E0 = ground.energy;
  row.degeneracy = ground.degeneracy;

  EntanglementReport rep;
  if (T == 0.0) {
    rep = report(ground.rho);
    row.U = ground.energy;
    row.Z = std::numeric_limits<double>::quiet_NaN();
  } else {
    const auto th = thermal_state(levels, T);
    rep = report(th.rho);
    row.U = internal_energy(levels, T);
    row.Z = std::exp(th.log_partition);
  }
  row.C_AC = rep.c_ac;
  row.C_BC = rep.c_bc;
  row.C_AB = rep.c_ab;
  row.tau1_A = rep.tau1[EntanglementReport::slot(Site::A)];
  row.tau1_C = rep.tau1[EntanglementReport::slot(Site::C)];
  row.residual = rep.residual[EntanglementReport::slot(Site::A)];

  if (cross_check) {
    if (T == 0.0) {
      try {
        const auto cf = closed_form_ground(p);
        compare("C_AC", row.C_AC, cf.c_ac, p, T);
        compare("C_BC", row.C_BC, cf.c_ac, p, T);
        compare("C_AB", row.C_AB, cf.c_ab, p, T);
      } catch (const std::domain_error&) {
        // Crossing point or negative field: no closed form to compare with.
      }
    } else {
      compare("C_AC", row.C_AC, thermal_concurrence(p, T, Pair::AC), p, T);
      compare("C_BC", row.C_BC, thermal_concurrence(p, T, Pair::BC), p, T);
      compare("C_AB", row.C_AB, thermal_concurrence(p, T, Pair::AB), p, T);
    }
  }
  return row;
}

unsigned sweep_threads() {
  unsigned n = 0;
  if (const char* env = std::getenv("SPINTRIO_THREADS")) {
    unsigned v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    if (std::from_chars(env, end, v).ec == std::errc{}) n = v;
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  check_spec(spec);
  std::vector<SweepRow> rows(static_cast<std::size_t>(spec.steps));

  auto eval = [&](int i) {
    const double v = abscissa(spec.from, spec.to, spec.steps, i);
    ModelParams p{spec.x, spec.y};
    double T = spec.T;
    switch (spec.variable) {
      case Variable::x: p.x = v; break;
      case Variable::y: p.y = v; break;
      case Variable::T: T = v; break;
    }
    rows[static_cast<std::size_t>(i)] =
        compute_row(p, T, spec.backend, spec.cross_check);
  };

  const unsigned workers =
      std::min<unsigned>(sweep_threads(), static_cast<unsigned>(spec.steps));
  if (workers <= 1) {
    for (int i = 0; i < spec.steps; ++i) eval(i);
    return rows;
  }

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i = next++; i < spec.steps && !failed; i = next++) eval(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

namespace {

bool wants(const SweepSpec& spec, Quantity q) {
  return std::find(spec.quantities.begin(), spec.quantities.end(), q) !=
         spec.quantities.end();
}

}  // namespace

std::vector<std::string> sweep_columns(const SweepSpec& spec) {
  std::vector<std::string> cols = {"x", "y", "T"};
  if (wants(spec, Quantity::energies)) {
    cols.push_back("E0");
    cols.push_back("degeneracy");
  }
  if (wants(spec, Quantity::C_AC)) cols.push_back("C_AC");
  if (wants(spec, Quantity::C_BC)) cols.push_back("C_BC");
  if (wants(spec, Quantity::C_AB)) cols.push_back("C_AB");
  if (wants(spec, Quantity::tau1)) {
    cols.push_back("tau1_A");
    cols.push_back("tau1_C");
  }
  if (wants(spec, Quantity::residual)) cols.push_back("residual");
  if (wants(spec, Quantity::U)) cols.push_back("U");
  if (wants(spec, Quantity::Z)) cols.push_back("Z");
  return cols;
}

Table sweep_table(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  Table t;
  t.header = sweep_columns(spec);
  for (const auto& r : rows) {
    std::vector<double> line;
    for (const auto& c : t.header) {
      if (c == "x") line.push_back(r.x);
      else if (c == "y") line.push_back(r.y);
      else if (c == "T") line.push_back(r.T);
      else if (c == "E0") line.push_back(r.E0);
      else if (c == "degeneracy") line.push_back(r.degeneracy);
      else if (c == "C_AC") line.push_back(r.C_AC);
      else if (c == "C_BC") line.push_back(r.C_BC);
      else if (c == "C_AB") line.push_back(r.C_AB);
      else if (c == "tau1_A") line.push_back(r.tau1_A);
      else if (c == "tau1_C") line.push_back(r.tau1_C);
      else if (c == "residual") line.push_back(r.residual);
      else if (c == "U") line.push_back(r.U);
      else if (c == "Z") line.push_back(r.Z);
    }
    t.rows.push_back(std::move(line));
  }
  return t;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    out << (i ? "," : "") << t.header[i];
  out << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_number(row[i]);
    out << "\r\n";
  }
}

namespace {

std::vector<std::string> split_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) return t;
  t.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != t.header.size())
      throw std::runtime_error("CSV row has " + std::to_string(fields.size()) +
                               " fields, header has " +
                               std::to_string(t.header.size()));
    std::vector<double> row;
    for (const auto& f : fields) {
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0')
        throw std::runtime_error("CSV field '" + f + "' is not a number");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_json(std::ostream& out, const Table& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (std::isfinite(row[i]))
        obj[t.header[i]] = row[i];
      else
        obj[t.header[i]] = nullptr;
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << "\n";
}

}  // namespace spintrio
