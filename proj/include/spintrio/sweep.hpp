#pragma once

// Parameter sweeps, CSV/JSON emission, figure data and the invariant suite.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spintrio/spectrum.hpp"

namespace spintrio {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::filesystem::path path)
      : std::runtime_error(what + ": " + path.string()), path_(std::move(path)) {}
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Closed-form and numeric routes disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Variable { x, y, T };
enum class Quantity { energies, C_AC, C_BC, C_AB, tau1, residual, U, Z };

Variable parse_variable(const std::string& s);
Quantity parse_quantity(const std::string& s);
const char* variable_name(Variable v);

struct SweepSpec {
  Variable variable = Variable::x;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  // Values of the two variables not being swept; T = 0 selects the ground
  // state.
  double x = 0.0;
  double y = 0.0;
  double T = 0.0;
  std::vector<Quantity> quantities = {Quantity::energies, Quantity::C_AC,
                                      Quantity::C_BC, Quantity::C_AB};
  Backend backend = Backend::analytic;
  /// Recompute every concurrence through the closed forms and fail on a
  /// disagreement above 1e-9.
  bool cross_check = false;
};

/// Throws UsageError on an invalid spec.
void check_spec(const SweepSpec& spec);

/// Abscissa i of an inclusive linspace; exact for shared points of N and
/// 2N-1 step grids.
double abscissa(double from, double to, int steps, int i);

struct SweepRow {
  double x = 0.0;
  double y = 0.0;
  double T = 0.0;
  double E0 = 0.0;
  int degeneracy = 1;
  double C_AC = 0.0;
  double C_BC = 0.0;
  double C_AB = 0.0;
  double tau1_A = 0.0;
  double tau1_C = 0.0;
  double residual = 0.0;  // tau1 - tau2 with focus on site A
  double U = 0.0;
  double Z = 0.0;         // NaN on the T = 0 path
};

inline constexpr double kSweepCrossCheckTol = 1e-9;

/// One row at fixed (x, y, T); T = 0 takes the ground-state path.
SweepRow compute_row(const ModelParams& p, double T, Backend backend,
                     bool cross_check);

/// Rows in abscissa order. Rows are evaluated in parallel; SPINTRIO_THREADS
/// caps the worker count (0 or unset = hardware concurrency).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

unsigned sweep_threads();

/// Column names for the requested quantities, in schema order
/// x,y,T,E0,degeneracy,C_AC,C_BC,C_AB,tau1_A,tau1_C,residual,U[,Z].
std::vector<std::string> sweep_columns(const SweepSpec& spec);

/// Plain numeric table used for every CSV the tool writes.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table sweep_table(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Header row, ',' separator, '.' decimal, 17 significant digits.
void write_csv(std::ostream& out, const Table& t);
Table read_csv(std::istream& in);
/// Array of objects keyed by column name.
void write_json(std::ostream& out, const Table& t);

std::string format_number(double v);

struct FigureFile {
  std::string name;  // e.g. "fig03"
  std::filesystem::path csv;
  std::filesystem::path script;
};

/// Writes figNN.csv and a gnuplot script figNN.gp for every figure 2..13.
/// Throws IoError carrying the offending path.
std::vector<FigureFile> write_figures(const std::filesystem::path& outdir);

/// Builds the table behind one figure (2..13) without touching the disk.
Table figure_table(int number);

struct InvariantResult {
  std::string name;
  bool passed = true;
  long checks = 0;
  double worst = 0.0;  // largest observed violation measure
  std::string detail;  // first failure, if any
};

struct ValidationOptions {
  bool dense = false;
  /// Negative control: flips the sign of the closed-form thermal coherence
  /// before it is compared with the numeric partial trace.
  bool inject_offdiag_sign_error = false;
  unsigned seed = 20240917;
};

struct ValidationReport {
  std::vector<InvariantResult> results;
  bool passed() const;
};

ValidationReport validate(const ValidationOptions& options);

}  // namespace spintrio
