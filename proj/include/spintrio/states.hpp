#pragma once

// Ground-state and thermal density matrices built from an eigensystem.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spintrio/model.hpp"

namespace spintrio {

/// Hermitian, positive semidefinite, unit-trace matrix of dimension 2, 4 or 8.
/// The constructor validates the invariants and throws std::invalid_argument.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kNegativeEigenTol = 1e-10;

  explicit DensityMatrix(Eigen::MatrixXcd m);
  static DensityMatrix from_real(const Eigen::MatrixXd& m);
  /// |psi><psi| for a normalized state vector.
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  std::complex<double> operator()(int r, int c) const { return m_(r, c); }

  double purity() const;
  /// Trace distance (1/2) ||a - b||_1.
  friend double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

 private:
  Eigen::MatrixXcd m_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct GroundStateInfo {
  double energy = 0.0;
  int degeneracy = 1;
  std::vector<int> member_labels;  // psi labels, 0 for numeric levels
  DensityMatrix rho;
};

/// Equal-weight mixture of every level within `tol` (relative, see
/// `degenerate`) of the lowest energy.
GroundStateInfo ground_state(std::span<const Level> levels,
                             double tol = kDegeneracyTol);

struct ThermoState {
  double temperature = 0.0;
  DensityMatrix rho;
  double log_partition = 0.0;
};

/// Boltzmann weights exp(-(E_k - E_min)/T), normalized, in level order.
std::vector<double> boltzmann_weights(std::span<const Level> levels, double T);

/// rho(T) = Z^-1 sum_k exp(-E_k/T) |psi_k><psi_k| with k_B = J = 1.
/// T <= 0 is rejected; use ground_state for T = 0.
ThermoState thermal_state(std::span<const Level> levels, double T);

/// ln Z computed from shifted exponentials, finite for every T > 0.
double log_partition_function(std::span<const Level> levels, double T);
/// Z itself; overflows to +inf when -E_min/T exceeds the double range.
double partition_function(std::span<const Level> levels, double T);
/// Thermal energy U(T) = sum_k E_k w_k.
double internal_energy(std::span<const Level> levels, double T);

}  // namespace spintrio
