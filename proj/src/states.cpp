#include "spintrio/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spintrio {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  const auto n = m_.rows();
  if (m_.cols() != n || (n != 2 && n != 4 && n != 8))
    throw std::invalid_argument("density matrix must be 2x2, 4x4 or 8x8");
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    std::ostringstream msg;
    msg << "density matrix not Hermitian (deviation " << herm << ")";
    throw std::invalid_argument(msg.str());
  }
  const double trace_err = std::abs(m_.trace() - 1.0);
  if (trace_err > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace deviates from 1 by " << trace_err;
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kNegativeEigenTol) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue "
        << es.eigenvalues().minCoeff();
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix DensityMatrix::from_real(const Eigen::MatrixXd& m) {
  return DensityMatrix(m.cast<std::complex<double>>());
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

double DensityMatrix::purity() const {
  return (m_ * m_).trace().real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.m_ - b.m_,
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace {

double min_energy(std::span<const Level> levels) {
  if (levels.empty()) throw std::invalid_argument("no levels supplied");
  double e = levels.front().energy;
  for (const auto& l : levels) e = std::min(e, l.energy);
  return e;
}

void require_positive_temperature(double T) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw std::invalid_argument(
        "temperature must be finite and > 0 (use ground_state for T = 0)");
}

Eigen::MatrixXd mixture(std::span<const Level> levels,
                        std::span<const double> weights) {
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(kDim, kDim);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (weights[k] == 0.0) continue;
    rho.noalias() +=
        weights[k] * levels[k].vector * levels[k].vector.transpose();
  }
  return rho;
}

}  // namespace

GroundStateInfo ground_state(std::span<const Level> levels, double tol) {
  if (levels.size() != kDim)
    throw std::invalid_argument("ground_state: expected 8 levels");
  const double e0 = min_energy(levels);

  std::vector<int> members;
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (degenerate(e0, levels[k].energy, tol)) members.push_back(int(k));

  std::vector<double> w(levels.size(), 0.0);
  for (int k : members) w[k] = 1.0 / static_cast<double>(members.size());

  std::vector<int> labels;
  for (int k : members) labels.push_back(levels[k].label);

  return GroundStateInfo{e0, static_cast<int>(members.size()),
                         std::move(labels),
                         DensityMatrix::from_real(mixture(levels, w))};
}

std::vector<double> boltzmann_weights(std::span<const Level> levels,
                                      double T) {
  require_positive_temperature(T);
  const double e0 = min_energy(levels);
  std::vector<double> w(levels.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    w[k] = std::exp(-(levels[k].energy - e0) / T);
    sum += w[k];
  }
  for (double& v : w) v /= sum;
  return w;
}

double log_partition_function(std::span<const Level> levels, double T) {
  require_positive_temperature(T);
  const double e0 = min_energy(levels);
  double sum = 0.0;
  for (const auto& l : levels) sum += std::exp(-(l.energy - e0) / T);
  return std::log(sum) - e0 / T;
}

double partition_function(std::span<const Level> levels, double T) {
  return std::exp(log_partition_function(levels, T));
}

double internal_energy(std::span<const Level> levels, double T) {
  const auto w = boltzmann_weights(levels, T);
  double u = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) u += w[k] * levels[k].energy;
  return u;
}

ThermoState thermal_state(std::span<const Level> levels, double T) {
  if (levels.size() != kDim)
    throw std::invalid_argument("thermal_state: expected 8 levels");
  const auto w = boltzmann_weights(levels, T);
  Eigen::MatrixXd rho = mixture(levels, w);
  // Symmetrize away rounding so the Hermiticity check is exact.
  rho = 0.5 * (rho + rho.transpose()).eval();
  return ThermoState{T, DensityMatrix::from_real(rho),
                     log_partition_function(levels, T)};
}

}  // namespace spintrio
