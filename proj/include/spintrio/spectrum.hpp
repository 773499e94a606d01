#pragma once

// Closed-form eigensystem of the open three-qubit chain.
//
// Each Sz = +-1/2 block is 3x3 and splits into an antisymmetric A/B singlet
// (psi_2, psi_7) and two symmetric states whose middle (C) amplitude is -R or
// -S relative to the boundary amplitudes.

#include <string>
#include <vector>

#include "spintrio/model.hpp"

namespace spintrio {

/// Helper functions of the anisotropy x.
///   U+-(x) = 1 + 2x +- sqrt(3(4x^2 - 4x + 3))
///   R = -U+ / (2(x-1)),  S = -U- / (2(x-1))
///   A = sqrt(2 + R^2),   B = sqrt(2 + S^2)
struct AnalyticCoefficients {
  double u_plus = 0.0;
  double u_minus = 0.0;
  double r = 0.0;       // +infinity at the Ising point x = 1
  double s = 0.0;
  double a_norm = 0.0;  // +infinity at the Ising point x = 1
  double b_norm = 0.0;
  bool ising_limit = false;
};

/// |x - 1| below this selects the Ising limit branch.
inline constexpr double kIsingLimitTol = 1e-9;

AnalyticCoefficients coefficients(double x);

/// Energy of level psi_k (k = 1..8), without building eigenvectors.
double analytic_energy(int label, const ModelParams& p);

/// Total Sz of level psi_k.
double analytic_sz(int label);

/// All eight levels psi_1..psi_8 in label order (not energy order).
Levels analytic_levels(const ModelParams& p);

/// Which eigensystem feeds the state constructors.
enum class Backend { analytic, numeric };

/// Levels from the requested backend. Analytic levels are in label order,
/// numeric ones in energy order with label 0.
Levels levels_for(const ModelParams& p, Backend backend);

struct VerifyReport {
  double max_energy_diff = 0.0;
  double max_subspace_angle = 0.0;  // largest principal angle, radians
  bool passed = true;
  std::vector<std::string> failures;
};

/// Compares the closed-form levels with the Jacobi eigensolver. Energies are
/// compared as sorted multisets; eigenvectors through principal angles
/// between degenerate subspaces.
VerifyReport verify_against_numeric(const ModelParams& p, double tol);

}  // namespace spintrio
