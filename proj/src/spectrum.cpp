#include "spintrio/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spintrio {

namespace {

// Basis indices used by the closed-form vectors (bit2 = A, bit1 = C, bit0 = B).
constexpr int kUUU = 7;
constexpr int kUUD = 6;  // A up, C up, B down
constexpr int kUDU = 5;  // A up, C down, B up
constexpr int kDUU = 3;
constexpr int kDDU = 1;
constexpr int kDUD = 2;
constexpr int kUDD = 4;
constexpr int kDDD = 0;

// Symmetric state (|left> - ratio |mid> + |right>) / norm; ratio may be
// infinite, in which case the state collapses onto |mid>.
RealVector8 symmetric_state(int left, int mid, int right, double ratio,
                            double norm) {
  RealVector8 v = RealVector8::Zero();
  if (std::isinf(ratio)) {
    v(mid) = 1.0;
    return v;
  }
  v(left) = 1.0 / norm;
  v(mid) = -ratio / norm;
  v(right) = 1.0 / norm;
  return v;
}

RealVector8 singlet(int minus, int plus) {
  RealVector8 v = RealVector8::Zero();
  v(minus) = -1.0 / std::sqrt(2.0);
  v(plus) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

AnalyticCoefficients coefficients(double x) {
  AnalyticCoefficients c;
  const double lin = 1.0 + 2.0 * x;
  const double root = std::sqrt(3.0 * (4.0 * x * x - 4.0 * x + 3.0));
  const double d = x - 1.0;
  // U+ U- = -8 (x-1)^2; take the cancellation-free root first.
  if (lin >= 0.0) {
    c.u_plus = lin + root;
    c.u_minus = -8.0 * d * d / c.u_plus;
  } else {
    c.u_minus = lin - root;
    c.u_plus = -8.0 * d * d / c.u_minus;
  }

  if (std::abs(d) < kIsingLimitTol) {
    c.ising_limit = true;
    c.r = std::numeric_limits<double>::infinity();
    c.s = 0.0;
    c.a_norm = std::numeric_limits<double>::infinity();
    c.b_norm = std::sqrt(2.0);
    return c;
  }

  c.r = -c.u_plus / (2.0 * d);
  c.s = -c.u_minus / (2.0 * d);
  c.a_norm = std::sqrt(2.0 + c.r * c.r);
  c.b_norm = std::sqrt(2.0 + c.s * c.s);
  return c;
}

double analytic_sz(int label) {
  switch (label) {
    case 1: return 1.5;
    case 2: case 3: case 4: return 0.5;
    case 5: case 6: case 7: return -0.5;
    case 8: return -1.5;
  }
  throw std::out_of_range("level label must be 1..8");
}

namespace {

double energy_from(int label, const ModelParams& p, double u_plus,
                   double u_minus) {
  const double x = p.x;
  const double y = p.y;
  switch (label) {
    case 1: return 0.5 * (1.0 + 2.0 * x + 3.0 * y);
    case 2: return 0.5 * y;
    case 3: return 0.25 * (2.0 * y - u_plus);
    case 4: return 0.25 * (2.0 * y - u_minus);
    case 5: return 0.25 * (-2.0 * y - u_plus);
    case 6: return 0.25 * (-2.0 * y - u_minus);
    case 7: return -0.5 * y;
    case 8: return 0.5 * (1.0 + 2.0 * x - 3.0 * y);
  }
  throw std::out_of_range("level label must be 1..8");
}

}  // namespace

double analytic_energy(int label, const ModelParams& p) {
  const auto c = coefficients(p.x);
  return energy_from(label, p, c.u_plus, c.u_minus);
}

Levels analytic_levels(const ModelParams& p) {
  const auto c = coefficients(p.x);
  Levels out;

  std::array<RealVector8, kDim> vec;
  vec[0] = RealVector8::Unit(kUUU);
  vec[1] = singlet(kUUD, kDUU);
  vec[2] = symmetric_state(kUUD, kUDU, kDUU, c.r, c.a_norm);
  vec[3] = symmetric_state(kUUD, kUDU, kDUU, c.s, c.b_norm);
  vec[4] = symmetric_state(kDDU, kDUD, kUDD, c.r, c.a_norm);
  vec[5] = symmetric_state(kDDU, kDUD, kUDD, c.s, c.b_norm);
  vec[6] = singlet(kDDU, kUDD);
  vec[7] = RealVector8::Unit(kDDD);

  for (int k = 0; k < kDim; ++k) {
    Level& lvl = out[k];
    lvl.label = k + 1;
    lvl.energy = energy_from(k + 1, p, c.u_plus, c.u_minus);
    lvl.vector = vec[k];
    canonicalize_sign(lvl.vector);
    lvl.sz_total = analytic_sz(k + 1);
  }
  return out;
}

Levels levels_for(const ModelParams& p, Backend backend) {
  if (backend == Backend::analytic) return analytic_levels(p);
  return diagonalize(build_hamiltonian(p)).levels;
}

namespace {

// Sine of the largest principal angle between span(a) and span(b), both with
// orthonormal columns of equal count.
double max_principal_sine(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd residual = a - b * (b.transpose() * a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  return svd.singularValues()(0);
}

}  // namespace

VerifyReport verify_against_numeric(const ModelParams& p, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("verify_against_numeric: tol must be > 0");

  Levels analytic = analytic_levels(p);
  std::stable_sort(analytic.begin(), analytic.end(),
                   [](const Level& a, const Level& b) {
                     return a.energy < b.energy;
                   });
  const EigenSystem numeric = diagonalize(build_hamiltonian(p));

  VerifyReport rep;
  for (int k = 0; k < kDim; ++k) {
    const double diff =
        std::abs(analytic[k].energy - numeric.levels[k].energy);
    rep.max_energy_diff = std::max(rep.max_energy_diff, diff);
    if (diff > tol) {
      std::ostringstream msg;
      msg << "energy of psi_" << analytic[k].label << " = "
          << analytic[k].energy << " vs numeric " << numeric.levels[k].energy;
      rep.failures.push_back(msg.str());
    }
  }

  // Walk degenerate clusters of the sorted analytic energies.
  int start = 0;
  while (start < kDim) {
    int end = start + 1;
    while (end < kDim &&
           degenerate(analytic[start].energy, analytic[end].energy))
      ++end;
    const int k = end - start;
    Eigen::MatrixXd qa(kDim, k), qn(kDim, k);
    for (int j = 0; j < k; ++j) {
      qa.col(j) = analytic[start + j].vector;
      qn.col(j) = numeric.levels[start + j].vector;
    }
    const double sine = std::min(1.0, max_principal_sine(qa, qn));
    const double angle = std::asin(sine);
    rep.max_subspace_angle = std::max(rep.max_subspace_angle, angle);
    if (angle > tol) {
      std::ostringstream msg;
      msg << "eigenspace of {";
      for (int j = 0; j < k; ++j)
        msg << (j ? ", " : "") << "psi_" << analytic[start + j].label;
      msg << "} deviates by principal angle " << angle;
      rep.failures.push_back(msg.str());
    }
    start = end;
  }

  rep.passed = rep.failures.empty();
  return rep;
}

}  // namespace spintrio
