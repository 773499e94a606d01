#pragma once

// Three-qubit open chain A - C - B: computational basis, spin operators,
// the dimensionless Hamiltonian and a numerical eigensolver.
//
// Basis states are |s_A s_C s_B> packed into an index 0..7 with bit 2 = A,
// bit 1 = C, bit 0 = B and a set bit meaning spin up. |up up up> is 7,
// |down down down> is 0. The central qubit C sits in the middle slot.

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spintrio {

inline constexpr int kDim = 8;

using RealMatrix8 = Eigen::Matrix<double, kDim, kDim>;
using RealVector8 = Eigen::Matrix<double, kDim, 1>;

/// The two dimensionless couplings: x = D_ex / J (axial anisotropy) and
/// y = g mu_B B / J (longitudinal field).
struct ModelParams {
  double x = 0.0;
  double y = 0.0;
};

enum class Site { A, C, B };

/// Bit position of a site inside a basis index.
constexpr int site_bit(Site s) {
  switch (s) {
    case Site::A: return 2;
    case Site::C: return 1;
    case Site::B: return 0;
  }
  return -1;
}

const char* site_name(Site s);

class BasisIndex {
 public:
  explicit BasisIndex(int index) : index_(index) {
    if (index < 0 || index >= kDim)
      throw std::out_of_range("basis index " + std::to_string(index) +
                              " outside 0..7");
  }
  int value() const noexcept { return index_; }
  bool up(Site s) const noexcept { return (index_ >> site_bit(s)) & 1; }

 private:
  int index_;
};

/// z-component of the total spin of a product state (half-integer).
double total_sz(BasisIndex b);

/// Single-site spin operators lifted to the 8-dim space.
RealMatrix8 spin_z(Site s);
RealMatrix8 spin_plus(Site s);
RealMatrix8 spin_minus(Site s);
RealMatrix8 total_spin_z();

/// H = (1+2x)(S_Az S_Cz + S_Bz S_Cz)
///     + (1-x)/2 (S_A+ S_C- + S_A- S_C+ + S_B+ S_C- + S_B- S_C+)
///     + y (S_Az + S_Bz + S_Cz),   in units of the isotropic exchange.
RealMatrix8 build_hamiltonian(const ModelParams& p);

/// One eigenpair. `label` is the 1-based level number psi_1..psi_8 when the
/// level comes from the closed-form spectrum and 0 for numeric levels.
struct Level {
  int label = 0;
  double energy = 0.0;
  RealVector8 vector = RealVector8::Zero();
  double sz_total = 0.0;
};

using Levels = std::array<Level, kDim>;

/// Levels sorted by ascending energy.
struct EigenSystem {
  Levels levels;
  int sweeps = 0;
  double residual = 0.0;
};

class SectorLeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kJacobiSweepBudget = 50;
inline constexpr double kJacobiRelTol = 1e-13;
inline constexpr double kSectorLeakTol = 1e-10;

/// Two energies count as degenerate iff |a-b| <= 1e-9 max(1, |a|).
inline constexpr double kDegeneracyTol = 1e-9;
bool degenerate(double a, double b, double tol = kDegeneracyTol);

/// Cyclic Jacobi diagonalization of a symmetric 8x8 operator that conserves
/// total Sz. Each eigenvector is assigned the Sz sector carrying its weight;
/// weight outside that sector above 1e-10 raises SectorLeakError.
EigenSystem diagonalize(const RealMatrix8& m);

/// Flips the overall sign so the first amplitude with |a| > 1e-12 is positive.
void canonicalize_sign(RealVector8& v);

}  // namespace spintrio
