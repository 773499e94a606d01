#pragma once

// Level-crossing locators, the minimal product-state energy and the
// characteristic temperatures of the thermal state.

#include <array>
#include <optional>

#include "spintrio/entanglement.hpp"
#include "spintrio/model.hpp"

namespace spintrio {

enum class CriticalKind { qpt_x, qpt_y, gap_temp, threshold_nn, threshold_nnn };

const char* kind_name(CriticalKind k);

struct CriticalPoint {
  CriticalKind kind{};
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double residual = 0.0;  // |defining equation| at value
};

/// Scan grid for the level-crossing locators.
inline constexpr double kQptScanStep = 1e-3;
inline constexpr double kQptXMin = -6.0;
inline constexpr double kQptXMax = 6.0;
inline constexpr double kQptYMax = 50.0;

/// Smallest x in [-6, 6] where the ground level set changes, at field y >= 0.
/// Bisects E_a(x) = E_b(x) between the old and the new ground level.
std::optional<CriticalPoint> locate_qpt_x(double y);

/// Smallest y in (0, 50] where the ground level changes, at anisotropy x.
std::optional<CriticalPoint> locate_qpt_y(double x);

/// Crossing field of psi_5 and psi_8: y_c = (2(1+2x) + U+(x)) / 4.
double psi5_psi8_crossing_field(double x);

struct SeparableEnergy {
  double value = 0.0;
  /// Polar angles of the three classical spins in the xz plane, ordered
  /// A, C, B.
  std::array<double, 3> angles{};
};

/// <H> of the product state with spins of length 1/2 at the given polar
/// angles (A, C, B) in the xz plane.
double product_state_energy(const ModelParams& p,
                            const std::array<double, 3>& angles);

/// Same for arbitrary directions (theta, phi) per site.
double product_state_energy(const ModelParams& p,
                            const std::array<double, 3>& theta,
                            const std::array<double, 3>& phi);

/// Minimum of <H> over product states. Coplanar reduction (axial symmetry),
/// 72^3 grid at 5 degree resolution, then exact coordinate descent.
SeparableEnergy separable_energy(const ModelParams& p);

/// Root of U(T) = E_sep; none when the ground energy is not below E_sep.
std::optional<CriticalPoint> gap_temperature(const ModelParams& p);

inline constexpr double kThresholdTMax = 50.0;
inline constexpr double kThresholdTMin = 1e-3;
inline constexpr int kThresholdScanPoints = 2000;

/// Largest T in (0, 50] with positive concurrence for the pair; AC/BC give
/// the nearest-neighbour threshold, AB the boundary-pair threshold.
std::optional<CriticalPoint> threshold_temperature(const ModelParams& p,
                                                   Pair pair);

/// Ground concurrence of a pair at T = 0 from the closed forms.
double ground_concurrence(const ModelParams& p, Pair pair);

/// Thermal concurrence of a pair from the closed-form elements.
double thermal_concurrence(const ModelParams& p, double T, Pair pair);

}  // namespace spintrio
