#pragma once

// Pairwise and single-site entanglement measures.
//
// Two-qubit matrices use the same bit convention as the 8-dim basis: index
// 2*s1 + s2 with a set bit meaning up, so |up up> is 3 and |down down> is 0.

#include <array>
#include <stdexcept>

#include "spintrio/model.hpp"
#include "spintrio/states.hpp"

namespace spintrio {

/// AC and BC are nearest-neighbour pairs; AB is the boundary (nnn) pair.
enum class Pair { AC, BC, AB };

const char* pair_name(Pair p);
Site first_site(Pair p);
Site second_site(Pair p);

/// Reduced state of the named pair, ordered (first, second) as in the label.
DensityMatrix partial_trace(const DensityMatrix& rho8, Pair keep);
/// Single-site reduced state, |up> at index 1.
DensityMatrix partial_trace(const DensityMatrix& rho8, Site keep);

/// Entries of a two-qubit X-state:
///   u = <uu|rho|uu>, w1 = <ud|rho|ud>, w2 = <du|rho|du>, v = <dd|rho|dd>,
///   offdiag = <du|rho|ud> (signed).
/// `scale` is the trace; 1 for normalized states, the (shifted) partition
/// function for the unnormalized thermal closed forms.
struct XStateElements {
  double u = 0.0;
  double v = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double offdiag = 0.0;
  double scale = 1.0;

  XStateElements normalized() const;
};

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kXPatternTol = 1e-10;

/// Throws StructureError when any entry outside the X pattern (or the
/// imaginary part of the coherence) exceeds 1e-10.
XStateElements xstate_elements(const DensityMatrix& rho4);

/// (2 / scale) max(0, |offdiag| - sqrt(u v)).
double concurrence_xstate(const XStateElements& e);

/// The quantity whose positive part is the X-state concurrence:
/// (|offdiag| - sqrt(u v)) / scale.
double concurrence_margin(const XStateElements& e);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) from the spin-flipped
/// product, evaluated in quad precision so that tiny eigenvalues do not
/// pollute the square roots.
double concurrence_wootters(const DensityMatrix& rho4);

/// tau_1 = 4 det(rho) of a single-qubit state.
double one_tangle(const DensityMatrix& rho2);

inline constexpr double kPurityGuard = 1e-8;
inline constexpr double kConcurrenceCrossCheckTol = 1e-10;

struct EntanglementReport {
  double c_ac = 0.0;
  double c_bc = 0.0;
  double c_ab = 0.0;
  /// Indexed by Site order A, C, B.
  std::array<double, 3> tau1{};
  std::array<double, 3> tau2{};
  std::array<double, 3> residual{};
  bool pure = false;
  /// tau1 - tau2 is an entanglement monotone only for pure states.
  bool residual_is_monotone = false;

  double concurrence(Pair p) const;
  static std::size_t slot(Site s) { return static_cast<std::size_t>(s); }
};

/// Pair concurrences through the Wootters oracle (cross-checked against the
/// X-state formula whenever the pair matrix has the X pattern), one-tangles
/// and residual tangle per focus site.
EntanglementReport report(const DensityMatrix& rho8);

struct GroundConcurrences {
  double c_ac = 0.0;
  double c_ab = 0.0;
};

/// Closed-form ground-state concurrences.
///  y = 0, ground {psi3, psi5}: C_AC = 2 max(0, |R|/A^2 - 1/(2A^2)),
///                              C_AB = 2 max(0, 1/A^2 - R^2/(2A^2))
///  y = 0, ground {psi1, psi8}: separable product mixture, both 0
///  y > 0, ground psi5:         C_AC = 2|R|/A^2, C_AB = 2/A^2
/// Any other ground configuration throws std::domain_error.
GroundConcurrences closed_form_ground(const ModelParams& p);

/// Unnormalized reduced-matrix elements of the thermal state for a pair.
/// The weights are exp(-(E_k - E_min)/T), so `scale` = Z exp(E_min/T); every
/// element/scale ratio equals the Z-normalized element.
XStateElements closed_form_thermal_elements(const ModelParams& p, double T,
                                            Pair pair);

}  // namespace spintrio
