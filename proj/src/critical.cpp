#include "spintrio/critical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spintrio/spectrum.hpp"
#include "spintrio/states.hpp"

namespace spintrio {

const char* kind_name(CriticalKind k) {
  switch (k) {
    case CriticalKind::qpt_x: return "qpt_x";
    case CriticalKind::qpt_y: return "qpt_y";
    case CriticalKind::gap_temp: return "gap_temp";
    case CriticalKind::threshold_nn: return "threshold_nn";
    case CriticalKind::threshold_nnn: return "threshold_nnn";
  }
  return "?";
}

namespace {

std::array<double, kDim> energies(const ModelParams& p) {
  std::array<double, kDim> e{};
  for (int k = 0; k < kDim; ++k) e[k] = analytic_energy(k + 1, p);
  return e;
}

// Bit k-1 set when psi_k belongs to the ground level set.
unsigned ground_mask(const ModelParams& p) {
  const auto e = energies(p);
  const double e0 = *std::min_element(e.begin(), e.end());
  unsigned mask = 0;
  for (int k = 0; k < kDim; ++k)
    if (degenerate(e0, e[k])) mask |= 1u << k;
  return mask;
}

int lowest_label(unsigned mask) {
  for (int k = 0; k < kDim; ++k)
    if (mask & (1u << k)) return k + 1;
  return 0;
}

// Bisects E_a - E_b along one coordinate; f(lo) < 0 <= f(hi).
template <typename Param>
CriticalPoint bisect_crossing(CriticalKind kind, double lo, double hi,
                              unsigned before, unsigned after, Param at) {
  const unsigned leaving = before & ~after;
  const unsigned arriving = after & ~before;
  const int a = lowest_label(leaving ? leaving : before);
  const int b = lowest_label(arriving ? arriving : after);
  auto f = [&](double t) {
    const ModelParams p = at(t);
    return analytic_energy(a, p) - analytic_energy(b, p);
  };
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double value = 0.5 * (lo + hi);
  return CriticalPoint{kind, value, lo, hi, std::abs(f(value))};
}

template <typename Param>
std::optional<CriticalPoint> scan_for_crossing(CriticalKind kind, double from,
                                               double to, int intervals,
                                               Param at) {
  double prev_t = from;
  unsigned prev = ground_mask(at(from));
  for (int i = 1; i <= intervals; ++i) {
    const double t = from + ((to - from) * i) / intervals;
    const unsigned cur = ground_mask(at(t));
    if (cur != prev) return bisect_crossing(kind, prev_t, t, prev, cur, at);
    prev = cur;
    prev_t = t;
  }
  return std::nullopt;
}

}  // namespace

std::optional<CriticalPoint> locate_qpt_x(double y) {
  if (!(y >= 0.0)) throw std::invalid_argument("locate_qpt_x: y must be >= 0");
  const int intervals =
      static_cast<int>(std::lround((kQptXMax - kQptXMin) / kQptScanStep));
  return scan_for_crossing(CriticalKind::qpt_x, kQptXMin, kQptXMax, intervals,
                           [y](double x) { return ModelParams{x, y}; });
}

std::optional<CriticalPoint> locate_qpt_y(double x) {
  const int intervals =
      static_cast<int>(std::lround((kQptYMax - kQptScanStep) / kQptScanStep));
  return scan_for_crossing(CriticalKind::qpt_y, kQptScanStep, kQptYMax,
                           intervals,
                           [x](double y) { return ModelParams{x, y}; });
}

double psi5_psi8_crossing_field(double x) {
  return (2.0 * (1.0 + 2.0 * x) + coefficients(x).u_plus) / 4.0;
}

double product_state_energy(const ModelParams& p,
                            const std::array<double, 3>& angles) {
  const double ca = std::cos(angles[0]), sa = std::sin(angles[0]);
  const double cc = std::cos(angles[1]), sc = std::sin(angles[1]);
  const double cb = std::cos(angles[2]), sb = std::sin(angles[2]);
  return 0.25 * ((1.0 + 2.0 * p.x) * (ca + cb) * cc +
                 (1.0 - p.x) * (sa + sb) * sc) +
         0.5 * p.y * (ca + cb + cc);
}

double product_state_energy(const ModelParams& p,
                            const std::array<double, 3>& theta,
                            const std::array<double, 3>& phi) {
  std::array<std::array<double, 3>, 3> s{};
  for (int i = 0; i < 3; ++i) {
    s[i] = {0.5 * std::sin(theta[i]) * std::cos(phi[i]),
            0.5 * std::sin(theta[i]) * std::sin(phi[i]),
            0.5 * std::cos(theta[i])};
  }
  const auto& a = s[0];
  const auto& c = s[1];
  const auto& b = s[2];
  auto bond = [&](const std::array<double, 3>& e) {
    return (1.0 + 2.0 * p.x) * e[2] * c[2] +
           (1.0 - p.x) * (e[0] * c[0] + e[1] * c[1]);
  };
  return bond(a) + bond(b) + p.y * (a[2] + b[2] + c[2]);
}

namespace {

double wrap_angle(double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  t = std::fmod(t, two_pi);
  return t < 0.0 ? t + two_pi : t;
}

// The energy is a cos(t) + b sin(t) + const in each single angle, so every
// coordinate step is solved exactly.
SeparableEnergy coordinate_descent(const ModelParams& p,
                                   std::array<double, 3> t) {
  const double zz = 0.25 * (1.0 + 2.0 * p.x);
  const double xx = 0.25 * (1.0 - p.x);
  const double h = 0.5 * p.y;
  double energy = product_state_energy(p, t);
  for (int round = 0; round < 200000; ++round) {
    // Boundary spins A (slot 0) and B (slot 2).
    for (int slot : {0, 2}) {
      const double alpha = zz * std::cos(t[1]) + h;
      const double beta = xx * std::sin(t[1]);
      if (alpha != 0.0 || beta != 0.0) t[slot] = std::atan2(-beta, -alpha);
    }
    {
      const double alpha = zz * (std::cos(t[0]) + std::cos(t[2])) + h;
      const double beta = xx * (std::sin(t[0]) + std::sin(t[2]));
      if (alpha != 0.0 || beta != 0.0) t[1] = std::atan2(-beta, -alpha);
    }
    const double next = product_state_energy(p, t);
    const bool done = energy - next < 1e-15;
    energy = std::min(energy, next);
    if (done) break;
  }
  for (double& a : t) a = wrap_angle(a);
  return SeparableEnergy{product_state_energy(p, t), t};
}

}  // namespace

SeparableEnergy separable_energy(const ModelParams& p) {
  constexpr int n = 72;
  std::array<double, n> cs{}, sn{};
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    cs[k] = std::cos(t);
    sn[k] = std::sin(t);
  }
  const double zz = 0.25 * (1.0 + 2.0 * p.x);
  const double xx = 0.25 * (1.0 - p.x);
  const double h = 0.5 * p.y;

  struct Candidate {
    double e;
    int a, c, b;
  };
  constexpr std::size_t keep = 16;
  std::vector<Candidate> best;
  best.reserve(keep + 1);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int b = 0; b < n; ++b) {
        const double e = zz * (cs[a] + cs[b]) * cs[c] +
                         xx * (sn[a] + sn[b]) * sn[c] +
                         h * (cs[a] + cs[b] + cs[c]);
        if (best.size() == keep && e >= best.back().e) continue;
        best.push_back({e, a, c, b});
        std::sort(best.begin(), best.end(),
                  [](const Candidate& l, const Candidate& r) { return l.e < r.e; });
        if (best.size() > keep) best.pop_back();
      }

  SeparableEnergy out{std::numeric_limits<double>::infinity(), {}};
  for (const auto& cand : best) {
    const double step = 2.0 * std::numbers::pi / n;
    auto refined = coordinate_descent(
        p, {cand.a * step, cand.c * step, cand.b * step});
    if (refined.value < out.value) out = refined;
  }
  return out;
}

std::optional<CriticalPoint> gap_temperature(const ModelParams& p) {
  const Levels levels = analytic_levels(p);
  double e0 = levels[0].energy;
  for (const auto& l : levels) e0 = std::min(e0, l.energy);
  const double e_sep = separable_energy(p).value;
  if (!(e_sep - e0 > 1e-10 * std::max(1.0, std::abs(e0))))
    return std::nullopt;

  auto g = [&](double T) { return internal_energy(levels, T) - e_sep; };

  double lo = 1e-6;
  while (g(lo) >= 0.0 && lo > 1e-300) lo /= 10.0;
  if (g(lo) >= 0.0) return std::nullopt;
  double hi = 1.0;
  while (g(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e12) return std::nullopt;
  }
  for (int it = 0; it < 400 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double value = 0.5 * (lo + hi);
  return CriticalPoint{CriticalKind::gap_temp, value, lo, hi,
                       std::abs(g(value))};
}

std::optional<CriticalPoint> threshold_temperature(const ModelParams& p,
                                                   Pair pair) {
  const CriticalKind kind = pair == Pair::AB ? CriticalKind::threshold_nnn
                                             : CriticalKind::threshold_nn;
  auto q = [&](double T) {
    return concurrence_margin(closed_form_thermal_elements(p, T, pair));
  };
  auto grid = [](int i) {
    const double frac = static_cast<double>(i) / (kThresholdScanPoints - 1);
    return kThresholdTMin * std::pow(kThresholdTMax / kThresholdTMin, frac);
  };

  int last_positive = -1;
  for (int i = kThresholdScanPoints - 1; i >= 0; --i) {
    if (q(grid(i)) > 0.0) {
      last_positive = i;
      break;
    }
  }
  if (last_positive < 0) return std::nullopt;
  if (last_positive == kThresholdScanPoints - 1)
    return CriticalPoint{kind, kThresholdTMax, kThresholdTMax, kThresholdTMax,
                         0.0};

  double lo = grid(last_positive);
  double hi = grid(last_positive + 1);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (q(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double value = 0.5 * (lo + hi);
  return CriticalPoint{kind, value, lo, hi, 2.0 * std::abs(q(value))};
}

double ground_concurrence(const ModelParams& p, Pair pair) {
  try {
    const auto c = closed_form_ground(p);
    return pair == Pair::AB ? c.c_ab : c.c_ac;
  } catch (const std::domain_error&) {
    const Levels levels = analytic_levels(p);
    const auto g = ground_state(levels);
    return concurrence_wootters(partial_trace(g.rho, pair));
  }
}

double thermal_concurrence(const ModelParams& p, double T, Pair pair) {
  return concurrence_xstate(closed_form_thermal_elements(p, T, pair));
}

}  // namespace spintrio
