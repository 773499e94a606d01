// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "spintrio/critical.hpp"
#include "spintrio/entanglement.hpp"
#include "spintrio/spectrum.hpp"
#include "spintrio/states.hpp"
#include "spintrio/sweep.hpp"

using namespace spintrio;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.ok) ++failures;
  std::printf("[%s] %2d %s: %s\n", o.ok ? "PASS" : "FAIL", n, title,
              o.detail.c_str());
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

DensityMatrix pure_state(std::initializer_list<int> indices) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(kDim);
  for (int i : indices) v(i) = 1.0 / std::sqrt(static_cast<double>(indices.size()));
  return DensityMatrix::pure(v);
}

}  // namespace

int main() {
  criterion(1, "spectrum equivalence on 61x21 grid", [] {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 61; ++i)
      for (int j = 0; j < 21; ++j) {
        const ModelParams p{abscissa(-3, 3, 61, i), abscissa(0, 2, 21, j)};
        worst = std::max(worst, verify_against_numeric(p, 1e-10).max_energy_diff);
      }
    const double secs = seconds_since(t0);
    return Outcome{worst < 1e-10 && secs < 1.0,
                   fmt("max |dE| = %.2e, runtime %.3f s", worst, secs)};
  });

  criterion(2, "zero-field QPT at x = -2", [] {
    const auto cp = locate_qpt_x(0.0);
    const double below = ground_concurrence({-2.001, 0.0}, Pair::AC);
    const double above = ground_concurrence({-1.999, 0.0}, Pair::AC);
    const bool ok = cp && std::abs(cp->value + 2.0) < 1e-8 && below == 0.0 &&
                    above > 0.0;
    return Outcome{ok, fmt("x_c = %.12f, C_AC(-2.001) = %g, C_AC(-1.999) = %g",
                           cp ? cp->value : NAN, below, above)};
  });

  criterion(3, "field QPTs at y = 0.5 and x = 0.5", [] {
    const auto xc = locate_qpt_x(0.5);
    const auto yc = locate_qpt_y(0.5);
    const double xc_ref = (-3.0 - std::sqrt(21.0)) / 6.0;
    const double yc_ref = (6.0 + std::sqrt(6.0)) / 4.0;
    const bool ok = xc && yc && std::abs(xc->value - xc_ref) < 1e-8 &&
                    std::abs(yc->value - yc_ref) < 1e-8;
    return Outcome{ok, fmt("x_c(0.5) = %.12f, y_c(0.5) = %.12f",
                           xc ? xc->value : NAN, yc ? yc->value : NAN)};
  });

  criterion(4, "saturation of C_AC for large x", [] {
    const double c = ground_concurrence({1e4, 0.0}, Pair::AC);
    const double ref = (1.0 + 2.0 * std::sqrt(3.0)) / (6.0 + 2.0 * std::sqrt(3.0));
    return Outcome{std::abs(c - ref) < 1e-3,
                   fmt("C_AC(1e4, 0) = %.6f, limit %.6f", c, ref)};
  });

  criterion(5, "separability at x = 1", [] {
    bool ok = true;
    for (double y : {0.0, 0.5}) {
      const auto levels = analytic_levels({1.0, y});
      const auto g = report(ground_state(levels).rho);
      ok = ok && g.c_ac == 0.0 && g.c_bc == 0.0 && g.c_ab == 0.0;
      for (double T : {0.1, 1.0, 10.0}) {
        const auto t = report(thermal_state(levels, T).rho);
        ok = ok && t.c_ac == 0.0 && t.c_bc == 0.0 && t.c_ab == 0.0;
      }
      ok = ok && !threshold_temperature({1.0, y}, Pair::AC) &&
           !threshold_temperature({1.0, y}, Pair::AB);
    }
    return Outcome{ok, "all concurrences 0, no threshold temperatures"};
  });

  criterion(6, "isotropic point concurrences", [] {
    const auto g = ground_state(analytic_levels({0.0, 0.0}));
    const auto r = report(g.rho);
    const auto cf = closed_form_ground({0.0, 0.0});
    const bool ok = std::abs(r.c_ac - 0.5) < 1e-10 && std::abs(r.c_bc - 0.5) < 1e-10 &&
                    std::abs(r.c_ab) < 1e-10 && std::abs(cf.c_ac - 0.5) < 1e-10 &&
                    std::abs(cf.c_ab) < 1e-10;
    return Outcome{ok, fmt("C_AC = %.15f, C_BC = %.15f, C_AB = %.1e", r.c_ac, r.c_bc,
                           r.c_ab)};
  });

  criterion(7, "GHZ and W fixtures", [] {
    const auto g = report(pure_state({0, 7}));
    const auto w = report(pure_state({1, 2, 4}));
    bool ok = g.c_ac == 0.0 && g.c_bc == 0.0 && g.c_ab == 0.0;
    double worst_ghz = 0.0, worst_wc = 0.0, worst_wr = 0.0;
    for (int s = 0; s < 3; ++s) {
      worst_ghz = std::max(worst_ghz, std::abs(g.residual[s] - 1.0));
      worst_wr = std::max(worst_wr, std::abs(w.residual[s]));
    }
    for (Pair p : {Pair::AC, Pair::BC, Pair::AB})
      worst_wc = std::max(worst_wc, std::abs(w.concurrence(p) - 2.0 / 3.0));
    ok = ok && worst_ghz < 1e-12 && worst_wc < 1e-12 && worst_wr < 1e-10;
    return Outcome{ok, fmt("GHZ |res-1| = %.1e, W |C-2/3| = %.1e, W |res| = %.1e",
                           worst_ghz, worst_wc, worst_wr)};
  });

  criterion(8, "pure ground states have zero residual tangle", [] {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0.01, 3);
    int used = 0;
    double worst = 0.0;
    while (used < 200) {
      const ModelParams p{ux(rng), uy(rng)};
      const auto g = ground_state(analytic_levels(p));
      if (g.degeneracy != 1) continue;
      const auto r = report(g.rho);
      for (double v : r.residual) worst = std::max(worst, std::abs(v));
      ++used;
    }
    return Outcome{worst < 1e-9, fmt("200 draws, max |tau1 - tau2| = %.2e", worst)};
  });

  criterion(9, "closed-form thermal elements and concurrence", [] {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0, 2),
        ut(std::log(0.02), std::log(10.0));
    double worst_el = 0.0, worst_c = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const ModelParams p{ux(rng), uy(rng)};
      const double T = std::exp(ut(rng));
      const auto th = thermal_state(levels_for(p, Backend::numeric), T);
      for (Pair pair : {Pair::AC, Pair::BC, Pair::AB}) {
        const auto rho2 = partial_trace(th.rho, pair);
        const auto n = xstate_elements(rho2);
        const auto e = closed_form_thermal_elements(p, T, pair);
        const auto c = e.normalized();
        worst_el = std::max({worst_el, std::abs(n.u - c.u), std::abs(n.v - c.v),
                             std::abs(n.w1 - c.w1), std::abs(n.w2 - c.w2),
                             std::abs(n.offdiag - c.offdiag)});
        worst_c = std::max(worst_c,
                           std::abs(concurrence_xstate(e) - concurrence_wootters(rho2)));
      }
    }
    return Outcome{worst_el < 1e-10 && worst_c < 1e-10,
                   fmt("1000 draws, max element diff %.2e, max C diff %.2e",
                       worst_el, worst_c)};
  });

  criterion(10, "T_C2 < T_E < T_C1", [] {
    bool ok = true;
    std::ostringstream d;
    for (const ModelParams p :
         {ModelParams{0.5, 0.5}, ModelParams{0.5, 0.1}, ModelParams{1.5, 0.5}}) {
      const auto c1 = threshold_temperature(p, Pair::AC);
      const auto c2 = threshold_temperature(p, Pair::AB);
      const auto te = gap_temperature(p);
      if (!c1 || !c2 || !te) {
        ok = false;
        continue;
      }
      ok = ok && c2->value < te->value && te->value < c1->value &&
           c1->residual < 1e-8 && c2->residual < 1e-8 && te->residual < 1e-8;
      d << "(" << p.x << "," << p.y << "): " << fmt("%.4f < %.4f < %.4f  ",
                                                   c2->value, te->value, c1->value);
    }
    return Outcome{ok, d.str()};
  });

  criterion(11, "separable energy closed form", [] {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      // The closed form holds below the spin-flop field, y <= 0.45 + x here.
      const double x = 3.0 * u(rng);
      const double y = (0.45 + x) * u(rng);
      worst = std::max(worst, std::abs(separable_energy({x, y}).value -
                                       (-1.0 - 2.0 * x - y) / 2.0));
    }
    return Outcome{worst < 1e-6, fmt("100 draws, max deviation %.2e", worst)};
  });

  criterion(12, "reentrant entanglement at (-1.5, 0.5)", [] {
    const ModelParams p{-1.5, 0.5};
    bool ok = true;
    std::ostringstream d;
    for (Pair pair : {Pair::AC, Pair::AB}) {
      const double c0 = thermal_concurrence(p, 1e-3, pair);
      double best = 0.0, at = 0.0;
      for (int i = 1; i <= 400; ++i) {
        const double T = 0.005 * i;
        const double c = thermal_concurrence(p, T, pair);
        if (c > best) {
          best = c;
          at = T;
        }
      }
      ok = ok && best > c0;
      d << pair_name(pair) << fmt(": C(0+) = %.3g, max %.4f at T = %.3f  ", c0, best,
                                  at);
    }
    return Outcome{ok, d.str()};
  });

  criterion(13, "full validate suite under 30 s", [] {
    const auto t0 = Clock::now();
    const auto rep = validate({});
    const double secs = seconds_since(t0);
    std::string failed;
    for (const auto& r : rep.results)
      if (!r.passed) failed += " " + r.name;
    return Outcome{rep.passed() && secs < 30.0,
                   fmt("%.2f s", secs) + (failed.empty() ? "" : ", failed:" + failed)};
  });

  std::printf("%s: %d failure(s)\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
