#include "spintrio/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include "spintrio/jacobi.hpp"
#include "spintrio/spectrum.hpp"

namespace spintrio {

const char* pair_name(Pair p) {
  switch (p) {
    case Pair::AC: return "AC";
    case Pair::BC: return "BC";
    case Pair::AB: return "AB";
  }
  return "?";
}

Site first_site(Pair p) {
  switch (p) {
    case Pair::AC: return Site::A;
    case Pair::BC: return Site::B;
    case Pair::AB: return Site::A;
  }
  return Site::A;
}

Site second_site(Pair p) {
  switch (p) {
    case Pair::AC: return Site::C;
    case Pair::BC: return Site::C;
    case Pair::AB: return Site::B;
  }
  return Site::C;
}

namespace {

// Reduced state over the kept sites, most significant first.
Eigen::MatrixXcd reduce(const DensityMatrix& rho8,
                        const std::vector<Site>& keep) {
  if (rho8.dim() != kDim)
    throw std::invalid_argument("partial_trace expects an 8x8 density matrix");
  const int nk = static_cast<int>(keep.size());
  const int dk = 1 << nk;

  int kept_mask = 0;
  for (Site s : keep) kept_mask |= 1 << site_bit(s);

  // Map full index -> reduced index.
  auto reduced_index = [&](int i) {
    int r = 0;
    for (Site s : keep) r = (r << 1) | ((i >> site_bit(s)) & 1);
    return r;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      if ((i & ~kept_mask) != (j & ~kept_mask)) continue;
      out(reduced_index(i), reduced_index(j)) += rho8(i, j);
    }
  }
  return out;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho8, Pair keep) {
  return DensityMatrix(reduce(rho8, {first_site(keep), second_site(keep)}));
}

DensityMatrix partial_trace(const DensityMatrix& rho8, Site keep) {
  return DensityMatrix(reduce(rho8, {keep}));
}

XStateElements XStateElements::normalized() const {
  return XStateElements{u / scale, v / scale, w1 / scale,
                        w2 / scale, offdiag / scale, 1.0};
}

XStateElements xstate_elements(const DensityMatrix& rho4) {
  if (rho4.dim() != 4)
    throw std::invalid_argument("xstate_elements expects a 4x4 matrix");
  const auto& m = rho4.matrix();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const bool in_pattern = r == c || (r == 1 && c == 2) || (r == 2 && c == 1);
      if (!in_pattern && std::abs(m(r, c)) > kXPatternTol) {
        std::ostringstream msg;
        msg << "reduced matrix entry (" << r << "," << c << ") = "
            << std::abs(m(r, c)) << " breaks the X pattern";
        throw StructureError(msg.str());
      }
    }
  }
  if (std::abs(m(2, 1).imag()) > kXPatternTol)
    throw StructureError("X-state coherence has an imaginary part");
  return XStateElements{m(3, 3).real(), m(0, 0).real(), m(2, 2).real(),
                        m(1, 1).real(), m(2, 1).real(), 1.0};
}

double concurrence_margin(const XStateElements& e) {
  return (std::abs(e.offdiag) - std::sqrt(e.u * e.v)) / e.scale;
}

double concurrence_xstate(const XStateElements& e) {
  return 2.0 * std::max(0.0, concurrence_margin(e));
}

namespace {

using Quad = boost::multiprecision::float128;
using QuadMatrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;

// Real symmetric representation of a Hermitian matrix: [[Re, -Im], [Im, Re]].
// Products and square roots commute with the embedding; every eigenvalue
// appears twice.
QuadMatrix embed(const Eigen::MatrixXcd& h, bool complex_entries) {
  const Eigen::Index n = h.rows();
  if (!complex_entries) {
    QuadMatrix out(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) out(r, c) = Quad(h(r, c).real());
    return out;
  }
  QuadMatrix out(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Quad re(h(r, c).real());
      const Quad im(h(r, c).imag());
      out(r, c) = re;
      out(r + n, c + n) = re;
      out(r, c + n) = -im;
      out(r + n, c) = im;
    }
  }
  return out;
}

QuadMatrix psd_sqrt(const QuadMatrix& m) {
  const auto eig = jacobi_eigen<Quad>(m, 100, Quad(1e-32));
  QuadMatrix out = QuadMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const Quad lam = eig.values(k);
    if (lam <= 0) continue;
    const Quad root = boost::multiprecision::sqrt(lam);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (eig.vectors(r, k) == 0) continue;
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        out(r, c) += root * eig.vectors(r, k) * eig.vectors(c, k);
    }
  }
  return out;
}

QuadMatrix multiply(const QuadMatrix& a, const QuadMatrix& b) {
  QuadMatrix out = QuadMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(r, k) == 0) continue;
      for (Eigen::Index c = 0; c < b.cols(); ++c) out(r, c) += a(r, k) * b(k, c);
    }
  return out;
}

}  // namespace

double concurrence_wootters(const DensityMatrix& rho4) {
  if (rho4.dim() != 4)
    throw std::invalid_argument("concurrence_wootters expects a 4x4 matrix");
  const Eigen::MatrixXcd& rho = rho4.matrix();

  // sigma_y (x) sigma_y is real and identical in any product-basis ordering.
  Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::MatrixXcd flipped =
      flip.cast<std::complex<double>>() * rho.conjugate() *
      flip.cast<std::complex<double>>();

  const bool complex_entries = rho.imag().cwiseAbs().maxCoeff() > 0.0;
  const QuadMatrix r = embed(rho, complex_entries);
  const QuadMatrix rt = embed(flipped, complex_entries);
  const QuadMatrix root = psd_sqrt(r);
  QuadMatrix m = multiply(multiply(root, rt), root);
  // Exact symmetry for the solver.
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      const Quad avg = (m(i, j) + m(j, i)) / 2;
      m(i, j) = avg;
      m(j, i) = avg;
    }

  const auto eig = jacobi_eigen<Quad>(m, 100, Quad(1e-32));
  std::vector<Quad> mu(eig.values.data(), eig.values.data() + eig.values.size());
  std::sort(mu.begin(), mu.end(), [](const Quad& a, const Quad& b) { return a > b; });

  const std::size_t stride = complex_entries ? 2 : 1;
  std::array<Quad, 4> lambda{};
  for (std::size_t k = 0; k < 4; ++k) {
    const Quad v = mu[k * stride];
    lambda[k] = v > 0 ? boost::multiprecision::sqrt(v) : Quad(0);
  }
  const Quad c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return c > 0 ? static_cast<double>(c) : 0.0;
}

double one_tangle(const DensityMatrix& rho2) {
  if (rho2.dim() != 2)
    throw std::invalid_argument("one_tangle expects a 2x2 matrix");
  const auto& m = rho2.matrix();
  return 4.0 * (m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1)));
}

double EntanglementReport::concurrence(Pair p) const {
  switch (p) {
    case Pair::AC: return c_ac;
    case Pair::BC: return c_bc;
    case Pair::AB: return c_ab;
  }
  return 0.0;
}

EntanglementReport report(const DensityMatrix& rho8) {
  EntanglementReport rep;
  for (Pair pair : {Pair::AC, Pair::BC, Pair::AB}) {
    const DensityMatrix reduced = partial_trace(rho8, pair);
    const double c = concurrence_wootters(reduced);
    try {
      const double fast = concurrence_xstate(xstate_elements(reduced));
      if (std::abs(fast - c) > kConcurrenceCrossCheckTol) {
        std::ostringstream msg;
        msg << "concurrence of pair " << pair_name(pair)
            << " disagrees: Wootters " << c << " vs X-state " << fast;
        throw std::logic_error(msg.str());
      }
    } catch (const StructureError&) {
      // Not an X-state; the Wootters value stands alone.
    }
    switch (pair) {
      case Pair::AC: rep.c_ac = c; break;
      case Pair::BC: rep.c_bc = c; break;
      case Pair::AB: rep.c_ab = c; break;
    }
  }

  const double cac2 = rep.c_ac * rep.c_ac;
  const double cbc2 = rep.c_bc * rep.c_bc;
  const double cab2 = rep.c_ab * rep.c_ab;
  for (Site s : {Site::A, Site::C, Site::B}) {
    const auto k = EntanglementReport::slot(s);
    rep.tau1[k] = one_tangle(partial_trace(rho8, s));
    switch (s) {
      case Site::A: rep.tau2[k] = cac2 + cab2; break;
      case Site::C: rep.tau2[k] = cac2 + cbc2; break;
      case Site::B: rep.tau2[k] = cbc2 + cab2; break;
    }
    rep.residual[k] = rep.tau1[k] - rep.tau2[k];
  }
  rep.pure = rho8.purity() > 1.0 - kPurityGuard;
  rep.residual_is_monotone = rep.pure;
  return rep;
}

namespace {

// Normalization-weighted amplitude factors; the R = infinity limit collapses
// psi_3 and psi_5 onto the middle basis state.
struct AmplitudeFactors {
  double inv_a2;  // 1 / A^2
  double r_a2;    // R / A^2
  double r2_a2;   // R^2 / A^2
  double inv_b2;
  double s_b2;
  double s2_b2;
};

AmplitudeFactors amplitude_factors(const AnalyticCoefficients& c) {
  AmplitudeFactors f{};
  if (std::isinf(c.r)) {
    f.inv_a2 = 0.0;
    f.r_a2 = 0.0;
    f.r2_a2 = 1.0;
  } else {
    const double a2 = 2.0 + c.r * c.r;
    f.inv_a2 = 1.0 / a2;
    f.r_a2 = c.r / a2;
    f.r2_a2 = c.r * c.r / a2;
  }
  const double b2 = 2.0 + c.s * c.s;
  f.inv_b2 = 1.0 / b2;
  f.s_b2 = c.s / b2;
  f.s2_b2 = c.s * c.s / b2;
  return f;
}

std::vector<int> ground_labels(const ModelParams& p) {
  std::array<double, kDim> e{};
  for (int k = 0; k < kDim; ++k) e[k] = analytic_energy(k + 1, p);
  const double e0 = *std::min_element(e.begin(), e.end());
  std::vector<int> labels;
  for (int k = 0; k < kDim; ++k)
    if (degenerate(e0, e[k])) labels.push_back(k + 1);
  return labels;
}

}  // namespace

GroundConcurrences closed_form_ground(const ModelParams& p) {
  const auto labels = ground_labels(p);
  const auto f = amplitude_factors(coefficients(p.x));

  if (p.y == 0.0) {
    if (labels == std::vector<int>{3, 5}) {
      return {2.0 * std::max(0.0, std::abs(f.r_a2) - 0.5 * f.inv_a2),
              2.0 * std::max(0.0, f.inv_a2 - 0.5 * f.r2_a2)};
    }
    if (labels == std::vector<int>{1, 8}) return {0.0, 0.0};
  } else if (p.y > 0.0) {
    if (labels == std::vector<int>{5})
      return {2.0 * std::abs(f.r_a2), 2.0 * f.inv_a2};
    if (labels == std::vector<int>{8}) return {0.0, 0.0};
  }

  std::ostringstream msg;
  msg << "closed_form_ground: no closed form for (x=" << p.x << ", y=" << p.y
      << ") with ground levels {";
  for (std::size_t i = 0; i < labels.size(); ++i)
    msg << (i ? ", " : "") << "psi_" << labels[i];
  msg << "}";
  throw std::domain_error(msg.str());
}

XStateElements closed_form_thermal_elements(const ModelParams& p, double T,
                                            Pair pair) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw std::invalid_argument("closed_form_thermal_elements: T must be > 0");

  const auto c = coefficients(p.x);
  const auto f = amplitude_factors(c);

  std::array<double, kDim + 1> energy{};  // 1-based
  for (int k = 1; k <= kDim; ++k) energy[k] = analytic_energy(k, p);
  const double e_min = *std::min_element(energy.begin() + 1, energy.end());
  std::array<double, kDim + 1> w{};
  for (int k = 1; k <= kDim; ++k) w[k] = std::exp(-(energy[k] - e_min) / T);

  XStateElements e;
  e.scale = 0.0;
  for (int k = 1; k <= kDim; ++k) e.scale += w[k];

  const bool nearest = pair != Pair::AB;
  if (p.y == 0.0) {
    // Zero field: E1 = E8, E2 = E7 = 0, E3 = E5, E4 = E6.
    const double w0 = w[2];
    if (nearest) {
      e.u = w[1] + f.inv_a2 * w[3] + f.inv_b2 * w[4] + 0.5 * w0;
      e.v = e.u;
      e.offdiag = -2.0 * f.r_a2 * w[3] - 2.0 * f.s_b2 * w[4];
    } else {
      e.u = w[1] + f.r2_a2 * w[3] + f.s2_b2 * w[4];
      e.v = e.u;
      e.offdiag = 2.0 * f.inv_a2 * w[3] + 2.0 * f.inv_b2 * w[4] - w0;
    }
  } else if (nearest) {
    e.u = w[1] + 0.5 * w[2] + f.inv_a2 * w[3] + f.inv_b2 * w[4];
    e.v = w[8] + 0.5 * w[7] + f.inv_a2 * w[5] + f.inv_b2 * w[6];
    e.offdiag = -f.r_a2 * w[3] - f.s_b2 * w[4] - f.r_a2 * w[5] - f.s_b2 * w[6];
  } else {
    e.u = w[1] + f.r2_a2 * w[3] + f.s2_b2 * w[4];
    e.v = w[8] + f.r2_a2 * w[5] + f.s2_b2 * w[6];
    e.offdiag = -0.5 * (w[2] + w[7]) + f.inv_a2 * (w[3] + w[5]) +
                f.inv_b2 * (w[4] + w[6]);
  }

  // Populations of the two singly-flipped pair states.
  if (nearest) {
    e.w1 = f.r2_a2 * w[3] + f.s2_b2 * w[4] + f.inv_a2 * w[5] +
           f.inv_b2 * w[6] + 0.5 * w[7];
    e.w2 = 0.5 * w[2] + f.inv_a2 * w[3] + f.inv_b2 * w[4] + f.r2_a2 * w[5] +
           f.s2_b2 * w[6];
  } else {
    e.w1 = 0.5 * (w[2] + w[7]) + f.inv_a2 * (w[3] + w[5]) +
           f.inv_b2 * (w[4] + w[6]);
    e.w2 = e.w1;
  }
  return e;
}

}  // namespace spintrio
