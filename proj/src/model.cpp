#include "spintrio/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spintrio/jacobi.hpp"

namespace spintrio {

const char* site_name(Site s) {
  switch (s) {
    case Site::A: return "A";
    case Site::C: return "C";
    case Site::B: return "B";
  }
  return "?";
}

double total_sz(BasisIndex b) {
  double sz = 0.0;
  for (Site s : {Site::A, Site::C, Site::B}) sz += b.up(s) ? 0.5 : -0.5;
  return sz;
}

RealMatrix8 spin_z(Site s) {
  RealMatrix8 m = RealMatrix8::Zero();
  for (int i = 0; i < kDim; ++i) m(i, i) = BasisIndex(i).up(s) ? 0.5 : -0.5;
  return m;
}

RealMatrix8 spin_plus(Site s) {
  RealMatrix8 m = RealMatrix8::Zero();
  const int bit = 1 << site_bit(s);
  for (int i = 0; i < kDim; ++i)
    if (!(i & bit)) m(i | bit, i) = 1.0;
  return m;
}

RealMatrix8 spin_minus(Site s) { return spin_plus(s).transpose(); }

RealMatrix8 total_spin_z() {
  return spin_z(Site::A) + spin_z(Site::C) + spin_z(Site::B);
}

RealMatrix8 build_hamiltonian(const ModelParams& p) {
  const RealMatrix8 zz = spin_z(Site::A) * spin_z(Site::C) +
                         spin_z(Site::B) * spin_z(Site::C);
  const RealMatrix8 flip = spin_plus(Site::A) * spin_minus(Site::C) +
                           spin_minus(Site::A) * spin_plus(Site::C) +
                           spin_plus(Site::B) * spin_minus(Site::C) +
                           spin_minus(Site::B) * spin_plus(Site::C);
  return (1.0 + 2.0 * p.x) * zz + 0.5 * (1.0 - p.x) * flip +
         p.y * total_spin_z();
}

bool degenerate(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

void canonicalize_sign(RealVector8& v) {
  for (int i = 0; i < kDim; ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

EigenSystem diagonalize(const RealMatrix8& m) {
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 0.0)
    throw std::invalid_argument("diagonalize: matrix is not symmetric");

  const auto eig = jacobi_eigen<double>(m, kJacobiSweepBudget, kJacobiRelTol);

  std::array<int, kDim> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return eig.values(a) < eig.values(b);
  });

  EigenSystem out;
  out.sweeps = eig.sweeps;
  out.residual = eig.residual;
  for (int k = 0; k < kDim; ++k) {
    Level& lvl = out.levels[k];
    lvl.energy = eig.values(order[k]);
    lvl.vector = eig.vectors.col(order[k]);
    canonicalize_sign(lvl.vector);

    // Sector weights indexed by 2*Sz + 3 in {0, 1, 2, 3}.
    std::array<double, 4> weight{};
    for (int i = 0; i < kDim; ++i) {
      const int sector = static_cast<int>(2.0 * total_sz(BasisIndex(i))) + 3;
      weight[sector / 2] += lvl.vector(i) * lvl.vector(i);
    }
    const auto best = std::max_element(weight.begin(), weight.end());
    const double leak =
        std::accumulate(weight.begin(), weight.end(), 0.0) - *best;
    if (leak > kSectorLeakTol) {
      std::ostringstream msg;
      msg << "diagonalize: eigenvector " << k << " leaks " << leak
          << " of its weight outside a single Sz sector";
      throw SectorLeakError(msg.str());
    }
    lvl.sz_total = static_cast<double>(best - weight.begin()) - 1.5;
  }
  return out;
}

}  // namespace spintrio
