#pragma once

// Independent reference implementations for the unit tests. Everything here
// is built from Pauli matrices, Kronecker products and Eigen's own solvers,
// and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat sx() { Mat m(2, 2); m << 0, 0.5, 0.5, 0; return m; }
inline Mat sy() { Mat m(2, 2); m << 0, cd(0, -0.5), cd(0, 0.5), 0; return m; }
inline Mat sz() { Mat m(2, 2); m << 0.5, 0, 0, -0.5; return m; }
inline Mat id2() { return Mat::Identity(2, 2); }

// Site order A (most significant), C, B; |1> = up.
inline Mat up_first(const Mat& m) {
  // Pauli convention above has index 0 = up; flip so index 1 = up.
  Mat p(2, 2);
  p << 0, 1, 1, 0;
  return p * m * p;
}

inline Mat on_site(int site, const Mat& op) {
  // site: 0 = A, 1 = C, 2 = B
  const Mat o = up_first(op);
  Mat a = site == 0 ? o : id2();
  Mat c = site == 1 ? o : id2();
  Mat b = site == 2 ? o : id2();
  Mat ac = Eigen::kroneckerProduct(a, c).eval();
  return Eigen::kroneckerProduct(ac, b).eval();
}

inline Mat hamiltonian(double x, double y) {
  auto dot_xy = [](int i, int j) {
    return (on_site(i, sx()) * on_site(j, sx()) +
            on_site(i, sy()) * on_site(j, sy()))
        .eval();
  };
  auto zz = [](int i, int j) { return (on_site(i, sz()) * on_site(j, sz())).eval(); };
  // S+S- + S-S+ = 2(SxSx + SySy)
  Mat h = (1.0 + 2.0 * x) * (zz(0, 1) + zz(2, 1)) +
          (1.0 - x) * (dot_xy(0, 1) + dot_xy(2, 1));
  for (int s = 0; s < 3; ++s) h += y * on_site(s, sz());
  return h;
}

inline Eigen::VectorXd spectrum(double x, double y) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian(x, y));
  return es.eigenvalues();
}

inline Mat ground_rho(double x, double y, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian(x, y));
  const double e0 = es.eigenvalues()(0);
  Mat rho = Mat::Zero(8, 8);
  int n = 0;
  for (int k = 0; k < 8; ++k) {
    if (es.eigenvalues()(k) - e0 <= tol * std::max(1.0, std::abs(e0))) {
      rho += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      ++n;
    }
  }
  return rho / n;
}

inline Mat thermal_rho(double x, double y, double T) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian(x, y));
  const Eigen::VectorXd e = es.eigenvalues();
  Eigen::VectorXd w = (-(e.array() - e(0)) / T).exp();
  w /= w.sum();
  return es.eigenvectors() * w.cast<cd>().asDiagonal() *
         es.eigenvectors().adjoint();
}

// Partial trace keeping `keep` (site indices 0=A,1=C,2=B) in the given order.
inline Mat ptrace(const Mat& rho, const std::vector<int>& keep) {
  auto bit = [](int idx, int site) { return (idx >> (2 - site)) & 1; };
  const int nk = static_cast<int>(keep.size());
  const int dk = 1 << nk;
  Mat out = Mat::Zero(dk, dk);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      bool same_env = true;
      for (int s = 0; s < 3; ++s)
        if (std::find(keep.begin(), keep.end(), s) == keep.end() &&
            bit(i, s) != bit(j, s))
          same_env = false;
      if (!same_env) continue;
      int r = 0, c = 0;
      for (int k = 0; k < nk; ++k) {
        r = (r << 1) | bit(i, keep[k]);
        c = (c << 1) | bit(j, keep[k]);
      }
      out(r, c) += rho(i, j);
    }
  }
  return out;
}

// Hill-Wootters: square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy),
// evaluated in long double.
inline double wootters(const Mat& rho) {
  using ld = long double;
  using cl = std::complex<ld>;
  using MatL = Eigen::Matrix<cl, Eigen::Dynamic, Eigen::Dynamic>;
  MatL r = rho.cast<cl>();
  MatL yy = MatL::Zero(4, 4);
  yy(0, 3) = -1; yy(1, 2) = 1; yy(2, 1) = 1; yy(3, 0) = -1;
  MatL m = r * yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<MatL> es(m);
  std::vector<ld> lam;
  for (int k = 0; k < 4; ++k)
    lam.push_back(std::sqrt(std::max<ld>(0, es.eigenvalues()(k).real())));
  std::sort(lam.rbegin(), lam.rend());
  return static_cast<double>(std::max<ld>(0, lam[0] - lam[1] - lam[2] - lam[3]));
}

inline double one_tangle(const Mat& rho2) {
  return 4.0 * (rho2(0, 0) * rho2(1, 1) - rho2(0, 1) * rho2(1, 0)).real();
}

inline Mat random_density(std::mt19937_64& rng, int dim, int rank) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = cd(n(rng), n(rng));
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// <H> in the product state with Bloch angles (theta, phi) per site A, C, B.
inline double product_energy(double x, double y, const double theta[3],
                             const double phi[3]) {
  Vec psi = Vec::Ones(1);
  for (int s = 0; s < 3; ++s) {
    Vec spinor(2);  // index 0 = down, 1 = up
    spinor << std::sin(theta[s] / 2) * std::exp(cd(0, phi[s])),
        std::cos(theta[s] / 2);
    psi = Eigen::kroneckerProduct(psi, spinor).eval();
  }
  return (psi.adjoint() * hamiltonian(x, y) * psi)(0, 0).real();
}

}  // namespace oracle
