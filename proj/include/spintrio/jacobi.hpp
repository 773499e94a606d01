#pragma once

// Cyclic Jacobi eigensolver for small dense real-symmetric matrices.
//
// Templated on the scalar so the same routine serves as the double-precision
// spectrum oracle and as the extended-precision kernel behind the Wootters
// concurrence. Rotations are skipped when the pivot element is exactly zero,
// so block-diagonal inputs (e.g. Hamiltonians that conserve total Sz) keep
// their exact zero pattern in both the rotated matrix and the eigenvectors.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace spintrio {

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

template <typename Scalar>
struct SymmetricEigen {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vector values;   // unsorted, matching columns of `vectors`
  Matrix vectors;  // orthonormal columns
  int sweeps = 0;
  Scalar residual{0};  // Frobenius norm of the final off-diagonal part
};

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  Scalar sum{0};
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = 0; q < a.cols(); ++q)
      if (p != q) sum += a(p, q) * a(p, q);
  using std::sqrt;
  return sqrt(sum);
}

}  // namespace detail

/// Full eigendecomposition of the symmetric matrix `m`.
///
/// Iterates cyclic sweeps over all (p, q) pivots until the off-diagonal
/// Frobenius norm drops below `rel_tol * ||m||_F`. Throws ConvergenceError
/// carrying the residual when `max_sweeps` is exhausted.
template <typename Scalar>
SymmetricEigen<Scalar> jacobi_eigen(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
    int max_sweeps, Scalar rel_tol) {
  using std::abs;
  using std::sqrt;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (a.rows() != a.cols())
    throw std::invalid_argument("jacobi_eigen: matrix is not square");
  const Eigen::Index n = a.rows();

  Scalar norm{0};
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) norm += a(p, q) * a(p, q);
  norm = sqrt(norm);
  const Scalar target = rel_tol * norm;

  Matrix v = Matrix::Identity(n, n);
  SymmetricEigen<Scalar> out;

  int sweep = 0;
  Scalar off = detail::off_diagonal_norm(a);
  while (off > target) {
    if (sweep == max_sweeps) {
      throw ConvergenceError(
          "jacobi_eigen: no convergence after " + std::to_string(max_sweeps) +
              " sweeps",
          static_cast<double>(off));
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar{0}) continue;
        // Rutishauser's stable rotation: t = tan(phi) with |phi| <= pi/4.
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar{2} * apq);
        Scalar t = Scalar{1} / (abs(theta) + sqrt(theta * theta + Scalar{1}));
        if (theta < Scalar{0}) t = -t;
        const Scalar c = Scalar{1} / sqrt(t * t + Scalar{1});
        const Scalar s = t * c;
        const Scalar tau = s / (Scalar{1} + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = Scalar{0};
        a(q, p) = Scalar{0};
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Scalar arp = a(r, p);
          const Scalar arq = a(r, q);
          if (arp == Scalar{0} && arq == Scalar{0}) continue;
          a(r, p) = arp - s * (arq + tau * arp);
          a(r, q) = arq + s * (arp - tau * arq);
          a(p, r) = a(r, p);
          a(q, r) = a(r, q);
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar vrp = v(r, p);
          const Scalar vrq = v(r, q);
          if (vrp == Scalar{0} && vrq == Scalar{0}) continue;
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
    ++sweep;
    off = detail::off_diagonal_norm(a);
  }

  out.values = a.diagonal();
  out.vectors = std::move(v);
  out.sweeps = sweep;
  out.residual = off;
  return out;
}

}  // namespace spintrio
