#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "spintrio/spectrum.hpp"
#include "spintrio/states.hpp"

using namespace spintrio;

namespace {

const Level& by_label(const Levels& levels, int label) {
  for (const auto& l : levels)
    if (l.label == label) return l;
  throw std::logic_error("missing label");
}

DensityMatrix projector(const RealVector8& v) {
  return DensityMatrix::from_real(v * v.transpose());
}

DensityMatrix from_oracle(const oracle::Mat& m) { return DensityMatrix(m); }

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_THROWS(DensityMatrix(Eigen::MatrixXcd::Identity(3, 3) / 3.0));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  m(0, 1) = 0.1;
  CHECK_THROWS(DensityMatrix(m));  // not Hermitian
  CHECK_THROWS(DensityMatrix(Eigen::MatrixXcd::Identity(4, 4) / 2.0));  // trace 2
  Eigen::MatrixXcd neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK_THROWS(DensityMatrix(neg));
  CHECK_NOTHROW(DensityMatrix(Eigen::MatrixXcd::Identity(8, 8) / 8.0));
}

TEST_CASE("ground state members and purity") {
  auto g = ground_state(analytic_levels({0.5, 0.5}));
  CHECK(g.degeneracy == 1);
  CHECK(g.member_labels == std::vector<int>{5});
  CHECK(g.rho.purity() == doctest::Approx(1.0).epsilon(1e-10));

  g = ground_state(analytic_levels({0.0, 0.0}));
  CHECK(g.degeneracy == 2);
  CHECK(g.member_labels == std::vector<int>{3, 5});
  CHECK(g.rho.purity() == doctest::Approx(0.5).epsilon(1e-10));

  g = ground_state(analytic_levels({-3.0, 0.0}));
  CHECK(g.degeneracy == 2);
  CHECK(g.member_labels == std::vector<int>{1, 8});
  // mixture of |000> and |111>
  CHECK(std::abs(g.rho(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(g.rho(7, 7) - 0.5) < 1e-15);
  CHECK(std::abs(g.rho(0, 7)) == 0.0);

  g = ground_state(analytic_levels({-2.0, 0.0}));
  CHECK(g.degeneracy == 4);
  CHECK(g.rho.purity() == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("ground state agrees with oracle on both backends") {
  for (double x : {-3.0, -2.0, -1.0, 0.0, 0.5, 1.0, 2.5})
    for (double y : {0.0, 0.5, 1.5}) {
      const auto ref = from_oracle(oracle::ground_rho(x, y));
      for (Backend b : {Backend::analytic, Backend::numeric}) {
        const auto g = ground_state(levels_for({x, y}, b));
        CHECK(trace_distance(g.rho, ref) < 1e-10);
        CHECK(g.rho.purity() ==
              doctest::Approx(1.0 / g.degeneracy).epsilon(1e-10));
      }
    }
}

TEST_CASE("thermal state limits") {
  auto levels = analytic_levels({0.5, 0.5});
  auto hot = thermal_state(levels, 1e9);
  CHECK((hot.rho.matrix() - Eigen::MatrixXcd::Identity(8, 8) / 8.0)
            .cwiseAbs()
            .maxCoeff() < 1e-9);
  CHECK(partition_function(levels, 1e9) == doctest::Approx(8.0).epsilon(1e-8));

  auto cold = thermal_state(levels, 1e-3);
  CHECK(trace_distance(cold.rho, projector(by_label(levels, 5).vector)) < 1e-6);

  levels = analytic_levels({0.0, 0.0});
  cold = thermal_state(levels, 1e-3);
  CHECK(trace_distance(cold.rho, ground_state(levels).rho) < 1e-6);

  CHECK_THROWS_AS(thermal_state(levels, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(thermal_state(levels, -1.0), std::invalid_argument);
}

TEST_CASE("thermal state approaches the ground state as T -> 0+") {
  for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0})
    for (double y : {0.0, 0.5}) {
      const auto levels = analytic_levels({x, y});
      CHECK(trace_distance(thermal_state(levels, 1e-4).rho,
                           ground_state(levels).rho) < 1e-4);
    }
}

TEST_CASE("partition function and internal energy") {
  const auto levels = analytic_levels({0.5, 0.5});
  CHECK(std::abs(internal_energy(levels, 1e9)) < 1e-8);
  CHECK(internal_energy(levels, 1e-4) ==
        doctest::Approx((-1.0 - (2.0 + std::sqrt(6.0))) / 4.0).epsilon(1e-6));

  double prev = internal_energy(levels, 1e-3);
  for (int i = 1; i <= 200; ++i) {
    const double T = 1e-3 * std::pow(1e5, i / 200.0);
    const double u = internal_energy(levels, T);
    CHECK(u >= prev - 1e-14);
    prev = u;
  }

  for (double T : {0.05, 0.7, 3.0}) {
    double z = 0.0;
    for (const auto& l : levels) z += std::exp(-l.energy / T);
    CHECK(partition_function(levels, T) == doctest::Approx(z).epsilon(1e-13));
    CHECK(log_partition_function(levels, T) ==
          doctest::Approx(std::log(z)).epsilon(1e-13));
  }

  // exp(-E/T) alone would overflow here
  const double lz = log_partition_function(levels, 1e-4);
  CHECK(std::isfinite(lz));
  CHECK(lz == doctest::Approx(-levels[4].energy / 1e-4).epsilon(1e-12));
  const auto w = boltzmann_weights(levels, 1e-4);
  double sum = 0.0;
  for (double v : w) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("thermal state matches the oracle and commutes with H") {
  for (double x : {-2.0, -0.5, 0.5, 1.0, 3.0})
    for (double y : {0.0, 0.3, 2.0})
      for (double T : {0.01, 0.3, 5.0}) {
        const auto th = thermal_state(analytic_levels({x, y}), T);
        const oracle::Mat ref = oracle::thermal_rho(x, y, T);
        CHECK((th.rho.matrix() - ref).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::MatrixXd r = th.rho.matrix().real();
        const RealMatrix8 h = build_hamiltonian({x, y});
        CHECK((r * h - h * r).cwiseAbs().maxCoeff() < 1e-11);
        CHECK((r - r.transpose()).cwiseAbs().maxCoeff() == 0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        CHECK(es.eigenvalues().maxCoeff() <= 1.0);
      }
}
