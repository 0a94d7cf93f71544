#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "windfarm/constraints.hpp"
#include "windfarm/grid.hpp"
#include "windfarm/turbine.hpp"

using namespace wf;

namespace {

CandidateGrid two_sites(double distance) {
  CandidateGrid grid;
  grid.x.resize(2);
  grid.y.resize(2);
  grid.x << 0.0, distance;
  grid.y << 0.0, 0.0;
  grid.boundary_radius = distance;
  return grid;
}

}  // namespace

TEST_CASE("sites within two rotor diameters are spacing neighbors") {
  const TurbineSpec turbine;  // D = 130, so the cutoff is 260 m

  const auto close = build_spacing(two_sites(200.0), turbine);
  CHECK(close.spacing_rows() == 2);  // both orderings of one pair
  CHECK(close.neighbors[0] == std::vector<Eigen::Index>{1});
  CHECK(close.neighbors[1] == std::vector<Eigen::Index>{0});

  const auto far = build_spacing(two_sites(400.0), turbine);
  CHECK(far.spacing_rows() == 0);
  CHECK(far.neighbors[0].empty());

  // A tie at exactly factor * D counts as a neighbor.
  const auto tie = build_spacing(two_sites(260.0), turbine);
  CHECK(tie.spacing_rows() == 2);
}

TEST_CASE("neighbor sets on the 124-site grid are the 4-connected lattice") {
  const auto grid = generate_circular_grid(1300.0, 200.0, GridMode::offset);
  const TurbineSpec turbine;
  const auto system = build_spacing(grid, turbine);

  // Oracle: direct distance scan. On a 200 m lattice with a 260 m cutoff the
  // axis-aligned neighbors (200 m) qualify and the diagonals (283 m) do not.
  std::size_t pairs = 0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    std::vector<Eigen::Index> expected;
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      if (i == j) continue;
      const double d = std::hypot(grid.x(i) - grid.x(j), grid.y(i) - grid.y(j));
      if (d <= 260.0) {
        expected.push_back(j);
        CHECK(d == doctest::Approx(200.0));  // only axis-aligned distances survive
      }
    }
    CHECK(system.neighbors[static_cast<std::size_t>(i)] == expected);
    pairs += expected.size();
  }
  // H holds one row per ordered pair: twice the number of unordered pairs.
  CHECK(static_cast<std::size_t>(system.spacing_rows()) == pairs);
  CHECK(pairs % 2 == 0);
}

TEST_CASE("neighbor relation is symmetric") {
  const auto grid = generate_circular_grid(900.0, 200.0, GridMode::centered);
  const auto system = build_spacing(grid, TurbineSpec{});
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    for (Eigen::Index j : system.neighbors[static_cast<std::size_t>(i)]) {
      const auto& back = system.neighbors[static_cast<std::size_t>(j)];
      CHECK(std::find(back.begin(), back.end(), i) != back.end());
    }
}

TEST_CASE("each spacing row has exactly two unit entries") {
  const auto grid = generate_circular_grid(900.0, 200.0, GridMode::offset);
  const auto system = build_spacing(grid, TurbineSpec{});
  for (Eigen::Index r = 0; r < system.spacing_rows(); ++r) {
    int entries = 0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(system.spacing_matrix, r);
         it; ++it) {
      CHECK(it.value() == 1.0);
      ++entries;
    }
    CHECK(entries == 2);
  }
}

TEST_CASE("volume constraint values and gradients") {
  const Eigen::Index n = 124;

  const auto full = volume_constraints(Eigen::VectorXd::Ones(n), 16, 64);
  CHECK(full.g_min == doctest::Approx(-1.0 + 16.0 / 124.0).epsilon(1e-15));
  CHECK(full.g_min == doctest::Approx(-0.87097).epsilon(1e-4));
  CHECK(full.g_max == doctest::Approx(1.0 - 64.0 / 124.0).epsilon(1e-15));

  const auto empty = volume_constraints(Eigen::VectorXd::Zero(n), 16, 64);
  CHECK(empty.g_min == doctest::Approx(16.0 / 124.0).epsilon(1e-15));
  CHECK(empty.g_min > 0.0);  // infeasible: not enough turbines

  // Active upper bound when the density sum hits N_max exactly.
  Eigen::VectorXd at_max = Eigen::VectorXd::Zero(n);
  at_max.head(64).setOnes();
  CHECK(volume_constraints(at_max, 16, 64).g_max == doctest::Approx(0.0).epsilon(1e-15));

  CHECK(full.grad_min.isApproxToConstant(-1.0 / 124.0));
  CHECK(full.grad_max.isApproxToConstant(1.0 / 124.0));

  CHECK_THROWS_AS(volume_constraints(Eigen::VectorXd::Ones(n), 64, 16), std::invalid_argument);
}

TEST_CASE("spacing constraint values") {
  const auto system = build_spacing(two_sites(200.0), TurbineSpec{});

  Eigen::VectorXd both(2), one(2), half(2);
  both << 1.0, 1.0;
  one << 1.0, 0.0;
  half << 0.5, 0.5;

  CHECK(spacing_values(both, system).maxCoeff() == doctest::Approx(1.0));   // violated
  CHECK(spacing_values(one, system).maxCoeff() == doctest::Approx(0.0));    // active
  CHECK(spacing_values(half, system).maxCoeff() == doctest::Approx(0.0));   // fractional crowding

  CHECK_THROWS(spacing_values(Eigen::VectorXd::Ones(3), system));
}

TEST_CASE("all constraints are affine") {
  const auto grid = generate_circular_grid(700.0, 200.0, GridMode::offset);
  const auto system = build_spacing(grid, TurbineSpec{});
  const Eigen::Index n = grid.size();

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd a(n), b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i) = unit(rng);
    b(i) = unit(rng);
  }
  const Eigen::VectorXd mid = 0.5 * (a + b);

  const Eigen::VectorXd ga = spacing_values(a, system);
  const Eigen::VectorXd gb = spacing_values(b, system);
  const Eigen::VectorXd gm = spacing_values(mid, system);
  CHECK((gm - 0.5 * (ga + gb)).cwiseAbs().maxCoeff() < 1e-14);

  const auto va = volume_constraints(a, 5, 20);
  const auto vb = volume_constraints(b, 5, 20);
  const auto vm = volume_constraints(mid, 5, 20);
  CHECK(vm.g_min == doctest::Approx(0.5 * (va.g_min + vb.g_min)).epsilon(1e-14));
  CHECK(vm.g_max == doctest::Approx(0.5 * (va.g_max + vb.g_max)).epsilon(1e-14));
}

TEST_CASE("binary spacing feasibility equals a distance scan") {
  const auto grid = generate_circular_grid(700.0, 200.0, GridMode::offset);
  const auto system = build_spacing(grid, TurbineSpec{});
  const Eigen::Index n = grid.size();

  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.35);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd rho(n);
    for (Eigen::Index i = 0; i < n; ++i) rho(i) = coin(rng) ? 1.0 : 0.0;

    bool scan_ok = true;
    for (Eigen::Index i = 0; i < n && scan_ok; ++i)
      for (Eigen::Index j = i + 1; j < n && scan_ok; ++j)
        if (rho(i) == 1.0 && rho(j) == 1.0 &&
            std::hypot(grid.x(i) - grid.x(j), grid.y(i) - grid.y(j)) <= 260.0)
          scan_ok = false;

    const bool system_ok =
        system.spacing_rows() == 0 || spacing_values(rho, system).maxCoeff() <= 0.0;
    CHECK(system_ok == scan_ok);
  }
}
