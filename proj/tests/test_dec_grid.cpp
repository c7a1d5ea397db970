#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "common/errors.hpp"
#include "common/tolerances.hpp"
#include "dec/grid.hpp"
#include "oracles.hpp"

using namespace morsecone;

namespace {

const double pi = 3.14159265358979323846;

bool throws_containing(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const std::exception& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

Eigen::VectorXd as_vec(const cochain& c) {
  return Eigen::Map<const Eigen::VectorXd>(c.values.data(), c.values.size());
}

cochain from_vec(int degree, const Eigen::VectorXd& v) {
  cochain c;
  c.degree = degree;
  c.values.assign(v.data(), v.data() + v.size());
  return c;
}

}  // namespace

TEST_CASE("grid construction and cell counts") {
  CHECK_THROWS_AS(make_grid(3, 8), validation_error);
  CHECK_THROWS_AS(make_grid(2, 3), validation_error);
  periodic_grid g1 = make_grid(1, 6);
  CHECK(g1.cell_count(0) == 6);
  CHECK(g1.cell_count(1) == 6);
  CHECK(g1.cell_count(2) == 0);
  periodic_grid g2 = make_grid(2, 5);
  CHECK(g2.cell_count(0) == 25);
  CHECK(g2.cell_count(1) == 50);
  CHECK(g2.cell_count(2) == 25);
  CHECK(g2.vertex_id(-1, 0) == 4);
  CHECK(g2.vertex_id(5, 5) == 0);
}

TEST_CASE("coboundary on the 4-cycle matches the hand computation") {
  periodic_grid g = make_grid(1, 4);
  sparse_mat d = d_op(g, 0);
  Eigen::VectorXd indicator = Eigen::VectorXd::Zero(4);
  indicator[0] = 1;
  Eigen::VectorXd e = d * indicator;
  // Edge i runs from vertex i to i+1: the wrap-around edge 3 gains the
  // value, edge 0 loses it.
  CHECK(e[0] == -1.0);
  CHECK(e[1] == 0.0);
  CHECK(e[2] == 0.0);
  CHECK(e[3] == 1.0);
  CHECK_THROWS_AS(d_op(g, 1), validation_error);
  CHECK_THROWS_AS(d_op(g, -1), validation_error);
}

TEST_CASE("constants are closed") {
  for (int m : {1, 2}) {
    periodic_grid g = make_grid(m, 6);
    cochain ones = sample_form(g, 0, {1.0});
    CHECK((d_op(g, 0) * as_vec(ones)).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("d compose d vanishes") {
  periodic_grid g = make_grid(2, 7);
  sparse_mat d0 = d_op(g, 0);
  sparse_mat d1 = d_op(g, 1);
  std::mt19937_64 rng(3);

  SUBCASE("integer cochains cancel bit-exactly") {
    std::uniform_int_distribution<int> small(-8, 8);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd a(g.cell_count(0));
      for (int i = 0; i < a.size(); ++i) a[i] = small(rng);
      CHECK((d1 * (d0 * a)).lpNorm<Eigen::Infinity>() == 0.0);
    }
  }
  SUBCASE("continuous cochains cancel to rounding") {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd a(g.cell_count(0));
      for (int i = 0; i < a.size(); ++i) a[i] = gauss(rng);
      CHECK((d1 * (d0 * a)).lpNorm<Eigen::Infinity>() <=
            tol::dd_zero * std::max(1.0, a.lpNorm<Eigen::Infinity>()));
    }
  }
}

TEST_CASE("mass weights give resolution-independent norms") {
  for (int n : {4, 8, 16}) {
    periodic_grid g = make_grid(2, n);
    cochain ones = sample_form(g, 0, {1.0});
    CHECK(mass_norm(g, 0, ones) == doctest::Approx(1.0).epsilon(1e-12));
    cochain dx = sample_form(g, 1, {1.0, 0.0});
    CHECK(mass_norm(g, 1, dx) == doctest::Approx(1.0).epsilon(1e-12));
    cochain dx3 = sample_form(g, 1, {3.0, 0.0});
    CHECK(mass_norm(g, 1, dx3) == doctest::Approx(3.0).epsilon(1e-12));
    cochain vol = sample_form(g, 2, {1.0});
    CHECK(mass_norm(g, 2, vol) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sampled smooth norms converge to the analytic integral") {
  // norm^2 of the vertex samples of cos(2 pi x) approximates the integral
  // of cos^2 over the torus; the quadrature oracle provides the target and
  // refinement must shrink the error quadratically at worst.
  double target = oracle::simpson([](double x) { return std::cos(2 * pi * x) *
                                                        std::cos(2 * pi * x); },
                                  0.0, 1.0);
  double prev_err = 1e9;
  for (int n : {8, 16, 32}) {
    periodic_grid g = make_grid(1, n);
    cochain c = sample_zero_form(g, [](double x, double) { return std::cos(2 * pi * x); });
    double err = std::fabs(mass_inner(g, 0, c, c) - target);
    CHECK(err <= prev_err + 1e-12);
    prev_err = err;
  }
  // Trapezoid sums of smooth periodic integrands are spectrally accurate,
  // so at n = 32 the error is already far below any h^2 budget.
  CHECK(prev_err <= 1e-10);
}

TEST_CASE("zero-form sampling evaluates pointwise") {
  periodic_grid g = make_grid(1, 4);
  cochain c = sample_zero_form(g, [](double x, double) { return std::cos(2 * pi * x); });
  REQUIRE(c.values.size() == 4);
  CHECK(std::fabs(c.values[0] - 1.0) == 0.0);
  CHECK(std::fabs(c.values[1]) <= tol::sample_exact);
  CHECK(std::fabs(c.values[2] + 1.0) <= tol::sample_exact);
  CHECK(std::fabs(c.values[3]) <= tol::sample_exact);

  periodic_grid g2 = make_grid(2, 8);
  cochain f = sample_zero_form(
      g2, [](double x, double y) { return std::cos(2 * pi * x) + std::cos(2 * pi * y); });
  double mx = 0;
  for (double v : f.values) mx = std::max(mx, std::fabs(v));
  CHECK(mx == 2.0);
  CHECK(f.values[0] == 2.0);
}

TEST_CASE("constant form samples are exactly closed and reject bad input") {
  periodic_grid g = make_grid(2, 6);
  cochain dx = sample_form(g, 1, {1.0, 0.0});
  CHECK((d_op(g, 1) * as_vec(dx)).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK_THROWS_AS(sample_form(g, 1, {1.0}), validation_error);
  CHECK_THROWS_AS(sample_form(g, 0, {1.0, 2.0}), validation_error);
  for (int id = 0; id < g.cell_count(1); ++id) {
    double want = g.edge_axis(id) == 0 ? g.h : 0.0;
    CHECK(dx.values[static_cast<size_t>(id)] == want);
  }
}

TEST_CASE("degree-zero cup is scalar multiplication in every degree") {
  periodic_grid g = make_grid(2, 5);
  cochain c = sample_form(g, 0, {2.5});
  cup_operator cup = cup_with(g, c);
  REQUIRE(cup.block.size() == 3);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (int k = 0; k <= 2; ++k) {
    Eigen::VectorXd beta(g.cell_count(k));
    for (int i = 0; i < beta.size(); ++i) beta[i] = gauss(rng);
    CHECK(((cup.block[static_cast<size_t>(k)] * beta) - 2.5 * beta).lpNorm<Eigen::Infinity>() ==
          0.0);
  }
}

TEST_CASE("dx cup dy reproduces the sampled area form") {
  periodic_grid g = make_grid(2, 6);
  cochain dx = sample_form(g, 1, {1.0, 0.0});
  cochain dy = sample_form(g, 1, {0.0, 1.0});
  cup_operator cup = cup_with(g, dx);
  Eigen::VectorXd got = cup.block[1] * as_vec(dy);
  Eigen::VectorXd want = as_vec(sample_form(g, 2, {1.0}));
  CHECK((got - want).lpNorm<Eigen::Infinity>() <= tol::sample_exact);

  // One square by hand: omega cup beta picks the y-edge one step in x.
  cochain beta;
  beta.degree = 1;
  beta.values.assign(static_cast<size_t>(g.cell_count(1)), 0.0);
  beta.values[static_cast<size_t>(g.edge_id(1, 3, 2))] = 7.0;
  Eigen::VectorXd img = cup.block[1] * as_vec(beta);
  for (int id = 0; id < g.cell_count(2); ++id) {
    double want_v = (id == g.square_id(2, 2)) ? g.h * 7.0 : 0.0;
    CHECK(std::fabs(img[id] - want_v) <= tol::sample_exact);
  }
}

TEST_CASE("dx cup dx annihilates everything") {
  periodic_grid g = make_grid(2, 6);
  cochain dx = sample_form(g, 1, {1.0, 0.0});
  cup_operator cup = cup_with(g, dx);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd beta(g.cell_count(1));
    for (int i = 0; i < beta.size(); ++i) beta[i] = gauss(rng);
    // cup.block[1] maps 1-cochains to 2-cochains; applying the degree-1
    // block to dx-multiples is the dx cup dx channel.
    Eigen::VectorXd dxbeta = as_vec(dx).cwiseProduct(beta);
    CHECK((cup.block[1] * dxbeta).lpNorm<Eigen::Infinity>() <= tol::leibniz);
  }
}

TEST_CASE("cup rejects non-closed omega") {
  periodic_grid g = make_grid(2, 5);
  cochain omega;
  omega.degree = 1;
  omega.values.assign(static_cast<size_t>(g.cell_count(1)), 0.0);
  omega.values[3] = 1.0;
  CHECK(throws_containing([&] { cup_with(g, omega); }, "not closed"));
}

TEST_CASE("Leibniz identity holds for closed omegas of every degree") {
  periodic_grid g = make_grid(2, 6);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss;
  for (auto omega : {sample_form(g, 0, {1.5}), sample_form(g, 1, {2.0, -1.0}),
                     sample_form(g, 2, {0.75})}) {
    cup_operator cup = cup_with(g, omega);  // construction re-checks Leibniz
    int ell = omega.degree;
    double lsign = (ell % 2 == 0) ? 1.0 : -1.0;
    for (int q = 0; q + ell + 1 <= g.m; ++q) {
      for (int t = 0; t < 10; ++t) {
        Eigen::VectorXd beta(g.cell_count(q));
        for (int i = 0; i < beta.size(); ++i) beta[i] = gauss(rng);
        Eigen::VectorXd lhs = d_op(g, q + ell) * (cup.block[static_cast<size_t>(q)] * beta);
        Eigen::VectorXd rhs =
            lsign * (cup.block[static_cast<size_t>(q + 1)] * (d_op(g, q) * beta));
        CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <=
              tol::leibniz * std::max(1.0, beta.lpNorm<Eigen::Infinity>()));
      }
    }
  }
}

TEST_CASE("adjoint is an involution and transposes the inner product") {
  periodic_grid g = make_grid(2, 5);
  sparse_mat d1 = d_op(g, 1);
  sparse_mat adj = adjoint(g, d1, 1, 2);
  sparse_mat back = adjoint(g, adj, 2, 1);
  CHECK((Eigen::MatrixXd(back) - Eigen::MatrixXd(d1)).lpNorm<Eigen::Infinity>() <=
        tol::adjoint_involution);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd x(g.cell_count(1)), y(g.cell_count(2));
    for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    for (int i = 0; i < y.size(); ++i) y[i] = gauss(rng);
    double lhs = mass_inner(g, 2, from_vec(2, d1 * x), from_vec(2, y));
    double rhs = mass_inner(g, 1, from_vec(1, x), from_vec(1, adj * y));
    CHECK(std::fabs(lhs - rhs) <=
          tol::adjoint_inner * std::max({1.0, std::fabs(lhs), std::fabs(rhs)}));
  }
}

TEST_CASE("adjoint of d on the circle is the weighted divergence") {
  periodic_grid g = make_grid(1, 8);
  sparse_mat d0 = d_op(g, 0);
  sparse_mat adj = adjoint(g, d0, 0, 1);
  // Mass weights are h at degree 0 and 1/h at degree 1, so the adjoint of
  // the forward difference is -1/h^2 times the backward difference.
  Eigen::MatrixXd a(adj);
  double w = 1.0 / (g.h * g.h);
  for (int v = 0; v < 8; ++v) {
    for (int e = 0; e < 8; ++e) {
      double want = 0.0;
      if (e == v) want = -w;            // edge leaving v
      if ((e + 1) % 8 == v) want = w;   // edge arriving at v
      CHECK(std::fabs(a(v, e) - want) <= tol::adjoint_involution * w);
    }
  }
}

TEST_CASE("cup inner products transpose through the adjoint") {
  periodic_grid g = make_grid(2, 5);
  cochain dx = sample_form(g, 1, {1.0, 0.0});
  cup_operator cup = cup_with(g, dx);
  sparse_mat adj = adjoint(g, cup.block[1], 1, 2);
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd beta(g.cell_count(1)), gamma(g.cell_count(2));
    for (int i = 0; i < beta.size(); ++i) beta[i] = gauss(rng);
    for (int i = 0; i < gamma.size(); ++i) gamma[i] = gauss(rng);
    double lhs = mass_inner(g, 2, from_vec(2, cup.block[1] * beta), from_vec(2, gamma));
    double rhs = mass_inner(g, 1, from_vec(1, beta), from_vec(1, adj * gamma));
    CHECK(std::fabs(lhs - rhs) <=
          tol::adjoint_inner * std::max({1.0, std::fabs(lhs), std::fabs(rhs)}));
  }
}

TEST_CASE("a_omega bounds the cup operator norm") {
  periodic_grid g = make_grid(2, 6);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  for (auto omega : {sample_form(g, 1, {1.0, 0.0}), sample_form(g, 2, {1.0}),
                     sample_form(g, 0, {-3.0}), sample_form(g, 1, {2.0, 2.0})}) {
    double a = a_omega(g, omega);
    cup_operator cup = cup_with(g, omega);
    for (int q = 0; q + omega.degree <= g.m; ++q) {
      for (int t = 0; t < 100 / (g.m + 1); ++t) {
        Eigen::VectorXd beta(g.cell_count(q));
        for (int i = 0; i < beta.size(); ++i) beta[i] = gauss(rng);
        cochain b = from_vec(q, beta);
        cochain wb = from_vec(q + omega.degree, cup.block[static_cast<size_t>(q)] * beta);
        CHECK(mass_norm(g, q + omega.degree, wb) <=
              a * mass_norm(g, q, b) * (1 + 1e-12));
      }
    }
  }
  CHECK(a_omega(g, sample_form(g, 1, {1.0, 0.0})) == doctest::Approx(4.0));
  CHECK(a_omega(g, sample_form(g, 0, {-3.0})) == doctest::Approx(12.0));
}
