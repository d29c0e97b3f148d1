#include <cmath>

#include "doctest.h"
#include "rffsvm/errors.hpp"
#include "rffsvm/loss.hpp"
#include "rffsvm/random.hpp"

using namespace rffsvm;

TEST_CASE("huber_hinge piecewise values") {
  CHECK(huber_hinge(2.0) == 0.0);
  CHECK(huber_hinge(0.0) == 1.0);
  CHECK(huber_hinge(-2.0) == 8.0);
  CHECK(huber_hinge(-1.0) == 4.0);  // both branches agree at the breakpoint
  CHECK(huber_hinge(1.0) == 0.0);
  CHECK(huber_hinge(0.5) == 0.25);
  CHECK(huber_hinge(-0.5) == 2.25);
}

TEST_CASE("huber_hinge is continuous at the breakpoints") {
  const double h = 1e-9;
  CHECK(std::abs(huber_hinge(-1.0 - h) - huber_hinge(-1.0 + h)) <= 1e-7);
  CHECK(std::abs(huber_hinge(1.0 - h) - huber_hinge(1.0 + h)) <= 1e-7);
}

TEST_CASE("gradient at the breakpoints") {
  Eigen::VectorXd w(2), z(2);
  w << 0.5, 0.5;
  z << 1.0, 0.0;

  // u = 1: zero vector from the quadratic side
  {
    Eigen::VectorXd w1(2);
    w1 << 1.0, 0.0;
    const Eigen::VectorXd g = huber_hinge_grad_w(w1, z, 1.0);
    CHECK(g.norm() == 0.0);
  }
  // u = -1: -4 y z from both branches
  {
    Eigen::VectorXd wm(2);
    wm << -1.0, 0.0;
    const Eigen::VectorXd g = huber_hinge_grad_w(wm, z, 1.0);
    CHECK(g[0] == doctest::Approx(-4.0));
    CHECK(g[1] == 0.0);
  }
}

TEST_CASE("gradient matches central finite differences") {
  Rng rng(31);
  const int dim = 6;
  int checked = 0;
  while (checked < 200) {
    Eigen::VectorXd w(dim), z(dim);
    for (int j = 0; j < dim; ++j) {
      w[j] = rng.normal();
      z[j] = rng.normal();
    }
    const double y = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double u = y * w.dot(z);
    if (std::abs(u - 1.0) < 1e-3 || std::abs(u + 1.0) < 1e-3) continue;
    const Eigen::VectorXd g = huber_hinge_grad_w(w, z, y);
    const double h = 1e-6;
    for (int j = 0; j < dim; ++j) {
      Eigen::VectorXd wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      const double fd =
          (huber_hinge(y * wp.dot(z)) - huber_hinge(y * wm.dot(z))) / (2 * h);
      const double scale = std::max(1.0, std::abs(fd));
      CHECK(std::abs(g[j] - fd) / scale <= 1e-5);
    }
    ++checked;
  }
}

TEST_CASE("convexity, Lipschitz and smoothness properties") {
  Rng rng(47);
  for (int trial = 0; trial < 10000; ++trial) {
    const double u1 = 6.0 * (rng.uniform() - 0.5);
    const double u2 = 6.0 * (rng.uniform() - 0.5);
    const double t = rng.uniform();
    // convexity in u
    CHECK(huber_hinge(t * u1 + (1 - t) * u2) <=
          t * huber_hinge(u1) + (1 - t) * huber_hinge(u2) + 1e-12);
    // 4-Lipschitz in u
    CHECK(std::abs(huber_hinge(u1) - huber_hinge(u2)) <=
          4.0 * std::abs(u1 - u2) + 1e-12);
    // 2-smooth in u
    CHECK(std::abs(huber_hinge_deriv(u1) - huber_hinge_deriv(u2)) <=
          2.0 * std::abs(u1 - u2) + 1e-12);
  }
}

TEST_CASE("loss is non-increasing in the margin") {
  Rng rng(53);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = 8.0 * (rng.uniform() - 0.5);
    const double b = a + 4.0 * rng.uniform();
    CHECK(huber_hinge(b) <= huber_hinge(a) + 1e-15);
  }
}

TEST_CASE("gradient norm bound under unit-norm features") {
  Rng rng(59);
  const int dim = 8;
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::VectorXd w(dim), z(dim);
    for (int j = 0; j < dim; ++j) {
      w[j] = 2 * rng.normal();
      z[j] = rng.normal();
    }
    z.normalize();
    const double y = rng.uniform() < 0.5 ? -1.0 : 1.0;
    CHECK(huber_hinge_grad_w(w, z, y).norm() <= 4.0 + 1e-12);
  }
}

TEST_CASE("regularized_objective") {
  const Eigen::Index dim = 4;
  SUBCASE("w = 0 with any batch gives loss 1") {
    Eigen::MatrixXd Z = Eigen::MatrixXd::Random(10, dim);
    Eigen::VectorXd y = Eigen::VectorXd::Ones(10);
    const Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
    CHECK(regularized_objective(w, Z, y, 3.0) == doctest::Approx(1.0));
  }
  SUBCASE("lambda=2, ||w||^2=1, one sample at u=2") {
    Eigen::VectorXd w(dim);
    w << 1, 0, 0, 0;
    Eigen::MatrixXd Z(1, dim);
    Z << 2, 0, 0, 0;  // u = y w'z = 2
    Eigen::VectorXd y(1);
    y << 1;
    CHECK(regularized_objective(w, Z, y, 2.0) == doctest::Approx(1.0));
  }
  SUBCASE("empty batch") {
    Eigen::MatrixXd Z(0, dim);
    Eigen::VectorXd y(0);
    CHECK_THROWS_AS(
        regularized_objective(Eigen::VectorXd::Zero(dim), Z, y, 0.0),
        DomainError);
  }
}
