#include <cmath>

#include "doctest.h"
#include "rffsvm/bounds.hpp"
#include "rffsvm/errors.hpp"
#include "rffsvm/random.hpp"

using namespace rffsvm;

namespace {
BoundInputs base_inputs() {
  BoundInputs in;
  in.n = 1000;
  in.T = 1000;
  in.eta = 0.01;
  in.L = 4.0;
  in.epsilon = 0.1;
  in.d = 8;
  in.D = 200;
  in.sigma_p = 4.0;
  in.diam = 10.0;
  in.B = 1.0;
  in.w_star_norm_sq = 1.0;
  return in;
}
}  // namespace

TEST_CASE("rff_probability") {
  auto in = base_inputs();
  SUBCASE("approaches 1 as D grows") {
    in.D = 1e7;
    CHECK(rff_probability(in).raw == doctest::Approx(1.0));
    CHECK(rff_probability(in).clamped == doctest::Approx(1.0));
  }
  SUBCASE("crossover where the exponent cancels the prefactor") {
    // sigma_p * diam / eps = 1 and exponent = -ln(2^8) gives raw value 0
    in.sigma_p = 1.0;
    in.diam = 1.0;
    in.epsilon = 1.0;
    in.D = 4.0 * (in.d + 2.0) * std::log(256.0);
    CHECK(rff_probability(in).raw == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("monotone increasing in D") {
    double prev = -1e18;
    for (double D : {10.0, 50.0, 100.0, 400.0, 1600.0}) {
      in.D = D;
      const double p = rff_probability(in).raw;
      CHECK(p > prev);
      prev = p;
    }
  }
  SUBCASE("cross-check against a long-double evaluation") {
    const long double ratio =
        static_cast<long double>(in.sigma_p) * in.diam / in.epsilon;
    const long double expected =
        1.0L - 256.0L * ratio * ratio *
                   std::exp(static_cast<long double>(-in.D * in.epsilon *
                                                     in.epsilon) /
                            (4.0L * (in.d + 2.0L)));
    CHECK(rff_probability(in).raw ==
          doctest::Approx(static_cast<double>(expected)).epsilon(1e-14));
  }
}

TEST_CASE("required_D") {
  auto in = base_inputs();
  SUBCASE("log e = 1 case") {
    in.d = 4;
    in.epsilon = 1.0;
    in.sigma_p = std::exp(1.0);
    in.diam = 1.0;
    CHECK(required_D(in, 1.0) == 4);
  }
  SUBCASE("halving epsilon at least quadruples the result") {
    const auto d1 = required_D(in);
    in.epsilon /= 2.0;
    const auto d2 = required_D(in);
    CHECK(d2 >= 4 * d1);
  }
  SUBCASE("epsilon = 1/sqrt(n) gives linear growth in n") {
    // D(n) ~ c d n log(...) : check near-linear scaling over doublings
    auto D_at = [&](double n) {
      auto inputs = in;
      inputs.epsilon = 1.0 / std::sqrt(n);
      return static_cast<double>(required_D(inputs, 1.0));
    };
    const double r1 = D_at(400) / D_at(200);
    const double r2 = D_at(800) / D_at(400);
    CHECK(r1 == doctest::Approx(2.0).epsilon(0.1));
    CHECK(r2 == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("lemma1_bound") {
  auto in = base_inputs();
  SUBCASE("zero w* leaves only the step term") {
    in.w_star_norm_sq = 0.0;
    CHECK(lemma1_bound(in, 0.5) ==
          doctest::Approx(0.5 + 0.5 * in.eta * in.L * in.L));
  }
  SUBCASE("frozen arithmetic example") {
    in.T = 100;
    in.eta = 0.05774;
    in.L = 1.0;
    in.w_star_norm_sq = 1.0;
    CHECK(lemma1_bound(in, 0.0) == doctest::Approx(0.11547).epsilon(1e-4));
  }
  SUBCASE("AM-GM optimal eta") {
    // eta* = ||w*|| / (L sqrt(T)) gives bound R* + ||w*|| L / sqrt(T)
    in.w_star_norm_sq = 4.0;
    in.eta = std::sqrt(in.w_star_norm_sq) / (in.L * std::sqrt(in.T));
    CHECK(lemma1_bound(in, 0.0) ==
          doctest::Approx(std::sqrt(in.w_star_norm_sq) * in.L /
                          std::sqrt(in.T)));
  }
}

TEST_CASE("opt_error_bound") {
  auto in = base_inputs();
  SUBCASE("frozen arithmetic example") {
    in.B = 1.0;
    in.epsilon = 0.1;
    in.T = 1000;
    in.eta = 0.01;
    in.L = 4.0;
    CHECK(opt_error_bound(in) == doctest::Approx(0.135));
  }
  SUBCASE("eps = 0 matches lemma1's optimization terms with B^2 = ||w*||^2") {
    in.epsilon = 0.0;
    in.w_star_norm_sq = in.B * in.B;
    CHECK(opt_error_bound(in) == doctest::Approx(lemma1_bound(in, 0.0)));
  }
  SUBCASE("decreasing in T") {
    const double b1 = opt_error_bound(in);
    in.T *= 2;
    CHECK(opt_error_bound(in) < b1);
  }
  SUBCASE("optional trailing term adds eps L B") {
    CHECK(opt_error_bound(in, true) ==
          doctest::Approx(opt_error_bound(in) + in.epsilon * in.L * in.B));
  }
}

TEST_CASE("stability_bound") {
  auto in = base_inputs();
  SUBCASE("single pass example") {
    in.T = in.n = 100;
    in.L = 4.0;
    in.eta = 0.025;
    CHECK(stability_bound(in) == doctest::Approx(0.4));
  }
  SUBCASE("frozen arithmetic example") {
    in.n = 1000;
    in.T = 5000;
    in.L = 4.0;
    in.eta = 0.001;
    CHECK(stability_bound(in) == doctest::Approx(0.08));
  }
  SUBCASE("linear in T and eta") {
    const double b = stability_bound(in);
    in.T *= 2;
    CHECK(stability_bound(in) == doctest::Approx(2 * b));
    in.eta *= 3;
    CHECK(stability_bound(in) == doctest::Approx(6 * b));
  }
}

TEST_CASE("lemma2_bound") {
  auto in = base_inputs();
  SUBCASE("eps = 0") {
    in.epsilon = 0.0;
    in.B = 1.0;
    in.L = 4.0;
    in.n = 100;
    CHECK(lemma2_bound(in, 0.0) == doctest::Approx(4.0 / 10.0));
  }
  SUBCASE("frozen arithmetic example") {
    in.B = 1.0;
    in.L = 4.0;
    in.epsilon = 0.1;
    in.n = 400;
    CHECK(lemma2_bound(in, 0.0) == doctest::Approx(0.21));
  }
  SUBCASE("excess halves when n quadruples") {
    const double e1 = lemma2_bound(in, 0.0);
    in.n *= 4;
    CHECK(lemma2_bound(in, 0.0) == doctest::Approx(e1 / 2.0));
  }
}

TEST_CASE("theorem1_bound") {
  auto in = base_inputs();
  SUBCASE("T = n gives the sqrt(3) factor") {
    in.T = in.n;
    const auto res = theorem1_bound(in, 0.0);
    CHECK(res.bound == doctest::Approx(in.B * in.L *
                                       std::sqrt(1.0 + in.epsilon) *
                                       std::sqrt(3.0) / std::sqrt(in.n)));
  }
  SUBCASE("T -> infinity limit is sqrt(2) times the 1/sqrt(n) scale") {
    in.T = 1e12;
    const auto res = theorem1_bound(in, 0.0);
    CHECK(res.bound == doctest::Approx(in.B * in.L *
                                       std::sqrt(2.0 * (1.0 + in.epsilon)) /
                                       std::sqrt(in.n))
                           .epsilon(1e-5));
  }
  SUBCASE("optimal eta reproduces the closed-form excess through the rhs") {
    const auto res = theorem1_bound(in, 0.0);
    CHECK(excess_risk_rhs(in, res.optimal_eta) ==
          doctest::Approx(res.bound).epsilon(1e-10));
  }
}

TEST_CASE("optimal eta beats a log grid through the excess rhs") {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    BoundInputs in;
    in.B = 0.1 + 5.0 * rng.uniform();
    in.L = 0.5 + 8.0 * rng.uniform();
    in.epsilon = rng.uniform();
    in.n = std::floor(50 + 5000 * rng.uniform());
    in.T = std::floor(in.n * (0.5 + 10.0 * rng.uniform()));
    const auto res = theorem1_bound(in, 0.0);
    const double at_opt = excess_risk_rhs(in, res.optimal_eta);
    for (int k = 0; k < 1000; ++k) {
      const double eta = std::pow(10.0, -6.0 + 8.0 * k / 999.0);
      CHECK(excess_risk_rhs(in, eta) >= at_opt - 1e-12 * at_opt);
    }
  }
}

TEST_CASE("decomposition identity: excess = min over eta of opt + stab") {
  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    BoundInputs in;
    in.B = 0.2 + 3.0 * rng.uniform();
    in.L = 1.0 + 5.0 * rng.uniform();
    in.epsilon = 0.5 * rng.uniform();
    in.n = std::floor(100 + 2000 * rng.uniform());
    in.T = std::floor(in.n * (1.0 + 5.0 * rng.uniform()));
    const auto res = theorem1_bound(in, 0.0);
    // fine golden-section-free scan around the optimum
    double best = 1e300;
    for (int k = 0; k < 20000; ++k) {
      const double eta =
          res.optimal_eta * std::pow(10.0, -0.01 + 0.02 * k / 19999.0);
      auto probe = in;
      probe.eta = eta;
      best = std::min(best, opt_error_bound(probe) + stability_bound(probe));
    }
    CHECK(best == doctest::Approx(res.bound).epsilon(1e-9));
  }
}

TEST_CASE("calculators are pure") {
  const auto in = base_inputs();
  CHECK(rff_probability(in).raw == rff_probability(in).raw);
  CHECK(theorem1_bound(in, 0.3).bound == theorem1_bound(in, 0.3).bound);
  CHECK(stability_bound(in) == stability_bound(in));
}

TEST_CASE("bounding box diameter") {
  Eigen::MatrixXd X(3, 2);
  X << 0, 0, 3, 0, 0, 4;
  CHECK(bounding_box_diameter(X) == doctest::Approx(5.0));
  CHECK_THROWS_AS(bounding_box_diameter(Eigen::MatrixXd(0, 2)), DomainError);
}

TEST_CASE("input validation") {
  BoundInputs in;  // all zero
  CHECK_THROWS_AS(rff_probability(in), DomainError);
  CHECK_THROWS_AS(required_D(in), DomainError);
  CHECK_THROWS_AS(stability_bound(in), DomainError);
  CHECK_THROWS_AS(theorem1_bound(in, 0.0), DomainError);
}
