#include <doctest.h>

#include <cmath>
#include <limits>

#include "sggica/density.hpp"
#include "sggica/errors.hpp"
#include "sggica/estimation.hpp"
#include "sggica/rng.hpp"
#include "sggica/sampling.hpp"
#include "sggica/special_functions.hpp"
#include "support/instances.hpp"

using namespace sggica;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> values) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) X(i++, 0) = v;
  return X;
}

const Eigen::MatrixXd kUnitW = Eigen::MatrixXd::Identity(1, 1);
const Eigen::VectorXd kZeroM = Eigen::VectorXd::Zero(1);

}  // namespace

TEST_CASE("sufficient stats hand values") {
  SUBCASE("two symmetric points") {
    const auto stats = sufficient_stats(column({-1.0, 1.0}), kZeroM, kUnitW, 2.0);
    CHECK(stats.s1[0] == doctest::Approx(1.0));
    CHECK(stats.s2[0] == doctest::Approx(1.0));
    CHECK(stats.g[0] == doctest::Approx(2.0));
    CHECK(stats.left[0].size() + stats.right[0].size() == 2);
  }
  SUBCASE("skewed three points") {
    const auto stats = sufficient_stats(column({-2.0, 1.0, 1.0}), kZeroM, kUnitW, 2.0);
    CHECK(stats.s1[0] == doctest::Approx(4.0));
    CHECK(stats.s2[0] == doctest::Approx(2.0));
    CHECK(stats.g[0] ==
          doctest::Approx(std::pow(4.0, 1.0 / 3.0) + std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));
  }
  SUBCASE("empty left side") {
    const auto stats = sufficient_stats(column({1.0, 2.0, 3.0}), kZeroM, kUnitW, 2.0);
    CHECK(stats.s1[0] == 0.0);
    CHECK(stats.left[0].empty());
    CHECK(stats.right[0].size() == 3);
  }
  SUBCASE("boundary sample goes left") {
    const auto stats = sufficient_stats(column({0.0, 1.0}), kZeroM, kUnitW, 2.0);
    CHECK(stats.left[0].size() == 1);
    CHECK(stats.right[0].size() == 1);
  }
  CHECK_THROWS_AS(sufficient_stats(column({1.0}), kZeroM, kUnitW, 2.0), InsufficientDataError);
}

TEST_CASE("scale estimators hand values") {
  SUBCASE("symmetric pair gives unit scales") {
    const auto stats = sufficient_stats(column({-1.0, 1.0}), kZeroM, kUnitW, 2.0);
    const auto est = scale_estimators(stats, 2.0);
    CHECK(est.sigma_l[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.sigma_r[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.tau[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.alpha_l[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("skewed three points") {
    const auto stats = sufficient_stats(column({-2.0, 1.0, 1.0}), kZeroM, kUnitW, 2.0);
    const auto est = scale_estimators(stats, 2.0);
    const double g = std::pow(4.0, 1.0 / 3.0) + std::pow(2.0, 1.0 / 3.0);
    const double expected_var = (2.0 / 3.0) * 0.5 * std::pow(4.0, 2.0 / 3.0) * g;
    CHECK(est.sigma_l[0] * est.sigma_l[0] == doctest::Approx(expected_var).epsilon(1e-12));
    CHECK(expected_var == doctest::Approx(2.3916).epsilon(1e-4));
    CHECK(est.tau[0] == doctest::Approx(std::pow(0.5, 1.0 / 3.0)).epsilon(1e-12));
  }
  SUBCASE("s1 = s2 forces tau = 1 for any c") {
    for (double c : {0.6, 1.0, 2.0, 5.0}) {
      const auto stats = sufficient_stats(column({-1.0, 1.0}), kZeroM, kUnitW, c);
      CHECK(scale_estimators(stats, c).tau[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("degenerate side raises") {
    const auto stats = sufficient_stats(column({1.0, 2.0}), kZeroM, kUnitW, 2.0);
    CHECK_THROWS_AS(scale_estimators(stats, 2.0), DegenerateSideError);
  }
}

TEST_CASE("grid-search oracle agrees with the closed-form scale estimators") {
  // For fixed (m, c) the 400x400 log-spaced grid over (sigma_l, sigma_r)
  // must attain its maximum within one cell of the closed form.  The grid
  // evaluates the likelihood through its own sums, independent of the
  // estimator code path.
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 60 + static_cast<Eigen::Index>(rng.uniform01() * 80);
    const double c = 0.7 + 2.8 * rng.uniform01();
    const UnivariateSgg gen{0.0, 0.5 + rng.uniform01(), 0.5 + 1.5 * rng.uniform01(),
                            0.8 + 2.0 * rng.uniform01()};
    const Eigen::MatrixXd X = sample_sgg(gen, n, 7000 + trial);
    const double m = X.col(0).mean() * 0.2;  // keep both sides occupied

    // Brute-force power sums straight from the samples.
    double s1 = 0.0, s2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = X(i, 0) - m;
      if (z <= 0.0) {
        s1 += std::pow(-z, c);
      } else {
        s2 += std::pow(z, c);
      }
    }
    REQUIRE(s1 > 0.0);
    REQUIRE(s2 > 0.0);

    const Eigen::VectorXd mv = Eigen::VectorXd::Constant(1, m);
    const auto est = scale_estimators(sufficient_stats(X, mv, kUnitW, c), c);

    // Log-spaced grid bracketing the estimator by a factor of five per side.
    const int cells = 400;
    const auto grid = [&](double center, int k) {
      return center * std::pow(5.0, -1.0 + 2.0 * k / (cells - 1.0));
    };
    const double beta_half_c = std::pow(beta_of_c(c), 0.5 * c);
    const double dn = static_cast<double>(n);
    int best_i = -1, best_j = -1;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < cells; ++i) {
      const double sl = grid(est.sigma_l[0], i);
      const double sl_term = beta_half_c * std::pow(sl, -c) * s1;
      for (int j = 0; j < cells; ++j) {
        const double sr = grid(est.sigma_r[0], j);
        // Full log-likelihood at fixed (m, c) up to constants in (sl, sr).
        const double ll =
            -dn * std::log(sl + sr) - sl_term - beta_half_c * std::pow(sr, -c) * s2;
        if (ll > best_ll) {
          best_ll = ll;
          best_i = i;
          best_j = j;
        }
      }
    }
    // The estimator sits at grid index (cells-1)/2 by construction.
    const double mid = (cells - 1.0) / 2.0;
    CHECK(std::abs(best_i - mid) <= 1.0);
    CHECK(std::abs(best_j - mid) <= 1.0);
  }
}

TEST_CASE("reduced objective hand value and invariances") {
  CHECK(reduced_objective_l(column({-1.0, 1.0}), kZeroM, kUnitW, 2.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Rng rng(102);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = instances::random_instance(rng, 80, 3, 0.7, 4.0);
    const double base = reduced_objective_l(inst.X, inst.m, inst.W, inst.c);

    // Scaling any single projection row changes nothing (det and g cancel);
    // negative scales swap the sides but land on the same value.
    for (double lambda : {0.5, -1.0, 3.0, -2.5}) {
      for (Eigen::Index p = 0; p < 3; ++p) {
        Eigen::MatrixXd W = inst.W;
        W.row(p) *= lambda;
        CHECK(std::abs(reduced_objective_l(inst.X, inst.m, W, inst.c) - base) <= 1e-10);
      }
    }

    // Permuting the projection rows permutes a product.
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(3, 3);
    P(0, 2) = P(1, 0) = P(2, 1) = 1.0;
    CHECK(reduced_objective_l(inst.X, inst.m, P * inst.W, inst.c) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("profile log-likelihood worked value") {
  // ln L-hat({-1,1}; 0, [1], 2) = -ln(2 pi) - 1.
  const double got = profile_loglik(column({-1.0, 1.0}), kZeroM, kUnitW, 2.0);
  CHECK(got == doctest::Approx(-std::log(2.0 * M_PI) - 1.0).epsilon(0).scale(1e-10));
  CHECK(got == doctest::Approx(-2.8378770664093453).epsilon(1e-9));
}

TEST_CASE("profile equals full likelihood at the plug-in scales") {
  Rng rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.uniform01() * 3);
    const auto inst = instances::random_instance(rng, 40 + trial, d, 0.7, 4.0);
    const auto stats = sufficient_stats(inst.X, inst.m, inst.W, inst.c);
    const auto est = scale_estimators(stats, inst.c);
    const double profile = profile_loglik(inst.X, inst.m, inst.W, inst.c);
    const double full =
        full_loglik(inst.X, MultiSgg{inst.m, inst.W, est.sigma_l, est.sigma_r, inst.c});
    CHECK(std::abs(profile - full) <= 1e-8 * std::max(1.0, std::abs(full)));
  }
}

TEST_CASE("profile is invariant under sample reordering") {
  Rng rng(104);
  const auto inst = instances::random_instance(rng, 64, 2, 0.8, 3.0);
  Eigen::MatrixXd shuffled = inst.X;
  for (Eigen::Index i = shuffled.rows() - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(rng.uniform01() * static_cast<double>(i + 1));
    shuffled.row(i).swap(shuffled.row(std::min(j, i)));
  }
  CHECK(profile_loglik(shuffled, inst.m, inst.W, inst.c) ==
        doctest::Approx(profile_loglik(inst.X, inst.m, inst.W, inst.c)).epsilon(1e-12));
}

TEST_CASE("profile requires both sides") {
  CHECK_THROWS_AS(profile_loglik(column({1.0, 2.0, 3.0}), kZeroM, kUnitW, 2.0),
                  DegenerateSideError);
}

TEST_CASE("full log-likelihood agrees with the density sum and the closed form") {
  Rng rng(105);
  const auto inst = instances::random_instance(rng, 50, 2, 0.8, 3.5);
  const auto est = scale_estimators(sufficient_stats(inst.X, inst.m, inst.W, inst.c), inst.c);
  const MultiSgg model{inst.m, inst.W, est.sigma_l, est.sigma_r, inst.c};

  double direct = 0.0;
  for (Eigen::Index i = 0; i < inst.X.rows(); ++i) {
    direct += multi_sgg_log_pdf(inst.X.row(i).transpose(), model);
  }
  const double fast = full_loglik(inst.X, model);
  CHECK(fast == doctest::Approx(direct).epsilon(1e-11));

  // Closed form: n ln(c1 |det W|) - n sum_j ln(sl_j + sr_j)
  //              - beta^{c/2} sum_j (sl_j^-c s1_j + sr_j^-c s2_j).
  const auto stats = sufficient_stats(inst.X, inst.m, inst.W, inst.c);
  const double n = static_cast<double>(inst.X.rows());
  const double beta = beta_of_c(inst.c);
  const double log_c1 =
      2.0 * (std::log(inst.c) + 0.5 * std::log(beta) - ln_gamma(1.0 / inst.c));
  double closed = n * (log_c1 + log_abs_det(inst.W));
  for (Eigen::Index j = 0; j < 2; ++j) {
    closed -= n * std::log(est.sigma_l[j] + est.sigma_r[j]);
    closed -= std::pow(beta, 0.5 * inst.c) *
              (std::pow(est.sigma_l[j], -inst.c) * stats.s1[j] +
               std::pow(est.sigma_r[j], -inst.c) * stats.s2[j]);
  }
  CHECK(fast == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("full likelihood is stationary in the scales at the estimators") {
  Rng rng(106);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = instances::random_instance(rng, 60, 2, 0.8, 3.0);
    const auto est =
        scale_estimators(sufficient_stats(inst.X, inst.m, inst.W, inst.c), inst.c);
    for (Eigen::Index j = 0; j < 2; ++j) {
      for (bool left : {true, false}) {
        const auto eval = [&](double bump) {
          MultiSgg model{inst.m, inst.W, est.sigma_l, est.sigma_r, inst.c};
          (left ? model.sigma_l[j] : model.sigma_r[j]) *= (1.0 + bump);
          return full_loglik(inst.X, model);
        };
        const double h = 1e-6;
        const double derivative = (eval(h) - eval(-h)) / (2.0 * h);
        const double scale = std::abs(eval(0.0));
        CHECK(std::abs(derivative) <= 1e-5 * std::max(1.0, scale));
      }
    }
  }
}
