#include <doctest.h>

#include <cmath>

#include "sggica/density.hpp"
#include "sggica/errors.hpp"
#include "sggica/rng.hpp"
#include "support/quadrature.hpp"

using namespace sggica;

namespace {

double quad_sgg(const UnivariateSgg& p) {
  const double smax = std::max(p.sigma_l, p.sigma_r);
  const auto pdf = [&](double x) { return std::exp(sgg_log_pdf(x, p)); };
  // Split at the mode; the density has a kink there.
  return quadrature::integrate(pdf, p.m - 50.0 * smax, p.m, 400) +
         quadrature::integrate(pdf, p.m, p.m + 50.0 * smax, 400);
}

}  // namespace

TEST_CASE("alpha_from_sigma") {
  CHECK(alpha_from_sigma(1.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(alpha_from_sigma(1.0, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const double sigma = 0.1 + 3.0 * rng.uniform01();
    const double c = 0.4 + 5.0 * rng.uniform01();
    CHECK(alpha_from_sigma(2.0 * sigma, c) ==
          doctest::Approx(2.0 * alpha_from_sigma(sigma, c)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(alpha_from_sigma(0.0, 2.0), DomainError);
  CHECK_THROWS_AS(alpha_from_sigma(1.0, -1.0), DomainError);
}

TEST_CASE("sgg_log_pdf peak values") {
  // c=2 symmetric reduces to the standard normal peak.
  CHECK(sgg_log_pdf(0.0, {0.0, 1.0, 1.0, 2.0}) ==
        doctest::Approx(-0.5 * std::log(2.0 * M_PI)).epsilon(1e-12));
  // c=1 with sigma = sqrt(2) is the unit Laplace.
  CHECK(sgg_log_pdf(0.0, {0.0, std::sqrt(2.0), std::sqrt(2.0), 1.0}) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("sgg symmetric case is symmetric") {
  const UnivariateSgg p{0.7, 1.3, 1.3, 1.6};
  for (double t : {0.1, 0.5, 1.0, 2.5, 7.0}) {
    CHECK(sgg_log_pdf(p.m + t, p) == doctest::Approx(sgg_log_pdf(p.m - t, p)).epsilon(1e-13));
  }
}

TEST_CASE("sgg normalization over a parameter grid") {
  for (double sl : {0.5, 1.0, 2.0}) {
    for (double sr : {0.5, 1.0, 2.0}) {
      for (double c : {0.7, 1.0, 2.0, 4.0}) {
        const UnivariateSgg p{0.3, sl, sr, c};
        CHECK(quad_sgg(p) == doctest::Approx(1.0).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("reduction identities") {
  Rng rng(11);
  // sgg(c=2) == split normal; sgg(c=2, equal sigmas) == Gaussian;
  // sgg(c=1, equal sigmas) == Laplace.
  for (int k = 0; k < 40; ++k) {
    const double x = 8.0 * (rng.uniform01() - 0.5);
    const double m = 2.0 * (rng.uniform01() - 0.5);
    const double sigma = 0.4 + 2.0 * rng.uniform01();
    const double tau = 0.4 + 2.0 * rng.uniform01();

    const double sn = split_normal_log_pdf(x, m, sigma, tau);
    const double sgg2 = sgg_log_pdf(x, {m, sigma, tau * sigma, 2.0});
    CHECK(std::abs(sn - sgg2) <= 1e-12 * std::max(1.0, std::abs(sn)));

    const double gauss =
        -0.5 * std::log(2.0 * M_PI) - std::log(sigma) - 0.5 * (x - m) * (x - m) / (sigma * sigma);
    CHECK(sgg_log_pdf(x, {m, sigma, sigma, 2.0}) == doctest::Approx(gauss).epsilon(1e-12));

    const double b = sigma / std::sqrt(2.0);  // Laplace scale with std dev sigma
    const double laplace = -std::log(2.0 * b) - std::abs(x - m) / b;
    CHECK(sgg_log_pdf(x, {m, sigma, sigma, 1.0}) == doctest::Approx(laplace).epsilon(1e-12));
  }
}

TEST_CASE("logistic log pdf") {
  CHECK(logistic_log_pdf(0.0, 0.0, 1.0) == doctest::Approx(std::log(0.25)).epsilon(1e-13));
  for (double t : {0.3, 1.0, 4.0, 30.0}) {
    CHECK(logistic_log_pdf(1.0 + t, 1.0, 0.7) ==
          doctest::Approx(logistic_log_pdf(1.0 - t, 1.0, 0.7)).epsilon(1e-13));
  }
  const auto pdf = [](double x) { return std::exp(logistic_log_pdf(x, 0.5, 1.2)); };
  CHECK(quadrature::integrate(pdf, 0.5 - 60.0, 0.5 + 60.0, 600) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(logistic_log_pdf(0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("split normal log pdf") {
  // tau = 1 reduces to a Gaussian.
  const double sigma = 1.7;
  CHECK(split_normal_log_pdf(0.0, 0.0, sigma, 1.0) ==
        doctest::Approx(std::log(1.0 / (sigma * std::sqrt(2.0 * M_PI)))).epsilon(1e-13));
  const auto pdf = [](double x) { return std::exp(split_normal_log_pdf(x, 0.0, 1.3, 0.6)); };
  CHECK(quadrature::integrate(pdf, -60.0, 0.0, 400) +
            quadrature::integrate(pdf, 0.0, 60.0, 400) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(split_normal_log_pdf(0.0, 0.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(split_normal_log_pdf(0.0, 0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("multi_sgg_log_pdf reductions") {
  // d=1 reduces to the univariate density.
  MultiSgg p1;
  p1.m = Eigen::VectorXd::Constant(1, 0.4);
  p1.W = Eigen::MatrixXd::Constant(1, 1, 1.0);
  p1.sigma_l = Eigen::VectorXd::Constant(1, 0.8);
  p1.sigma_r = Eigen::VectorXd::Constant(1, 1.9);
  p1.c = 1.4;
  for (double x : {-2.0, 0.0, 0.4, 3.0}) {
    Eigen::VectorXd xv(1);
    xv[0] = x;
    CHECK(multi_sgg_log_pdf(xv, p1) ==
          doctest::Approx(sgg_log_pdf(x, {0.4, 0.8, 1.9, 1.4})).epsilon(1e-13));
  }

  // d=2 identity model at the mode: two standard normal peaks.
  MultiSgg p2;
  p2.m = Eigen::VectorXd::Zero(2);
  p2.W = Eigen::MatrixXd::Identity(2, 2);
  p2.sigma_l = Eigen::VectorXd::Ones(2);
  p2.sigma_r = Eigen::VectorXd::Ones(2);
  p2.c = 2.0;
  CHECK(multi_sgg_log_pdf(Eigen::VectorXd::Zero(2), p2) ==
        doctest::Approx(-std::log(2.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("multi_sgg row scaling shifts the density by ln lambda at the mode") {
  MultiSgg p;
  p.m = Eigen::VectorXd::Zero(2);
  p.W = Eigen::MatrixXd::Identity(2, 2);
  p.sigma_l = Eigen::VectorXd::Ones(2);
  p.sigma_r = Eigen::VectorXd::Ones(2);
  p.c = 2.0;
  const double base = multi_sgg_log_pdf(Eigen::VectorXd::Zero(2), p);
  for (double lambda : {0.5, 2.0, 7.0}) {
    MultiSgg q = p;
    q.W.row(0) *= lambda;
    CHECK(multi_sgg_log_pdf(Eigen::VectorXd::Zero(2), q) ==
          doctest::Approx(base + std::log(lambda)).epsilon(1e-12));
  }
}

TEST_CASE("multi_sgg change of variables keeps total mass one in 2-D") {
  // Quadrature of the d=2 density over a product grid; W is not orthogonal,
  // so this exercises the |det W| factor.
  MultiSgg p;
  p.m.resize(2);
  p.m << 0.2, -0.4;
  p.W.resize(2, 2);
  p.W << 1.2, 0.4, -0.3, 0.9;
  p.sigma_l.resize(2);
  p.sigma_l << 0.8, 1.1;
  p.sigma_r.resize(2);
  p.sigma_r << 1.4, 0.7;
  p.c = 1.5;

  const auto marginal = [&](double x0) {
    return quadrature::integrate(
        [&](double x1) {
          Eigen::VectorXd x(2);
          x << x0, x1;
          return std::exp(multi_sgg_log_pdf(x, p));
        },
        -14.0, 14.0, 60);
  };
  const double mass = quadrature::integrate(marginal, -14.0, 14.0, 60);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("singular W is rejected") {
  MultiSgg p;
  p.m = Eigen::VectorXd::Zero(2);
  p.W = Eigen::MatrixXd::Zero(2, 2);
  p.W(0, 0) = 1.0;  // rank 1
  p.sigma_l = Eigen::VectorXd::Ones(2);
  p.sigma_r = Eigen::VectorXd::Ones(2);
  p.c = 2.0;
  CHECK_THROWS_AS(multi_sgg_log_pdf(Eigen::VectorXd::Zero(2), p), SingularMatrixError);
}
