#pragma once

#include <Eigen/Dense>

namespace sggica {

// Reject W as numerically singular below this determinant magnitude.
inline constexpr double kDetThreshold = 1e-12;

// One-dimensional split generalized Gaussian: mode m, left/right standard
// deviations sigma_l / sigma_r, shape exponent c (c=2 split normal, c=1
// split Laplace; sigma_l = sigma_r symmetric).
struct UnivariateSgg {
  double m = 0.0;
  double sigma_l = 1.0;
  double sigma_r = 1.0;
  double c = 2.0;

  double alpha_l() const;
  double alpha_r() const;
  void validate() const;  // throws DomainError
};

// Product model: rows of W are projection directions, component j sees
// z_j = row_j(W) . (x - m) with scales sigma_l[j], sigma_r[j] and shared c.
struct MultiSgg {
  Eigen::VectorXd m;
  Eigen::MatrixXd W;
  Eigen::VectorXd sigma_l;
  Eigen::VectorXd sigma_r;
  double c = 2.0;

  Eigen::Index dim() const { return m.size(); }
  void validate() const;  // throws DomainError / SingularMatrixError
};

// alpha = sigma * sqrt(Gamma(1/c)/Gamma(3/c)) = sigma / sqrt(beta(c)).
double alpha_from_sigma(double sigma, double c);

// Piecewise log density; x <= m takes the left branch (the boundary goes
// left, matching the estimator partition).
double sgg_log_pdf(double x, const UnivariateSgg& p);

// ln|det W| + sum_j sgg_log_pdf(z_j; 0, sigma_l[j], sigma_r[j], c).
double multi_sgg_log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x, const MultiSgg& p);

// ln of f(x; mu, s) = 1/(4s) sech^2((x - mu)/(2s)).
double logistic_log_pdf(double x, double mu, double s);

// Two-piece normal: left variance sigma^2, right variance tau^2 sigma^2,
// normalizing constant sqrt(2/pi) / (sigma (1 + tau)).
double split_normal_log_pdf(double x, double m, double sigma, double tau);

// ln|det W| through LU; throws SingularMatrixError below kDetThreshold.
double log_abs_det(const Eigen::MatrixXd& W);

}  // namespace sggica
