#include "sggica/estimation.hpp"

#include <cmath>
#include <string>

#include "sggica/errors.hpp"
#include "sggica/special_functions.hpp"

namespace sggica {

namespace {

void require_shape(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                   const Eigen::MatrixXd& W) {
  const Eigen::Index d = X.cols();
  if (m.size() != d || W.rows() != d || W.cols() != d) {
    throw DomainError("sufficient_stats: inconsistent dimensions");
  }
}

[[noreturn]] void throw_degenerate(Eigen::Index j, const char* side) {
  throw DegenerateSideError("component " + std::to_string(j) + ": " + side +
                            " side carries no mass");
}

}  // namespace

SuffStats sufficient_stats(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                           const Eigen::MatrixXd& W, double c) {
  require_shape(X, m, W);
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("sufficient_stats: c must be > 0");
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n < 2) throw InsufficientDataError("sufficient_stats: need at least 2 samples");

  SuffStats stats;
  stats.n = n;
  stats.z.noalias() = (X.rowwise() - m.transpose()) * W.transpose();
  stats.s1 = Eigen::VectorXd::Zero(d);
  stats.s2 = Eigen::VectorXd::Zero(d);
  stats.g = Eigen::VectorXd::Zero(d);
  stats.left.resize(d);
  stats.right.resize(d);

  const double inv_cp1 = 1.0 / (c + 1.0);
  for (Eigen::Index j = 0; j < d; ++j) {
    auto& left = stats.left[j];
    auto& right = stats.right[j];
    left.reserve(n);
    right.reserve(n);
    double s1 = 0.0, s2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double zij = stats.z(i, j);
      const double mag = std::max(std::abs(zij), kMagnitudeFloor);
      if (zij <= 0.0) {
        s1 += std::pow(mag, c);
        left.push_back(i);
      } else {
        s2 += std::pow(mag, c);
        right.push_back(i);
      }
    }
    stats.s1[j] = s1;
    stats.s2[j] = s2;
    stats.g[j] = std::pow(s1, inv_cp1) + std::pow(s2, inv_cp1);
  }
  return stats;
}

ScaleEstimates scale_estimators(const SuffStats& stats, double c) {
  const Eigen::Index d = stats.s1.size();
  const double n = static_cast<double>(stats.n);
  const double beta = beta_of_c(c);
  ScaleEstimates est;
  est.sigma_l.resize(d);
  est.sigma_r.resize(d);
  est.tau.resize(d);
  est.alpha_l.resize(d);
  est.alpha_r.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(stats.s1[j] > 0.0)) throw_degenerate(j, "left");
    if (!(stats.s2[j] > 0.0)) throw_degenerate(j, "right");
    const double sigma_l_c =
        (c / n) * std::pow(beta, 0.5 * c) * std::pow(stats.s1[j], c / (c + 1.0)) * stats.g[j];
    est.sigma_l[j] = std::pow(sigma_l_c, 1.0 / c);
    est.tau[j] = std::pow(stats.s2[j] / stats.s1[j], 1.0 / (c + 1.0));
    est.sigma_r[j] = est.sigma_l[j] * est.tau[j];
    est.alpha_l[j] = alpha_from_sigma(est.sigma_l[j], c);
    est.alpha_r[j] = alpha_from_sigma(est.sigma_r[j], c);
  }
  return est;
}

double reduced_objective_l(const SuffStats& stats, double log_abs_det_w, double c) {
  double sum_log_g = 0.0;
  for (Eigen::Index j = 0; j < stats.g.size(); ++j) {
    if (!(stats.g[j] > 0.0)) {
      throw DegenerateSideError("component " + std::to_string(j) + ": g vanished");
    }
    sum_log_g += std::log(stats.g[j]);
  }
  return -(c / (c + 1.0)) * log_abs_det_w + sum_log_g;
}

double reduced_objective_l(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                           const Eigen::MatrixXd& W, double c) {
  return reduced_objective_l(sufficient_stats(X, m, W, c), log_abs_det(W), c);
}

double profile_loglik(const SuffStats& stats, double log_abs_det_w, Eigen::Index d,
                      double c) {
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(stats.s1[j] > 0.0)) throw_degenerate(j, "left");
    if (!(stats.s2[j] > 0.0)) throw_degenerate(j, "right");
  }
  const double n = static_cast<double>(stats.n);
  const double ln_l = reduced_objective_l(stats, log_abs_det_w, c);
  // ln(kappa n / (c e)) with kappa = (c / Gamma(1/c))^c, all in logs.
  const double log_kappa_term =
      c * (std::log(c) - ln_gamma(1.0 / c)) + std::log(n) - std::log(c) - 1.0;
  return (static_cast<double>(d) * n / c) * log_kappa_term - (n * (c + 1.0) / c) * ln_l;
}

double profile_loglik(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                      const Eigen::MatrixXd& W, double c) {
  return profile_loglik(sufficient_stats(X, m, W, c), log_abs_det(W), X.cols(), c);
}

double full_loglik(const Eigen::MatrixXd& X, const MultiSgg& p) {
  if (X.cols() != p.dim()) throw DomainError("full_loglik: dimension mismatch");
  p.validate();
  const Eigen::Index n = X.rows();
  const Eigen::Index d = p.dim();
  const double lad = log_abs_det(p.W);
  const Eigen::MatrixXd Z = (X.rowwise() - p.m.transpose()) * p.W.transpose();

  double log_norm = 0.0;
  Eigen::VectorXd al(d), ar(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    al[j] = alpha_from_sigma(p.sigma_l[j], p.c);
    ar[j] = alpha_from_sigma(p.sigma_r[j], p.c);
    log_norm += std::log(p.c) - std::log(al[j] + ar[j]) - ln_gamma(1.0 / p.c);
  }

  double total = static_cast<double>(n) * (lad + log_norm);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double zij = Z(i, j);
      total -= (zij <= 0.0) ? std::pow(-zij / al[j], p.c) : std::pow(zij / ar[j], p.c);
    }
  }
  return total;
}

}  // namespace sggica
