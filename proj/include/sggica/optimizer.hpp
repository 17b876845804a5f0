#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sggica/density.hpp"

namespace sggica {

struct FitConfig {
  int max_iter = 2000;
  // Convergence threshold on the infinity norm of the per-sample gradient,
  // i.e. grad(ln L-hat)/n over (m, W, ln c).
  double grad_tol = 1e-6;
  double step_init = 1.0;
  double backtrack_factor = 0.5;
  double armijo_coeff = 1e-4;
  int restarts = 5;
  std::uint64_t seed = 0;
  double c_min = 0.25;
  double c_max = 8.0;
  double c_init = 2.0;
  bool whiten = true;
  std::optional<double> fixed_c;  // when set, c is held there
  int threads = 0;                // restart parallelism; 0 = one per restart

  void validate() const;
};

// Centering/whitening pair; whitener * dewhitener == identity.
struct Preprocess {
  Eigen::VectorXd mean;
  Eigen::MatrixXd whitener;
  Eigen::MatrixXd dewhitener;
};

struct FitResult {
  MultiSgg model;  // original coordinates
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  int restart_index = 0;
  std::vector<double> trace;  // ln L-hat after each accepted step
};

// Z = (X - mean) whitener^T with unit sample covariance; symmetric (ZCA)
// whitening from the eigendecomposition of the covariance.  Throws when the
// covariance is effectively rank deficient.
std::pair<Eigen::MatrixXd, Preprocess> center_whiten(const Eigen::MatrixXd& X);

struct InitPoint {
  Eigen::VectorXd m0;
  Eigen::MatrixXd w0;
  double c0 = 2.0;
};

// m0 = componentwise median; W0 identity for restart 0, a seeded random
// rotation otherwise; c0 from the config.
InitPoint init_params(const Eigen::MatrixXd& Z, const FitConfig& config, int restart_index);

// Gradient ascent with Armijo backtracking on the profile log-likelihood,
// in the (m, W, ln c) parametrization; rows of W renormalized after each
// accepted step.  Returns the whitened-space result.
FitResult ascend(const Eigen::MatrixXd& Z, const InitPoint& init, const FitConfig& config,
                 std::uint64_t jitter_salt = 0);

// Whiten, run all restarts, keep the best, compose back to original
// coordinates and re-estimate the scales there.
FitResult fit_ica(const Eigen::MatrixXd& X, const FitConfig& config);

// s_i = W (x_i - m), one recovered component per column.
Eigen::MatrixXd separate(const Eigen::MatrixXd& X, const FitResult& fit);

}  // namespace sggica
