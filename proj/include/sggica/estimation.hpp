#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sggica/density.hpp"

namespace sggica {

// Magnitudes are floored here before taking powers, keeping the c-power
// sums finite in log space.
inline constexpr double kMagnitudeFloor = 1e-300;

// Per-component partition and power sums of the projected sample:
//   z_ij = row_j(W) . (x_i - m),
//   s1[j] = sum over z_ij <= 0 of |z_ij|^c   (left side),
//   s2[j] = sum over z_ij >  0 of |z_ij|^c   (right side),
//   g[j]  = s1[j]^{1/(c+1)} + s2[j]^{1/(c+1)}.
struct SuffStats {
  Eigen::VectorXd s1;
  Eigen::VectorXd s2;
  Eigen::VectorXd g;
  Eigen::Index n = 0;
  Eigen::MatrixXd z;  // n x d projections, kept for the gradient pass
  std::vector<std::vector<Eigen::Index>> left;   // I_j  (z_ij <= 0)
  std::vector<std::vector<Eigen::Index>> right;  // I_j' (z_ij >  0)
};

// Closed-form ML scale estimates at fixed (m, W, c):
//   sigma_l[j]^c = (c/n) beta^{c/2} s1[j]^{c/(c+1)} g[j],
//   tau[j] = (s2[j]/s1[j])^{1/(c+1)},  sigma_r[j] = sigma_l[j] tau[j].
struct ScaleEstimates {
  Eigen::VectorXd sigma_l;
  Eigen::VectorXd sigma_r;
  Eigen::VectorXd tau;
  Eigen::VectorXd alpha_l;
  Eigen::VectorXd alpha_r;
};

SuffStats sufficient_stats(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                           const Eigen::MatrixXd& W, double c);

// Throws DegenerateSideError when any component has an empty (or vanished)
// side; callers reposition m or reject the direction.
ScaleEstimates scale_estimators(const SuffStats& stats, double c);

// ln l = -(c/(c+1)) ln|det W| + sum_j ln g_j.
double reduced_objective_l(const SuffStats& stats, double log_abs_det_w, double c);
double reduced_objective_l(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                           const Eigen::MatrixXd& W, double c);

// Profile log-likelihood with the scales maximized out:
//   ln L-hat = (d n / c) ln(kappa n / (c e)) - (n (c+1)/c) ln l,
// kappa = (c / Gamma(1/c))^c.  Requires both sides of every component
// nonempty (DegenerateSideError otherwise).
double profile_loglik(const SuffStats& stats, double log_abs_det_w, Eigen::Index d, double c);
double profile_loglik(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                      const Eigen::MatrixXd& W, double c);

// Full log-likelihood sum_i ln SGG_d(x_i; p).
double full_loglik(const Eigen::MatrixXd& X, const MultiSgg& p);

}  // namespace sggica
