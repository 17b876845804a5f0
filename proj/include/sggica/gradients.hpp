#pragma once

#include <functional>

#include <Eigen/Dense>

#include "sggica/estimation.hpp"

namespace sggica {

// Magnitudes are floored at this inside gradient sums only, bounding the
// |z|^{c-1} and ln|z| factors near the split point; the objective keeps the
// raw values.
inline constexpr double kGradMagnitudeFloor = 1e-12;

// Reject W in gradient evaluation when the LU pivot ratio exceeds this.
inline constexpr double kConditionLimit = 1e12;

struct GradientBundle {
  Eigen::VectorXd d_m;
  Eigen::MatrixXd d_w;
  double d_c = 0.0;
};

// Partial derivatives of ln l (the reduced objective).
Eigen::VectorXd grad_m_ln_l(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                            const Eigen::MatrixXd& W, double c);
Eigen::MatrixXd grad_w_ln_l(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                            const Eigen::MatrixXd& W, double c);
double dc_ln_l(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
               const Eigen::MatrixXd& W, double c);

// Overloads reusing a sufficient-statistics pass (stats must come from the
// same (X, m, W, c)).
Eigen::VectorXd grad_m_ln_l(const SuffStats& stats, const Eigen::MatrixXd& W, double c);
Eigen::MatrixXd grad_w_ln_l(const SuffStats& stats, const Eigen::MatrixXd& X,
                            const Eigen::VectorXd& m, const Eigen::MatrixXd& W, double c);
double dc_ln_l(const SuffStats& stats, double log_abs_det_w, double c);

// Gradient of the profile log-likelihood in (m, W, c):
//   d_m = -(n(c+1)/c) grad_m ln l,    d_w = -(n(c+1)/c) grad_w ln l,
//   d_c = (dn/c^2)[ln(ce/n) - 1 + c + psi(1/c)] + (n/c^2) ln l
//         - (n(c+1)/c) dc ln l.
GradientBundle grad_profile_loglik(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                                   const Eigen::MatrixXd& W, double c);

// Central finite differences of a scalar field over (m, W, c); the
// verification oracle for the analytic formulas above.
using ScalarField = std::function<double(const Eigen::VectorXd&, const Eigen::MatrixXd&, double)>;
GradientBundle finite_diff(const ScalarField& f, const Eigen::VectorXd& m,
                           const Eigen::MatrixXd& W, double c, double h);

}  // namespace sggica
