#include "sggica/gradients.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sggica/errors.hpp"
#include "sggica/special_functions.hpp"

namespace sggica {

namespace {

void require_sides(const SuffStats& stats) {
  for (Eigen::Index j = 0; j < stats.s1.size(); ++j) {
    if (!(stats.s1[j] > 0.0) || !(stats.s2[j] > 0.0)) {
      throw DegenerateSideError("component " + std::to_string(j) +
                                ": one-sided sample, gradient undefined");
    }
  }
}

// (W^{-1})^T via partial-pivot LU, rejected when the pivot ratio indicates
// effective singularity.
Eigen::MatrixXd inverse_transpose(const Eigen::MatrixXd& W) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(W);
  const auto diag = lu.matrixLU().diagonal();
  double max_pivot = 0.0, min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double a = std::abs(diag[i]);
    max_pivot = std::max(max_pivot, a);
    min_pivot = std::min(min_pivot, a);
  }
  if (!(min_pivot > 0.0) || max_pivot / min_pivot > kConditionLimit) {
    throw SingularMatrixError("unmixing matrix effectively singular in gradient");
  }
  return lu.inverse().transpose();
}

double floored_mag(double z) { return std::max(std::abs(z), kGradMagnitudeFloor); }

}  // namespace

Eigen::VectorXd grad_m_ln_l(const SuffStats& stats, const Eigen::MatrixXd& W, double c) {
  require_sides(stats);
  const Eigen::Index d = W.rows();
  const double exponent = -c / (c + 1.0);
  // d ln l / d m_k = sum_j q_j W_jk  with
  // q_j = (c/(c+1)) (1/g_j) [ s1^{-c/(c+1)} sum_{I_j} |z|^{c-1}
  //                         - s2^{-c/(c+1)} sum_{I_j'} |z|^{c-1} ].
  Eigen::VectorXd q(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double left_sum = 0.0, right_sum = 0.0;
    for (Eigen::Index i : stats.left[j]) left_sum += std::pow(floored_mag(stats.z(i, j)), c - 1.0);
    for (Eigen::Index i : stats.right[j]) right_sum += std::pow(floored_mag(stats.z(i, j)), c - 1.0);
    q[j] = (c / (c + 1.0)) / stats.g[j] *
           (std::pow(stats.s1[j], exponent) * left_sum -
            std::pow(stats.s2[j], exponent) * right_sum);
  }
  return W.transpose() * q;
}

Eigen::MatrixXd grad_w_ln_l(const SuffStats& stats, const Eigen::MatrixXd& X,
                            const Eigen::VectorXd& m, const Eigen::MatrixXd& W, double c) {
  require_sides(stats);
  const Eigen::Index d = W.rows();
  const Eigen::Index n = X.rows();
  const double ratio = c / (c + 1.0);
  const double exponent = -ratio;

  Eigen::MatrixXd grad = -ratio * inverse_transpose(W);
  const Eigen::MatrixXd centered = X.rowwise() - m.transpose();
  // Row p adds r^T (X - m) with per-sample weights
  //   r_i = -+ (c/(c+1)) (1/g_p) s_side^{-c/(c+1)} |z_ip|^{c-1}
  // (minus on the left side, plus on the right).
  Eigen::VectorXd r(n);
  for (Eigen::Index p = 0; p < d; ++p) {
    r.setZero();
    const double left_coef = -ratio / stats.g[p] * std::pow(stats.s1[p], exponent);
    const double right_coef = ratio / stats.g[p] * std::pow(stats.s2[p], exponent);
    for (Eigen::Index i : stats.left[p]) {
      r[i] = left_coef * std::pow(floored_mag(stats.z(i, p)), c - 1.0);
    }
    for (Eigen::Index i : stats.right[p]) {
      r[i] = right_coef * std::pow(floored_mag(stats.z(i, p)), c - 1.0);
    }
    grad.row(p) += r.transpose() * centered;
  }
  return grad;
}

double dc_ln_l(const SuffStats& stats, double log_abs_det_w, double c) {
  require_sides(stats);
  const Eigen::Index d = stats.s1.size();
  const double cp1 = c + 1.0;
  const double exponent = -c / cp1;

  double total = -log_abs_det_w / (cp1 * cp1);
  for (Eigen::Index j = 0; j < d; ++j) {
    double ds1 = 0.0, ds2 = 0.0;  // d s / d c = sum |z|^c ln|z|
    for (Eigen::Index i : stats.left[j]) {
      const double mag = floored_mag(stats.z(i, j));
      ds1 += std::pow(mag, c) * std::log(mag);
    }
    for (Eigen::Index i : stats.right[j]) {
      const double mag = floored_mag(stats.z(i, j));
      ds2 += std::pow(mag, c) * std::log(mag);
    }
    const double s1 = stats.s1[j], s2 = stats.s2[j];
    total += (1.0 / stats.g[j]) *
             ((std::pow(s1, exponent) * ds1 / cp1 -
               std::pow(s1, 1.0 / cp1) * std::log(s1) / (cp1 * cp1)) +
              (std::pow(s2, exponent) * ds2 / cp1 -
               std::pow(s2, 1.0 / cp1) * std::log(s2) / (cp1 * cp1)));
  }
  return total;
}

Eigen::VectorXd grad_m_ln_l(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                            const Eigen::MatrixXd& W, double c) {
  return grad_m_ln_l(sufficient_stats(X, m, W, c), W, c);
}

Eigen::MatrixXd grad_w_ln_l(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                            const Eigen::MatrixXd& W, double c) {
  return grad_w_ln_l(sufficient_stats(X, m, W, c), X, m, W, c);
}

double dc_ln_l(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
               const Eigen::MatrixXd& W, double c) {
  return dc_ln_l(sufficient_stats(X, m, W, c), log_abs_det(W), c);
}

GradientBundle grad_profile_loglik(const Eigen::MatrixXd& X, const Eigen::VectorXd& m,
                                   const Eigen::MatrixXd& W, double c) {
  const SuffStats stats = sufficient_stats(X, m, W, c);
  const double lad = log_abs_det(W);
  const double n = static_cast<double>(stats.n);
  const double d = static_cast<double>(X.cols());
  const double ln_l = reduced_objective_l(stats, lad, c);
  const double scale = -n * (c + 1.0) / c;

  GradientBundle out;
  out.d_m = scale * grad_m_ln_l(stats, W, c);
  out.d_w = scale * grad_w_ln_l(stats, X, m, W, c);
  const double bracket = std::log(c) + 1.0 - std::log(n) - 1.0 + c + digamma(1.0 / c);
  out.d_c = (d * n / (c * c)) * bracket + (n / (c * c)) * ln_l + scale * dc_ln_l(stats, lad, c);
  return out;
}

GradientBundle finite_diff(const ScalarField& f, const Eigen::VectorXd& m,
                           const Eigen::MatrixXd& W, double c, double h) {
  if (!(h > 0.0)) throw DomainError("finite_diff: h must be > 0");
  GradientBundle out;
  out.d_m.resize(m.size());
  out.d_w.resize(W.rows(), W.cols());

  Eigen::VectorXd mp = m, mm = m;
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    mp[k] += h;
    mm[k] -= h;
    out.d_m[k] = (f(mp, W, c) - f(mm, W, c)) / (2.0 * h);
    mp[k] = m[k];
    mm[k] = m[k];
  }
  Eigen::MatrixXd Wp = W, Wm = W;
  for (Eigen::Index p = 0; p < W.rows(); ++p) {
    for (Eigen::Index k = 0; k < W.cols(); ++k) {
      Wp(p, k) += h;
      Wm(p, k) -= h;
      out.d_w(p, k) = (f(m, Wp, c) - f(m, Wm, c)) / (2.0 * h);
      Wp(p, k) = W(p, k);
      Wm(p, k) = W(p, k);
    }
  }
  const double hc = std::min(h, 0.5 * c);  // keep c - h positive
  out.d_c = (f(m, W, c + hc) - f(m, W, c - hc)) / (2.0 * hc);
  return out;
}

}  // namespace sggica
