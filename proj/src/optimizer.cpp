#include "sggica/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "sggica/errors.hpp"
#include "sggica/estimation.hpp"
#include "sggica/gradients.hpp"
#include "sggica/rng.hpp"

namespace sggica {

namespace {

constexpr double kMinStep = 1e-18;

double column_median(Eigen::VectorXd v) {
  std::sort(v.begin(), v.end());
  const Eigen::Index n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double column_iqr(Eigen::VectorXd v) {
  std::sort(v.begin(), v.end());
  const auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<Eigen::Index>(std::floor(pos));
    const auto hi = std::min<Eigen::Index>(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return quantile(0.75) - quantile(0.25);
}

// Profile objective on fixed data; infeasible points report nullopt.
class ProfileObjective {
 public:
  ProfileObjective(const Eigen::MatrixXd& Z, const FitConfig& config)
      : z_(Z), config_(config) {}

  std::optional<double> eval(const Eigen::VectorXd& m, const Eigen::MatrixXd& W,
                             double c) const {
    if (!(c >= config_.c_min && c <= config_.c_max)) return std::nullopt;
    try {
      const SuffStats stats = sufficient_stats(z_, m, W, c);
      return profile_loglik(stats, log_abs_det(W), z_.cols(), c);
    } catch (const DegenerateSideError&) {
      return std::nullopt;
    } catch (const SingularMatrixError&) {
      return std::nullopt;
    }
  }

 private:
  const Eigen::MatrixXd& z_;
  const FitConfig& config_;
};

bool feasible_start(const Eigen::MatrixXd& Z, const Eigen::VectorXd& m,
                    const Eigen::MatrixXd& W, double c) {
  try {
    const SuffStats stats = sufficient_stats(Z, m, W, c);
    for (Eigen::Index j = 0; j < Z.cols(); ++j) {
      if (!(stats.s1[j] > 0.0) || !(stats.s2[j] > 0.0)) return false;
    }
    log_abs_det(W);
    return true;
  } catch (const SingularMatrixError&) {
    return false;
  }
}

}  // namespace

void FitConfig::validate() const {
  if (max_iter < 1) throw DomainError("FitConfig: max_iter must be >= 1");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw DomainError("FitConfig: backtrack_factor must lie in (0,1)");
  }
  if (!(c_min > 0.0) || !(c_max > c_min)) throw DomainError("FitConfig: bad c bounds");
  if (restarts < 1) throw DomainError("FitConfig: restarts must be >= 1");
  if (!(grad_tol > 0.0) || !(step_init > 0.0) || !(armijo_coeff > 0.0)) {
    throw DomainError("FitConfig: tolerances and steps must be positive");
  }
  const double c0 = fixed_c.value_or(c_init);
  if (!(c0 >= c_min && c0 <= c_max)) throw DomainError("FitConfig: initial c outside bounds");
}

std::pair<Eigen::MatrixXd, Preprocess> center_whiten(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n <= d) throw InsufficientDataError("center_whiten: need more samples than channels");

  Preprocess pre;
  pre.mean = X.colwise().mean();
  const Eigen::MatrixXd centered = X.rowwise() - pre.mean.transpose();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const Eigen::VectorXd evals = es.eigenvalues();
  if (!(evals.minCoeff() > 1e-10 * evals.maxCoeff())) {
    throw DomainError(
        "center_whiten: covariance effectively rank deficient; reduce the dimensionality "
        "before fitting");
  }
  const Eigen::MatrixXd V = es.eigenvectors();
  pre.whitener = V * evals.cwiseSqrt().cwiseInverse().asDiagonal() * V.transpose();
  pre.dewhitener = V * evals.cwiseSqrt().asDiagonal() * V.transpose();
  return {centered * pre.whitener.transpose(), pre};
}

InitPoint init_params(const Eigen::MatrixXd& Z, const FitConfig& config, int restart_index) {
  const Eigen::Index d = Z.cols();
  InitPoint init;
  init.m0.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) init.m0[j] = column_median(Z.col(j));
  init.c0 = config.fixed_c.value_or(config.c_init);

  if (restart_index == 0) {
    init.w0 = Eigen::MatrixXd::Identity(d, d);
    return init;
  }
  // QR of a seeded Gaussian matrix, signs fixed so diag(R) > 0.
  Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(restart_index)));
  Eigen::MatrixXd G(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) G(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }
  init.w0 = Q;
  return init;
}

FitResult ascend(const Eigen::MatrixXd& Z, const InitPoint& init, const FitConfig& config,
                 std::uint64_t jitter_salt) {
  config.validate();
  const Eigen::Index n = Z.rows();
  const Eigen::Index d = Z.cols();
  const double dn = static_cast<double>(n);
  const bool c_free = !config.fixed_c.has_value();

  Eigen::VectorXd m = init.m0;
  Eigen::MatrixXd W = init.w0;
  double c = init.c0;

  if (!feasible_start(Z, m, W, c)) {
    Eigen::VectorXd iqr(d);
    for (Eigen::Index j = 0; j < d; ++j) iqr[j] = column_iqr(Z.col(j));
    Rng rng(mix_seed(config.seed, 0x6A177EC9ULL + jitter_salt));
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      for (Eigen::Index j = 0; j < d; ++j) {
        m[j] = init.m0[j] + 0.01 * iqr[j] * (2.0 * rng.uniform01() - 1.0);
      }
      ok = feasible_start(Z, m, W, c);
    }
    if (!ok) throw FitError("ascend: no feasible initial point after 100 jitters");
  }

  const ProfileObjective objective(Z, config);
  double ll = objective.eval(m, W, c).value();

  FitResult result;
  result.trace.reserve(static_cast<std::size_t>(config.max_iter) + 1);
  result.trace.push_back(ll);

  int iter = 0;
  bool converged = false;
  for (; iter < config.max_iter; ++iter) {
    GradientBundle grad = grad_profile_loglik(Z, m, W, c);
    const double d_lnc = c_free ? c * grad.d_c : 0.0;

    // Per-sample gradient in the (m, W, ln c) parametrization.
    const Eigen::VectorXd gm = grad.d_m / dn;
    const Eigen::MatrixXd gw = grad.d_w / dn;
    const double glnc = d_lnc / dn;
    const double grad_norm =
        std::max({gm.lpNorm<Eigen::Infinity>(), gw.lpNorm<Eigen::Infinity>(), std::abs(glnc)});
    if (grad_norm < config.grad_tol) {
      converged = true;
      break;
    }

    const double slope = dn * (gm.squaredNorm() + gw.squaredNorm() + glnc * glnc);
    double step = config.step_init;
    bool accepted = false;
    while (step > kMinStep) {
      const Eigen::VectorXd m_trial = m + step * gm;
      Eigen::MatrixXd w_trial = W + step * gw;
      const double c_trial = c_free ? c * std::exp(step * glnc) : c;
      const auto ll_trial = objective.eval(m_trial, w_trial, c_trial);
      if (ll_trial && *ll_trial >= ll + config.armijo_coeff * step * slope) {
        // Rows live on a flat direction of ln l; renormalizing keeps W away
        // from runaway scales without moving the objective.
        for (Eigen::Index p = 0; p < d; ++p) {
          const double norm = w_trial.row(p).norm();
          if (norm > 0.0) w_trial.row(p) /= norm;
        }
        const auto ll_next = objective.eval(m_trial, w_trial, c_trial);
        if (ll_next) {
          m = m_trial;
          W = w_trial;
          c = c_trial;
          ll = *ll_next;
          accepted = true;
          break;
        }
      }
      step *= config.backtrack_factor;
    }
    if (!accepted) break;  // line search exhausted; gradient norm still above tol
    result.trace.push_back(ll);
  }

  const SuffStats stats = sufficient_stats(Z, m, W, c);
  const ScaleEstimates est = scale_estimators(stats, c);
  result.model = MultiSgg{m, W, est.sigma_l, est.sigma_r, c};
  result.loglik = ll;
  result.iterations = iter;
  result.converged = converged;
  return result;
}

FitResult fit_ica(const Eigen::MatrixXd& X, const FitConfig& config) {
  config.validate();
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n <= 10 * d) {
    throw InsufficientDataError("fit_ica: need more than 10 samples per channel");
  }

  Eigen::MatrixXd Z;
  Preprocess pre;
  if (config.whiten) {
    std::tie(Z, pre) = center_whiten(X);
  } else {
    Z = X;
    pre.mean = Eigen::VectorXd::Zero(d);
    pre.whitener = Eigen::MatrixXd::Identity(d, d);
    pre.dewhitener = Eigen::MatrixXd::Identity(d, d);
  }

  const int restarts = config.restarts;
  std::vector<std::optional<FitResult>> results(restarts);
  std::vector<std::string> failures(restarts);

  const auto run_restart = [&](int r) {
    try {
      const InitPoint init = init_params(Z, config, r);
      FitResult res = ascend(Z, init, config, static_cast<std::uint64_t>(r));
      res.restart_index = r;
      results[r] = std::move(res);
    } catch (const std::exception& e) {
      failures[r] = e.what();
    }
  };

  int threads = config.threads > 0 ? config.threads : restarts;
  threads = std::min(threads, restarts);
  if (threads <= 1 || restarts == 1) {
    for (int r = 0; r < restarts; ++r) run_restart(r);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) run_restart(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  int best = -1;
  for (int r = 0; r < restarts; ++r) {
    if (!results[r]) continue;
    if (best < 0 || results[r]->loglik > results[best]->loglik) best = r;
  }
  if (best < 0) {
    std::string detail;
    for (int r = 0; r < restarts; ++r) {
      detail += "\n  restart " + std::to_string(r) + ": " + failures[r];
    }
    throw FitError("fit_ica: every restart failed" + detail);
  }

  FitResult fit = std::move(*results[best]);

  // Compose back: projections W_orig (x - m_orig) equal the whitened-space
  // ones, so the scales transfer; re-estimate them on X for exactness.
  const Eigen::MatrixXd w_orig = fit.model.W * pre.whitener;
  const Eigen::VectorXd m_orig = pre.mean + pre.dewhitener * fit.model.m;
  const double c = fit.model.c;
  const SuffStats stats = sufficient_stats(X, m_orig, w_orig, c);
  const ScaleEstimates est = scale_estimators(stats, c);
  const double loglik = profile_loglik(stats, log_abs_det(w_orig), d, c);

  // The whitened trace differs from the original-coordinate value by the
  // constant n ln|det whitener|; shift so the trace ends at loglik.
  const double shift = loglik - fit.loglik;
  for (double& v : fit.trace) v += shift;

  fit.model = MultiSgg{m_orig, w_orig, est.sigma_l, est.sigma_r, c};
  fit.loglik = loglik;
  return fit;
}

Eigen::MatrixXd separate(const Eigen::MatrixXd& X, const FitResult& fit) {
  if (X.cols() != fit.model.dim()) throw DomainError("separate: dimension mismatch");
  return (X.rowwise() - fit.model.m.transpose()) * fit.model.W.transpose();
}

}  // namespace sggica
