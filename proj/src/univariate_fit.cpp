#include "sggica/univariate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "sggica/errors.hpp"
#include "sggica/estimation.hpp"

namespace sggica {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kCSearchMin = 0.3;
constexpr double kCSearchMax = 8.0;

// Golden-section maximization of a unimodal-ish objective on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// d=1 profile log-likelihood at fixed split point and shape; -inf when one
// side of the split is empty.
double profile_1d(const Eigen::MatrixXd& column, double m, double c) {
  Eigen::VectorXd mv(1);
  mv[0] = m;
  static const Eigen::MatrixXd kUnitW = Eigen::MatrixXd::Identity(1, 1);
  try {
    return profile_loglik(column, mv, kUnitW, c);
  } catch (const DegenerateSideError&) {
    return kNegInf;
  }
}

UnivariateFit fit_logistic(const Eigen::VectorXd& x) {
  const double n = static_cast<double>(x.size());
  const double mean = x.mean();
  const double var = (x.array() - mean).square().sum() / n;
  double mu = mean;
  double s = std::sqrt(3.0 * var) / M_PI;

  const auto loglik = [&x](double mu_, double s_) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) total += logistic_log_pdf(x[i], mu_, s_);
    return total;
  };

  const double spread = std::sqrt(var);
  for (int sweep = 0; sweep < 6; ++sweep) {
    mu = golden_max([&](double v) { return loglik(v, s); }, mu - 3.0 * spread,
                    mu + 3.0 * spread, 60);
    const double ln_s = golden_max([&](double v) { return loglik(mu, std::exp(v)); },
                                   std::log(s) - 3.0, std::log(s) + 3.0, 60);
    s = std::exp(ln_s);
  }

  UnivariateFit fit;
  fit.family.tag = FamilyTag::logistic;
  fit.family.params = LogisticParams{mu, s};
  fit.loglik = loglik(mu, s);
  return fit;
}

UnivariateFit fit_split(const Eigen::VectorXd& x, bool free_shape) {
  const Eigen::MatrixXd column = x;
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());

  // Best shape for a given split point; c fixed at 2 for the split normal.
  const auto best_c_at = [&](double m) -> std::pair<double, double> {
    if (!free_shape) return {2.0, profile_1d(column, m, 2.0)};
    double best_c = 2.0, best_ll = kNegInf;
    for (int k = 0; k < 16; ++k) {
      const double c = kCSearchMin * std::pow(kCSearchMax / kCSearchMin, k / 15.0);
      const double ll = profile_1d(column, m, c);
      if (ll > best_ll) {
        best_ll = ll;
        best_c = c;
      }
    }
    const double lo = std::max(kCSearchMin, best_c / 1.8);
    const double hi = std::min(kCSearchMax, best_c * 1.8);
    const double refined =
        golden_max([&](double c) { return profile_1d(column, m, c); }, lo, hi, 40);
    const double ll_refined = profile_1d(column, m, refined);
    return ll_refined >= best_ll ? std::make_pair(refined, ll_refined)
                                 : std::make_pair(best_c, best_ll);
  };

  double best_m = quantile(sorted, 0.5);
  double best_ll = kNegInf;
  for (int k = 0; k < 65; ++k) {
    const double m = quantile(sorted, 0.05 + 0.90 * k / 64.0);
    const double ll = best_c_at(m).second;
    if (ll > best_ll) {
      best_ll = ll;
      best_m = m;
    }
  }
  // Golden refinement of the split point around the best grid cell.
  const double span = (quantile(sorted, 0.95) - quantile(sorted, 0.05)) / 64.0;
  const double refined_m = golden_max([&](double m) { return best_c_at(m).second; },
                                      best_m - span, best_m + span, 40);
  if (best_c_at(refined_m).second > best_ll) best_m = refined_m;

  const auto [c_hat, ll] = best_c_at(best_m);
  if (ll == kNegInf) throw DomainError("fit_univariate: no feasible split point");

  Eigen::VectorXd mv(1);
  mv[0] = best_m;
  const SuffStats stats =
      sufficient_stats(column, mv, Eigen::MatrixXd::Identity(1, 1), c_hat);
  const ScaleEstimates est = scale_estimators(stats, c_hat);

  UnivariateFit fit;
  fit.loglik = ll;
  if (free_shape) {
    fit.family.tag = FamilyTag::sgg;
    fit.family.params = UnivariateSgg{best_m, est.sigma_l[0], est.sigma_r[0], c_hat};
  } else {
    fit.family.tag = FamilyTag::split_normal;
    fit.family.params = SplitNormalParams{best_m, est.sigma_l[0], est.tau[0]};
  }
  return fit;
}

}  // namespace

UnivariateFit fit_univariate(FamilyTag family, const Eigen::VectorXd& samples) {
  if (samples.size() < 10) throw InsufficientDataError("fit_univariate: need n >= 10");
  if (!samples.allFinite()) throw DomainError("fit_univariate: non-finite sample");
  if ((samples.array() == samples[0]).all()) {
    throw DomainError("fit_univariate: degenerate sample (all values equal)");
  }
  switch (family) {
    case FamilyTag::logistic:
      return fit_logistic(samples);
    case FamilyTag::split_normal:
      return fit_split(samples, false);
    case FamilyTag::sgg:
      return fit_split(samples, true);
  }
  throw DomainError("fit_univariate: unknown family");
}

}  // namespace sggica
