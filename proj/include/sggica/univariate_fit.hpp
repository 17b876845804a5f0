#pragma once

#include <variant>

#include <Eigen/Dense>

#include "sggica/density.hpp"

namespace sggica {

enum class FamilyTag { logistic, split_normal, sgg };

struct LogisticParams {
  double mu = 0.0;
  double s = 1.0;
};

struct SplitNormalParams {
  double m = 0.0;
  double sigma = 1.0;
  double tau = 1.0;
};

struct UnivariateFamily {
  FamilyTag tag = FamilyTag::sgg;
  std::variant<LogisticParams, SplitNormalParams, UnivariateSgg> params;
};

struct UnivariateFit {
  UnivariateFamily family;
  double loglik = 0.0;
};

// Maximum-likelihood fit of one comparison family.  The split families use
// the closed-form scale estimators with the split point searched over
// sample quantiles (and, for sgg, the shape by bounded 1-D search); the
// logistic uses coordinate descent from moment estimates.
UnivariateFit fit_univariate(FamilyTag family, const Eigen::VectorXd& samples);

}  // namespace sggica
