#include "sggica/density.hpp"

#include <cmath>
#include <string>

#include "sggica/errors.hpp"
#include "sggica/special_functions.hpp"

namespace sggica {

namespace {

void require_positive_finite(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite, got " +
                      std::to_string(v));
  }
}

}  // namespace

double alpha_from_sigma(double sigma, double c) {
  require_positive_finite(sigma, "sigma");
  require_positive_finite(c, "c");
  return sigma / std::sqrt(beta_of_c(c));
}

double UnivariateSgg::alpha_l() const { return alpha_from_sigma(sigma_l, c); }
double UnivariateSgg::alpha_r() const { return alpha_from_sigma(sigma_r, c); }

void UnivariateSgg::validate() const {
  if (!std::isfinite(m)) throw DomainError("UnivariateSgg: m must be finite");
  require_positive_finite(sigma_l, "sigma_l");
  require_positive_finite(sigma_r, "sigma_r");
  require_positive_finite(c, "c");
}

void MultiSgg::validate() const {
  const Eigen::Index d = m.size();
  if (W.rows() != d || W.cols() != d || sigma_l.size() != d || sigma_r.size() != d) {
    throw DomainError("MultiSgg: inconsistent dimensions");
  }
  if (!m.allFinite() || !W.allFinite()) throw DomainError("MultiSgg: non-finite parameter");
  for (Eigen::Index j = 0; j < d; ++j) {
    require_positive_finite(sigma_l[j], "sigma_l");
    require_positive_finite(sigma_r[j], "sigma_r");
  }
  require_positive_finite(c, "c");
  log_abs_det(W);  // throws when singular
}

double log_abs_det(const Eigen::MatrixXd& W) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(W);
  const auto diag = lu.matrixLU().diagonal();
  double lad = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double a = std::abs(diag[i]);
    if (a == 0.0) throw SingularMatrixError("singular unmixing matrix");
    lad += std::log(a);
  }
  if (lad < std::log(kDetThreshold)) {
    throw SingularMatrixError("|det W| below threshold 1e-12");
  }
  return lad;
}

double sgg_log_pdf(double x, const UnivariateSgg& p) {
  p.validate();
  const double al = p.alpha_l();
  const double ar = p.alpha_r();
  const double log_norm = std::log(p.c) - std::log(al + ar) - ln_gamma(1.0 / p.c);
  const double u = x - p.m;
  if (u <= 0.0) return log_norm - std::pow(-u / al, p.c);
  return log_norm - std::pow(u / ar, p.c);
}

double multi_sgg_log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x, const MultiSgg& p) {
  if (x.size() != p.dim()) throw DomainError("multi_sgg_log_pdf: dimension mismatch");
  p.validate();
  double total = log_abs_det(p.W);
  const Eigen::VectorXd z = p.W * (x - p.m);
  for (Eigen::Index j = 0; j < p.dim(); ++j) {
    total += sgg_log_pdf(z[j], UnivariateSgg{0.0, p.sigma_l[j], p.sigma_r[j], p.c});
  }
  return total;
}

double logistic_log_pdf(double x, double mu, double s) {
  require_positive_finite(s, "s");
  // ln sech(t) = ln 2 - |t| - log1p(exp(-2|t|)), stable for large |t|.
  const double t = std::abs(x - mu) / (2.0 * s);
  const double log_sech = std::log(2.0) - t - std::log1p(std::exp(-2.0 * t));
  return -std::log(4.0 * s) + 2.0 * log_sech;
}

double split_normal_log_pdf(double x, double m, double sigma, double tau) {
  require_positive_finite(sigma, "sigma");
  require_positive_finite(tau, "tau");
  const double log_norm =
      0.5 * std::log(2.0 / M_PI) - std::log(sigma) - std::log1p(tau);
  const double u = x - m;
  if (u <= 0.0) return log_norm - 0.5 * u * u / (sigma * sigma);
  return log_norm - 0.5 * u * u / (tau * tau * sigma * sigma);
}

}  // namespace sggica
