#include "sggica/special_functions.hpp"

#include <cmath>
#include <string>

#include "sggica/errors.hpp"

namespace sggica {

namespace {

// Lanczos coefficients (Godfrey), g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,    57.156235665862923517,
    -59.597960355475491248,    14.136097974741747174,
    -0.49191381609762019978,   3.3994649984811888699e-5,
    4.6523628927048575665e-5,  -9.8374475304879564677e-5,
    1.5808870322491248884e-4,  -2.1026444172410488319e-4,
    2.1743961811521264320e-4,  -1.6431810653676389022e-4,
    8.4418223983852743293e-5,  -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
};
constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // ln(2*pi)/2

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

}  // namespace

double ln_gamma(double x) {
  require_positive(x, "ln_gamma");
  double series = kLanczos[0];
  for (int k = 1; k < 15; ++k) series += kLanczos[k] / (x + static_cast<double>(k - 1));
  const double t = x + kLanczosG - 0.5;
  return kHalfLogTwoPi + std::log(series) + (x - 0.5) * std::log(t) - t;
}

double digamma(double x) {
  require_positive(x, "digamma");
  // psi(x) = psi(x+1) - 1/x until the asymptotic expansion applies.
  double shift = 0.0;
  while (x < 6.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum_k B_{2k} / (2k x^{2k}), truncated after x^-14;
  // truncation error below 2e-13 at x = 6.
  const double inv = 1.0 / x;
  const double u = inv * inv;
  const double tail =
      u * (1.0 / 12.0 -
           u * (1.0 / 120.0 -
                u * (1.0 / 252.0 -
                     u * (1.0 / 240.0 -
                          u * (1.0 / 132.0 - u * (691.0 / 32760.0 - u * (1.0 / 12.0)))))));
  return shift + std::log(x) - 0.5 * inv - tail;
}

double beta_of_c(double c) {
  require_positive(c, "beta_of_c");
  return std::exp(ln_gamma(3.0 / c) - ln_gamma(1.0 / c));
}

}  // namespace sggica
