#pragma once

namespace sggica {

// ln Gamma(x) for x > 0.  Lanczos approximation, relative error below 1e-13
// over [1e-3, 1e3].  Throws DomainError for x <= 0 or non-finite x.
double ln_gamma(double x);

// Digamma psi(x) = Gamma'(x)/Gamma(x) for x > 0.  Upward recurrence into the
// asymptotic regime; absolute error below 1e-12 over [1e-3, 1e3].
double digamma(double x);

// beta(c) = Gamma(3/c)/Gamma(1/c), the variance normalizer of the
// generalized Gaussian family.  Strictly decreasing in c.
double beta_of_c(double c);

}  // namespace sggica
