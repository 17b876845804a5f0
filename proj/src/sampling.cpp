#include "sggica/sampling.hpp"

#include <cmath>

#include "sggica/errors.hpp"
#include "sggica/rng.hpp"

namespace sggica {

Eigen::VectorXd sample_sgg(const UnivariateSgg& p, Eigen::Index n, std::uint64_t seed) {
  p.validate();
  if (n < 1) throw DomainError("sample_sgg: n must be >= 1");
  const double al = p.alpha_l();
  const double ar = p.alpha_r();
  const double p_left = al / (al + ar);
  const double inv_c = 1.0 / p.c;

  Rng rng(seed);
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool left = rng.uniform01() <= p_left;
    const double magnitude = (left ? al : ar) * std::pow(rng.gamma(inv_c), inv_c);
    out[i] = left ? p.m - magnitude : p.m + magnitude;
  }
  return out;
}

}  // namespace sggica
