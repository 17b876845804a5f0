#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "sggica/density.hpp"

namespace sggica {

// n i.i.d. draws.  Side picked with probability alpha_l/(alpha_l+alpha_r),
// magnitude alpha_side * G^{1/c} with G ~ Gamma(1/c, 1).  Deterministic
// given the seed.
Eigen::VectorXd sample_sgg(const UnivariateSgg& p, Eigen::Index n, std::uint64_t seed);

}  // namespace sggica
