#pragma once

#include <vector>

#include <Eigen/Dense>

namespace sggica {

// Uncentered correlation sum(a b) / sqrt(sum(a^2) sum(b^2)), in [-1, 1].
double tucker_congruence(const Eigen::Ref<const Eigen::VectorXd>& a,
                         const Eigen::Ref<const Eigen::VectorXd>& b);

// Pairing of estimated components to true ones; congruences are reported
// after sign correction, so they land in [0, 1].
struct MatchReport {
  std::vector<int> permutation;  // true component i matched to est component permutation[i]
  std::vector<int> signs;        // +-1 per matched pair
  Eigen::VectorXd congruences;
  double min_congruence = 0.0;
};

// Components are rows.  The assignment maximizes the total absolute
// congruence (Hungarian method), resolving the permutation/sign ambiguity
// before scoring.
MatchReport match_components(const Eigen::MatrixXd& s_true, const Eigen::MatrixXd& s_est);

// Amari-Cichocki-Yang error of B = A1^{-1} A2: zero iff A2 equals A1 up to
// column permutation and rescaling, at most d-1.
double acy_error(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2);

}  // namespace sggica
