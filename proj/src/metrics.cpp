#include "sggica/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sggica/density.hpp"
#include "sggica/errors.hpp"

namespace sggica {

namespace {

// Hungarian algorithm (potentials + shortest augmenting paths), minimizing
// the total cost of a square assignment.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

double tucker_congruence(const Eigen::Ref<const Eigen::VectorXd>& a,
                         const Eigen::Ref<const Eigen::VectorXd>& b) {
  if (a.size() != b.size()) throw DomainError("tucker_congruence: length mismatch");
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw DomainError("tucker_congruence: undefined for a zero vector");
  }
  return a.dot(b) / std::sqrt(na * nb);
}

MatchReport match_components(const Eigen::MatrixXd& s_true, const Eigen::MatrixXd& s_est) {
  if (s_true.rows() != s_est.rows() || s_true.cols() != s_est.cols()) {
    throw DomainError("match_components: shape mismatch");
  }
  const Eigen::Index d = s_true.rows();
  if (d > 12) throw DomainError("match_components: supports at most 12 components");

  Eigen::MatrixXd congruence(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) {
      congruence(i, k) =
          tucker_congruence(s_true.row(i).transpose(), s_est.row(k).transpose());
    }
  }

  const std::vector<int> perm =
      min_cost_assignment((1.0 - congruence.array().abs()).matrix());

  MatchReport report;
  report.permutation = perm;
  report.signs.resize(static_cast<std::size_t>(d));
  report.congruences.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double cr = congruence(i, perm[static_cast<std::size_t>(i)]);
    report.signs[static_cast<std::size_t>(i)] = cr < 0.0 ? -1 : 1;
    report.congruences[i] = std::abs(cr);
  }
  report.min_congruence = report.congruences.minCoeff();
  return report;
}

double acy_error(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2) {
  if (a1.rows() != a1.cols() || a1.rows() != a2.rows() || a2.rows() != a2.cols()) {
    throw DomainError("acy_error: matrices must be square and equally sized");
  }
  log_abs_det(a1);  // throws SingularMatrixError when not invertible
  const Eigen::MatrixXd b = a1.partialPivLu().solve(a2).cwiseAbs();
  const Eigen::Index d = b.rows();
  double total = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    total += b.row(i).sum() / b.row(i).maxCoeff() - 1.0;
    total += b.col(i).sum() / b.col(i).maxCoeff() - 1.0;
  }
  return total / (2.0 * static_cast<double>(d));
}

}  // namespace sggica
