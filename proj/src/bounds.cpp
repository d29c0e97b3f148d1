#include "rffsvm/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "rffsvm/errors.hpp"

namespace rffsvm {

namespace {
void require(bool cond, const char* msg) {
  if (!cond) throw DomainError(msg);
}
}  // namespace

RffProbability rff_probability(const BoundInputs& in) {
  require(in.D > 0 && in.d > 0 && in.sigma_p > 0 && in.diam > 0 &&
              in.epsilon > 0,
          "rff_probability: D, d, sigma_p, diam, epsilon must be positive");
  const double ratio = in.sigma_p * in.diam / in.epsilon;
  const double raw =
      1.0 - 256.0 * ratio * ratio *
                std::exp(-in.D * in.epsilon * in.epsilon / (4.0 * (in.d + 2.0)));
  return {raw, std::clamp(raw, 0.0, 1.0)};
}

long long required_D(const BoundInputs& in, double c) {
  require(in.d > 0 && in.epsilon > 0 && in.sigma_p > 0 && in.diam > 0,
          "required_D: d, epsilon, sigma_p, diam must be positive");
  const double floor_value = c * in.d / (in.epsilon * in.epsilon);
  const double log_arg = in.sigma_p * in.diam / in.epsilon;
  if (log_arg <= 1.0) return static_cast<long long>(std::ceil(floor_value));
  return static_cast<long long>(std::ceil(floor_value * std::log(log_arg)));
}

double lemma1_bound(const BoundInputs& in, double R_star) {
  require(in.T > 0 && in.eta > 0 && in.L > 0,
          "lemma1_bound: T, eta, L must be positive");
  return R_star + in.w_star_norm_sq / (2.0 * in.T * in.eta) +
         0.5 * in.eta * in.L * in.L;
}

double opt_error_bound(const BoundInputs& in, bool include_approx_term) {
  require(in.T > 0 && in.eta > 0 && in.L > 0 && in.B > 0,
          "opt_error_bound: T, eta, L, B must be positive");
  double bound = (1.0 + in.epsilon) * in.B * in.B / (2.0 * in.T * in.eta) +
                 0.5 * in.eta * in.L * in.L;
  if (include_approx_term) bound += in.epsilon * in.L * in.B;
  return bound;
}

double stability_bound(const BoundInputs& in) {
  require(in.T > 0 && in.L > 0 && in.eta >= 0 && in.n > 0,
          "stability_bound: T, L, n must be positive, eta nonnegative");
  return in.T * in.L * in.L * in.eta / in.n;
}

double lemma2_bound(const BoundInputs& in, double R_star) {
  require(in.n > 0 && in.L > 0 && in.B > 0,
          "lemma2_bound: n, L, B must be positive");
  return R_star + (2.0 + in.epsilon) * in.B * in.L / (2.0 * std::sqrt(in.n));
}

Theorem1Result theorem1_bound(const BoundInputs& in, double empirical_min) {
  require(in.n > 0 && in.T > 0 && in.L > 0 && in.B > 0,
          "theorem1_bound: n, T, L, B must be positive");
  const double excess = in.B * in.L * std::sqrt(1.0 + in.epsilon) /
                        std::sqrt(in.n) * std::sqrt((in.n + 2.0 * in.T) / in.T);
  const double optimal_eta = in.B * std::sqrt((1.0 + in.epsilon) * in.n) /
                             (in.L * std::sqrt(in.T * (in.n + 2.0 * in.T)));
  return {empirical_min + excess, optimal_eta};
}

double excess_risk_rhs(const BoundInputs& in, double eta) {
  require(eta > 0, "excess_risk_rhs: eta must be positive");
  return (1.0 + in.epsilon) * in.B * in.B / (2.0 * in.T * eta) +
         0.5 * eta * in.L * in.L + in.T * in.L * in.L * eta / in.n;
}

double bounding_box_diameter(const Eigen::Ref<const Eigen::MatrixXd>& X) {
  if (X.rows() == 0) throw DomainError("bounding_box_diameter: empty matrix");
  const Eigen::VectorXd extent =
      X.colwise().maxCoeff() - X.colwise().minCoeff();
  return extent.norm();
}

}  // namespace rffsvm
