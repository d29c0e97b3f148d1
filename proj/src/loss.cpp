#include "rffsvm/loss.hpp"

#include "rffsvm/errors.hpp"

namespace rffsvm {

double regularized_objective(const Eigen::Ref<const Eigen::VectorXd>& w,
                             const Eigen::Ref<const Eigen::MatrixXd>& Z,
                             const Eigen::Ref<const Eigen::VectorXd>& y,
                             double lambda) {
  if (Z.rows() == 0) throw DomainError("regularized_objective: empty batch");
  if (lambda < 0.0) throw DomainError("regularized_objective: lambda must be >= 0");
  const Eigen::VectorXd margins = y.array() * (Z * w).array();
  double total = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    total += huber_hinge(margins[i]);
  }
  return 0.5 * lambda * w.squaredNorm() + total / static_cast<double>(Z.rows());
}

}  // namespace rffsvm
